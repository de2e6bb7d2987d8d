#include <doctest.h>

#include <cmath>
#include <numbers>

#include "endlab/error.hpp"
#include "endlab/fixtures.hpp"
#include "endlab/polysurf.hpp"
#include "oracles.hpp"

using namespace endlab;
using mink::MinkVec;

namespace {

constexpr double kPi = std::numbers::pi;

PolySurface transformed(const PolySurface& s, const Eigen::Matrix4d& m) {
  std::vector<VertexGeom> g = s.vertices();
  for (auto& v : g) v.x = mink::apply(m, v.x);
  return PolySurface::build(s.base(), g);
}

std::vector<PolySurface> compact_fixtures() {
  std::vector<PolySurface> out{fixtures::compact_tetrahedron(), fixtures::compact_tetrahedron(2.5)};
  for (int k = 1; k <= 9; ++k) out.push_back(fixtures::random_compact(k));
  return out;
}

// Signed area orientation of consecutive link points; convex iff all turns agree.
bool convex_polygon(const std::vector<Eigen::Vector2d>& p) {
  int pos = 0, neg = 0;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d a = p[(i + 1) % n] - p[i], b = p[(i + 2) % n] - p[(i + 1) % n];
    const double c = a.x() * b.y() - a.y() * b.x();
    (c > 0 ? pos : neg)++;
  }
  return pos == 0 || neg == 0;
}

}  // namespace

TEST_SUITE("polysurf") {
  TEST_CASE("ideal octahedron") {
    const PolySurface s = fixtures::ideal_octahedron();
    CHECK(s.kind() == VertexKind::Ideal);
    CHECK(s.num_edges() == 12);
    for (double a : s.dihedral_angles()) CHECK(a == doctest::Approx(kPi / 2).epsilon(1e-12));
    // Unit-scale horospheres at (e_i, 1): -<u,w>/2 = 1/2 for neighbours.
    for (double l : s.edge_lengths()) CHECK(l == doctest::Approx(std::log(0.5)).epsilon(1e-12));
  }

  TEST_CASE("ideal octahedron link is a square") {
    const PolySurface s = fixtures::ideal_octahedron();
    for (int v = 0; v < s.num_vertices(); ++v) {
      std::vector<Eigen::Vector2d> p;
      for (int d : s.tri().star(v)) p.push_back(s.link_chart(d));
      REQUIRE(p.size() == 4);
      const double side = (p[1] - p[0]).norm();
      for (int i = 0; i < 4; ++i) CHECK((p[(i + 1) % 4] - p[i]).norm() == doctest::Approx(side).epsilon(1e-12));
      CHECK((p[2] - p[0]).norm() == doctest::Approx(side * std::sqrt(2.0)).epsilon(1e-12));
      CHECK((p[3] - p[1]).norm() == doctest::Approx(side * std::sqrt(2.0)).epsilon(1e-12));
    }
  }

  TEST_CASE("ideal tetrahedron angles") {
    const PolySurface s = fixtures::ideal_tetrahedron();
    for (double a : s.dihedral_angles()) CHECK(kPi - a == doctest::Approx(kPi / 3).epsilon(1e-12));
  }

  TEST_CASE("horosphere rescaling shifts incident edges") {
    const PolySurface s = fixtures::ideal_octahedron();
    std::vector<VertexGeom> g = s.vertices();
    const double t = 0.37;
    g[2].x = std::exp(t) * g[2].x;
    const PolySurface r = PolySurface::build(s.base(), g);
    int shifted = 0;
    for (int e = 0; e < s.num_edges(); ++e) {
      const auto [a, b] = s.tri().edge(e);
      const double want = (a == 2 || b == 2) ? t : 0.0;
      CHECK(r.edge_lengths()[e] - s.edge_lengths()[e] == doctest::Approx(want).epsilon(1e-12));
      shifted += a == 2 || b == 2;
    }
    CHECK(shifted == 4);
  }

  TEST_CASE("regular compact tetrahedron against trigonometry") {
    for (double r : {0.3, 1.0, 2.5}) {
      const PolySurface s = fixtures::compact_tetrahedron(r);
      const double l = s.edge_lengths()[0];
      for (int e = 0; e < 6; ++e) {
        const auto [a, b] = s.tri().edge(e);
        const double d = oracle::uhs_distance(oracle::to_uhs(s.vertex(a).x), oracle::to_uhs(s.vertex(b).x));
        CHECK(s.edge_lengths()[e] == doctest::Approx(d).epsilon(1e-10));
        CHECK(s.edge_lengths()[e] == doctest::Approx(l).epsilon(1e-12));
      }
      // Face angle of the equilateral face, then the vertex link is an
      // equilateral spherical triangle with that side.
      const double ca = std::cosh(l) / (std::cosh(l) + 1);
      const double interior = std::acos(ca / (1 + ca));
      for (double a : s.dihedral_angles()) CHECK(a == doctest::Approx(kPi - interior).epsilon(1e-10));
    }
  }

  TEST_CASE("hyperideal lengths") {
    const PolySurface s = fixtures::hyperideal_tetrahedron();
    CHECK(s.kind() == VertexKind::Hyperideal);
    for (int e = 0; e < s.num_edges(); ++e) {
      const auto [a, b] = s.tri().edge(e);
      const double c = -mink::dot(s.vertex(a).x, s.vertex(b).x);
      REQUIRE(c > 1);
      CHECK(s.edge_lengths()[e] == doctest::Approx(std::acosh(c)).epsilon(1e-12));
    }
  }

  TEST_CASE("compact link tangents") {
    for (const PolySurface& s : compact_fixtures()) {
      const CellSurface& t = s.tri();
      for (int d = 0; d < t.num_darts(); ++d) {
        const MinkVec p = s.vertex(t.tail(d)).x, q = s.vertex(t.head(d)).x;
        const MinkVec u = (1.0 / std::sinh(s.edge_lengths()[CellSurface::edge_of(d)])) * (q + mink::dot(p, q) * p);
        CHECK(mink::euclid_norm2(s.link_tangent(d) - u) < 1e-20);
      }
      for (int v = 0; v < t.num_vertices(); ++v) {
        const auto& fr = s.frame(v);
        std::vector<Eigen::Vector2d> p;
        // Gnomonic projection of the link onto the plane orthogonal to the mean direction.
        Eigen::Vector3d mean = Eigen::Vector3d::Zero();
        std::vector<Eigen::Vector3d> dirs;
        for (int d : t.star(v)) {
          const MinkVec u = s.link_tangent(d);
          dirs.push_back({mink::dot(u, fr.e[0]), mink::dot(u, fr.e[1]), mink::dot(u, fr.e[2])});
          mean += dirs.back();
        }
        mean.normalize();
        const Eigen::Vector3d a = mean.unitOrthogonal(), b = mean.cross(a);
        for (const auto& x : dirs) {
          REQUIRE(x.dot(mean) > 0);
          p.push_back({x.dot(a) / x.dot(mean), x.dot(b) / x.dot(mean)});
        }
        // Non-strict: fan diagonals put collinear points on the link.
        int pos = 0, neg = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
          const Eigen::Vector2d e1 = p[(i + 1) % p.size()] - p[i], e2 = p[(i + 2) % p.size()] - p[(i + 1) % p.size()];
          const double c = e1.x() * e2.y() - e1.y() * e2.x();
          if (c > 1e-9) ++pos;
          if (c < -1e-9) ++neg;
        }
        CHECK((pos == 0 || neg == 0));
      }
    }
  }

  TEST_CASE("ideal link polygons are convex") {
    for (int k = 1; k <= 6; ++k) {
      const PolySurface s = fixtures::random_ideal(k);
      for (int v = 0; v < s.num_vertices(); ++v) {
        std::vector<Eigen::Vector2d> p;
        for (int d : s.tri().star(v)) p.push_back(s.link_chart(d));
        CHECK(convex_polygon(p));
      }
    }
  }

  TEST_CASE("lengths and angles are Lorentz invariant") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const Eigen::Matrix4d m = fixtures::random_isometry(100 + seed);
      for (const PolySurface& s : {fixtures::random_compact(seed), fixtures::random_ideal(seed),
                                   fixtures::hyperideal_tetrahedron()}) {
        const PolySurface r = transformed(s, m);
        for (int e = 0; e < s.num_edges(); ++e) {
          CHECK(std::abs(r.edge_lengths()[e] - s.edge_lengths()[e]) <= 1e-10);
          CHECK(std::abs(r.dihedral_angles()[e] - s.dihedral_angles()[e]) <= 1e-10);
        }
      }
    }
  }

  TEST_CASE("dual surface") {
    for (const PolySurface& s : compact_fixtures()) {
      const PolySurface d = dual_surface(s);
      CHECK(d.kind() == VertexKind::DeSitter);
      for (int e = 0; e < s.base().num_edges(); ++e)
        CHECK(std::abs(d.edge_lengths()[e] - s.dihedral_angles()[e]) <= 1e-10);
      const PolySurface dd = dual_surface(d);
      CHECK(dd.kind() == VertexKind::Compact);
      for (int f = 0; f < s.base().num_faces(); ++f)
        CHECK(mink::euclid_norm2(dd.face_normal(f) - s.face_normal(f)) <= 1e-18);
      for (int v = 0; v < s.num_vertices(); ++v)
        CHECK(mink::euclid_norm2(dd.vertex(v).x - s.vertex(v).x) <= 1e-18);
    }
  }

  TEST_CASE("Gauss circles meet at the dihedral angles") {
    for (const PolySurface& s : {fixtures::ideal_octahedron(), fixtures::ideal_tetrahedron(), fixtures::random_ideal(1),
                                 fixtures::random_ideal(2)}) {
      const auto circles = gauss_circles(s);
      CHECK(circles.size() == static_cast<std::size_t>(s.tri().num_faces()));
      for (int e = 0; e < s.num_edges(); ++e) {
        if (s.is_diagonal(e)) continue;
        const auto& b = s.tri();
        const double a = intersection_angle(circles[b.face(2 * e)], circles[b.face(2 * e + 1)]);
        CHECK(a == doctest::Approx(s.dihedral_angles()[e]).epsilon(1e-9));
      }
    }
    // Octahedron: exterior angles of the circles around each ideal vertex sum to 2pi.
    const PolySurface o = fixtures::ideal_octahedron();
    for (int v = 0; v < 6; ++v) {
      double sum = 0;
      for (int d : o.tri().star(v)) sum += o.dihedral_angles()[CellSurface::edge_of(d)];
      CHECK(sum == doctest::Approx(2 * kPi).epsilon(1e-12));
    }
  }

  TEST_CASE("plane through the chart's point at infinity") {
    const GaussCircle g = gauss_circle({0, 1, 0, 0});
    REQUIRE(g.is_line);
    // Real axis: the normal is purely imaginary.
    CHECK(std::abs(g.normal.real()) < 1e-15);
    CHECK(std::abs(g.offset) < 1e-15);
  }

  TEST_CASE("build errors") {
    const PolySurface t = fixtures::compact_tetrahedron();
    for (int seed = 1; seed <= 3; ++seed) {
      // Push one vertex through the centre.
      const PolySurface c = fixtures::random_compact(seed);
      if (!c.base().is_triangulated()) continue;
      std::vector<VertexGeom> g = c.vertices();
      MinkVec m;
      for (const auto& v : g) m = m + v.x;
      m = mink::normalize(m);
      g[0].x = mink::normalize(-0.3 * g[0].x + 1.3 * m);
      CHECK_THROWS_WITH_AS(PolySurface::build(c.base(), g), doctest::Contains("locally concave edge"), Error);
    }

    std::vector<VertexGeom> mixed = t.vertices();
    mixed[1] = fixtures::ideal_tetrahedron().vertex(1);
    CHECK_THROWS_WITH_AS(PolySurface::build(t.base(), mixed), "mixed vertex types", Error);

    std::vector<VertexGeom> wrong = t.vertices();
    for (auto& v : wrong) v.kind = VertexKind::Hyperideal;
    CHECK_THROWS_WITH_AS(PolySurface::build(t.base(), wrong), "hyperideal vertex must be spacelike", Error);

    // A hexahedron with one corner moved off its three quadrilaterals.
    int hexahedra = 0;
    for (int seed = 1; seed <= 3; ++seed) {
      const PolySurface c = fixtures::random_compact(seed);
      if (c.base().num_faces() != 6) continue;
      ++hexahedra;
      std::vector<VertexGeom> h = c.vertices();
      MinkVec& y = h[0].x;
      y.x1 += 0.01;
      y.x2 += 0.02;
      y.x4 = std::sqrt(1 + y.x1 * y.x1 + y.x2 * y.x2 + y.x3 * y.x3);
      CHECK_THROWS_WITH_AS(PolySurface::build(c.base(), h), doctest::Contains("non-planar face"), Error);
    }
    CHECK(hexahedra == 1);

    CHECK_THROWS_WITH_AS(dual_surface(fixtures::ideal_octahedron()), "dual surface needs compact or hyperideal input",
                         Error);
  }

  TEST_CASE("decorations from deformations") {
    for (const PolySurface& s : compact_fixtures()) {
      const int n = s.num_vertices();
      std::vector<MinkVec> zero(n);
      CHECK(decoration_from_deformation(s, zero, true).is_trivial());

      // Killing fields preserve every length; their decorations are tight.
      const auto basis = mink::so31_basis();
      for (int k = 0; k < 6; ++k) {
        const Eigen::Matrix4d K = basis[k] + 0.3 * basis[(k + 2) % 6];
        std::vector<MinkVec> Z;
        for (const auto& v : s.vertices()) Z.push_back(mink::apply(K, v.x));
        Decoration d;
        CHECK_NOTHROW(d = decoration_from_deformation(s, Z, true));
        CHECK_FALSE(d.is_trivial());
        CHECK(is_tight(s.tri(), d).tight());
      }

      // Moving every vertex away from the origin stretches all edges.
      std::vector<MinkVec> Z;
      const MinkVec o{0, 0, 0, 1};
      for (const auto& v : s.vertices()) Z.push_back(-1.0 * (o + mink::dot(o, v.x) * v.x));
      CHECK_THROWS_WITH_AS(decoration_from_deformation(s, Z, true), "not length-preserving", Error);
    }
  }
}
