#include "endlab/fixtures.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Geometry>

#include "endlab/error.hpp"

namespace endlab::fixtures {

namespace {

using Eigen::Vector3d;
using mink::MinkVec;

// Faces of a simplicial convex polytope, outward oriented. Brute force over
// triples; only meant for the handful of points used here.
std::vector<std::vector<int>> hull_triangles(const std::vector<Vector3d>& p) {
  const int n = static_cast<int>(p.size());
  std::vector<std::vector<int>> faces;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const Vector3d nrm = (p[j] - p[i]).cross(p[k] - p[i]);
        int above = 0, below = 0;
        for (int m = 0; m < n; ++m) {
          if (m == i || m == j || m == k) continue;
          const double s = nrm.dot(p[m] - p[i]);
          if (s > 1e-9) ++above;
          else if (s < -1e-9) ++below;
          else above = below = 1;  // coplanar: not a triangular facet
        }
        if (above && below) continue;
        faces.push_back(below ? std::vector<int>{i, j, k} : std::vector<int>{i, k, j});
      }
  return faces;
}

std::vector<Vector3d> tetra_dirs() {
  return {Vector3d(1, 1, 1).normalized(), Vector3d(1, -1, -1).normalized(), Vector3d(-1, 1, -1).normalized(),
          Vector3d(-1, -1, 1).normalized()};
}

std::vector<Vector3d> octa_dirs() {
  return {Vector3d(1, 0, 0), Vector3d(-1, 0, 0), Vector3d(0, 1, 0),
          Vector3d(0, -1, 0), Vector3d(0, 0, 1), Vector3d(0, 0, -1)};
}

std::vector<Vector3d> icosa_dirs() {
  const double phi = std::numbers::phi;
  std::vector<Vector3d> v;
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      v.emplace_back(0, s1, s2 * phi);
      v.emplace_back(s1, s2 * phi, 0);
      v.emplace_back(s2 * phi, 0, s1);
    }
  for (auto& x : v) x.normalize();
  return v;
}

// Cube vertex i has coordinates given by its bits (x = bit 2, y = bit 1, z = bit 0).
std::vector<std::vector<int>> cube_faces() {
  return {{0, 1, 3, 2}, {4, 6, 7, 5}, {0, 4, 5, 1}, {2, 3, 7, 6}, {0, 2, 6, 4}, {1, 5, 7, 3}};
}

MinkVec klein_to_hyperboloid(const Vector3d& y) {
  const double s = 1.0 / std::sqrt(1.0 - y.squaredNorm());
  return {s * y[0], s * y[1], s * y[2], s};
}

PolySurface with_geometry(const CellSurface& base, const std::vector<MinkVec>& x, VertexKind kind) {
  std::vector<VertexGeom> g;
  for (const auto& v : x) g.push_back({kind, v});
  return PolySurface::build(base, std::move(g));
}

Vector3d jitter(const Vector3d& d, std::mt19937_64& rng, double sigma) {
  std::normal_distribution<double> n(0.0, sigma);
  return (d + Vector3d(n(rng), n(rng), n(rng))).normalized();
}

// Retries until the perturbed geometry is convex; the base shape is strictly
// convex and the perturbations small, so this terminates quickly.
template <typename Gen>
PolySurface first_convex(std::mt19937_64& rng, Gen&& gen) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    try {
      return gen(rng);
    } catch (const Error&) {
    }
  }
  throw Error("could not generate a convex fixture");
}

}  // namespace

CellSurface tetrahedron() { return CellSurface::from_polygons(4, hull_triangles(tetra_dirs())); }
CellSurface octahedron() { return CellSurface::from_polygons(6, hull_triangles(octa_dirs())); }
CellSurface icosahedron() { return CellSurface::from_polygons(12, hull_triangles(icosa_dirs())); }
CellSurface cube() { return CellSurface::from_polygons(8, cube_faces()); }

CellSurface genus2() {
  // Side k of the octagon runs from corner k to corner k+1 and carries
  // generator gen[k], forwards or backwards.
  constexpr std::array<int, 8> gen{0, 1, 0, 1, 2, 3, 2, 3};
  constexpr std::array<bool, 8> fwd{true, true, false, false, true, true, false, false};
  constexpr int cone = 0, corner = 1;
  auto cut = [](int g, int i) { return 2 + 2 * g + i; };  // i-th interior cut point along g

  std::vector<CellSurface::EdgeEnds> edges;
  // Boundary edges: segment s of generator g runs from point s to point s+1
  // along g, with points 0 and 3 at the corner.
  auto along = [&](int g, int i) { return i == 0 || i == 3 ? corner : cut(g, i - 1); };
  for (int g = 0; g < 4; ++g)
    for (int s = 0; s < 3; ++s) edges.push_back({along(g, s), along(g, s + 1)});

  // Octagon boundary positions in counter-clockwise order, with the boundary
  // dart leaving each one.
  std::vector<int> pos_vertex, pos_dart;
  for (int k = 0; k < 8; ++k)
    for (int i = 0; i < 3; ++i) {
      const int g = gen[k];
      const int s = fwd[k] ? i : 2 - i;
      pos_vertex.push_back(fwd[k] ? along(g, s) : along(g, s + 1));
      pos_dart.push_back(CellSurface::dart(3 * g + s, fwd[k]));
    }
  const int npos = static_cast<int>(pos_vertex.size());
  const int first_cone = static_cast<int>(edges.size());
  for (int p = 0; p < npos; ++p) edges.push_back({cone, pos_vertex[p]});

  std::vector<std::vector<int>> faces;
  for (int p = 0; p < npos; ++p) {
    const int q = (p + 1) % npos;
    faces.push_back({CellSurface::dart(first_cone + p, true), pos_dart[p], CellSurface::dart(first_cone + q, false)});
  }
  return CellSurface::build(10, std::move(edges), std::move(faces));
}

CellSurface genus2_stellar() {
  const CellSurface s = genus2();
  std::vector<CellSurface::EdgeEnds> edges;
  for (int e = 0; e < s.num_edges(); ++e) edges.push_back(s.edge(e));
  std::vector<std::vector<int>> faces;
  for (int f = 1; f < s.num_faces(); ++f) faces.push_back(s.face_darts(f));
  const int c = s.num_vertices();
  const auto& f0 = s.face_darts(0);
  const int first = s.num_edges();
  for (int i = 0; i < 3; ++i) edges.push_back({c, s.tail(f0[i])});
  for (int i = 0; i < 3; ++i)
    faces.push_back({CellSurface::dart(first + i, true), f0[i], CellSurface::dart(first + (i + 1) % 3, false)});
  return CellSurface::build(c + 1, std::move(edges), std::move(faces));
}

std::vector<int> genus2_handle_loop() {
  // Cone edges start at id 12; positions 0 and 3 are the first two corners.
  return {CellSurface::dart(12, true), CellSurface::dart(15, false)};
}

PolySurface compact_tetrahedron(double circumradius) {
  std::vector<MinkVec> x;
  for (const auto& d : tetra_dirs()) x.push_back(mink::hyperboloid_point(d, circumradius));
  return with_geometry(tetrahedron(), x, VertexKind::Compact);
}

PolySurface ideal_octahedron() {
  std::vector<MinkVec> x;
  for (const auto& d : octa_dirs()) x.push_back({d[0], d[1], d[2], 1.0});
  return with_geometry(octahedron(), x, VertexKind::Ideal);
}

PolySurface ideal_tetrahedron() {
  using C = std::complex<double>;
  const std::array<mink::CP1, 4> pts{mink::CP1::finite(C(0, 0)), mink::CP1::finite(C(1, 0)), mink::CP1::infinity(),
                                     mink::CP1::finite(std::polar(1.0, std::numbers::pi / 3))};
  std::vector<MinkVec> x;
  std::vector<Vector3d> dirs;
  for (const auto& p : pts) {
    const MinkVec u = mink::null_lift(p);
    x.push_back((1.0 / u.x4) * u);
    dirs.emplace_back(u.x1 / u.x4, u.x2 / u.x4, u.x3 / u.x4);
  }
  return with_geometry(CellSurface::from_polygons(4, hull_triangles(dirs)), x, VertexKind::Ideal);
}

PolySurface hyperideal_tetrahedron() {
  constexpr double rho = 1.3;  // vertices outside the ball, edge midpoints at rho/sqrt(3) inside
  std::vector<MinkVec> x;
  const double s = 1.0 / std::sqrt(rho * rho - 1.0);
  for (const auto& d : tetra_dirs()) x.push_back({s * rho * d[0], s * rho * d[1], s * rho * d[2], s});
  return with_geometry(tetrahedron(), x, VertexKind::Hyperideal);
}

Eigen::Matrix4d random_isometry(std::uint64_t seed, double max_rapidity) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> rap(-max_rapidity, max_rapidity);
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  for (int axis = 0; axis < 3; ++axis) m = mink::rotation(axis, angle(rng)) * m;
  for (int axis = 0; axis < 3; ++axis) m = mink::boost(axis, rap(rng)) * m;
  return m;
}

PolySurface random_compact(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Eigen::Matrix4d iso = random_isometry(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int shape = static_cast<int>(seed % 3);
  return first_convex(rng, [&](std::mt19937_64& r) {
    std::vector<MinkVec> x;
    CellSurface base = shape == 0 ? icosahedron() : shape == 1 ? octahedron() : cube();
    if (shape < 2) {
      for (const auto& d : shape == 0 ? icosa_dirs() : octa_dirs())
        x.push_back(mink::hyperboloid_point(jitter(d, r, 0.03), 1.0 + 0.15 * unit(r)));
    } else {
      // Hexahedron cut out by six perturbed planes n.y = h in the Klein model,
      // so its quadrilaterals are exactly planar.
      std::array<Vector3d, 6> n;
      std::array<double, 6> h;
      for (int axis = 0; axis < 3; ++axis)
        for (int side = 0; side < 2; ++side) {
          Vector3d d = Vector3d::Zero();
          d[axis] = side ? 1.0 : -1.0;
          n[2 * axis + side] = jitter(d, r, 0.05);
          h[2 * axis + side] = 0.5 * (1.0 + 0.1 * unit(r));
        }
      for (int i = 0; i < 8; ++i) {
        Eigen::Matrix3d a;
        Vector3d b;
        for (int axis = 0; axis < 3; ++axis) {
          const int plane = 2 * axis + ((i >> (2 - axis)) & 1);
          a.row(axis) = n[plane].transpose();
          b[axis] = h[plane];
        }
        x.push_back(klein_to_hyperboloid(a.partialPivLu().solve(b)));
      }
    }
    for (auto& v : x) v = mink::normalize(mink::apply(iso, v));
    return with_geometry(base, x, VertexKind::Compact);
  });
}

PolySurface random_ideal(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Eigen::Matrix4d iso = random_isometry(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const bool icosa = seed % 2 == 1;
  return first_convex(rng, [&](std::mt19937_64& r) {
    std::vector<MinkVec> x;
    for (const auto& d : icosa ? icosa_dirs() : octa_dirs()) {
      const Vector3d e = jitter(d, r, 0.03);
      const double scale = std::exp(0.5 * unit(r));
      x.push_back(mink::apply(iso, scale * MinkVec{e[0], e[1], e[2], 1.0}));
    }
    return with_geometry(icosa ? icosahedron() : octahedron(), x, VertexKind::Ideal);
  });
}

}  // namespace endlab::fixtures
