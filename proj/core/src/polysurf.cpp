#include "endlab/polysurf.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "endlab/error.hpp"

namespace endlab {

using mink::Causal;
using mink::MinkVec;

namespace {

MinkVec unit_euclid(const MinkVec& x) { return (1.0 / std::sqrt(mink::euclid_norm2(x))) * x; }

// Scale to |<v,v>| = 1 without changing direction.
MinkVec unit_keep_sign(const MinkVec& v) { return (1.0 / std::sqrt(std::abs(mink::norm2(v)))) * v; }

struct Fan {
  std::vector<CellSurface::EdgeEnds> edges;
  std::vector<std::vector<int>> faces;
  std::vector<int> parent;
};

Fan fan_triangulate(const CellSurface& b) {
  Fan t;
  for (int e = 0; e < b.num_edges(); ++e) t.edges.push_back(b.edge(e));
  for (int f = 0; f < b.num_faces(); ++f) {
    const auto& c = b.face_darts(f);
    const int k = static_cast<int>(c.size());
    if (k < 3) throw Error("face " + std::to_string(f) + " has fewer than 3 sides");
    if (k == 3) {
      t.faces.push_back(c);
      t.parent.push_back(f);
      continue;
    }
    int j = 0;
    for (int i = 1; i < k; ++i)
      if (b.tail(c[i]) < b.tail(c[j])) j = i;
    auto at = [&](int i) { return c[(j + i) % k]; };
    const int a = b.tail(at(0));
    int back = at(0);  // dart from a into the current fan triangle
    for (int i = 1; i + 1 < k; ++i) {
      if (i + 2 == k) {
        t.faces.push_back({back, at(i), at(i + 1)});
      } else {
        const int e = static_cast<int>(t.edges.size());
        t.edges.push_back({a, b.tail(at(i + 1))});
        t.faces.push_back({back, at(i), CellSurface::dart(e, false)});
        back = CellSurface::dart(e, true);
      }
      t.parent.push_back(f);
    }
  }
  return t;
}

}  // namespace

std::string_view to_string(VertexKind k) {
  switch (k) {
    case VertexKind::Compact: return "compact";
    case VertexKind::Ideal: return "ideal";
    case VertexKind::Hyperideal: return "hyper";
    case VertexKind::DeSitter: return "desitter";
  }
  return "?";
}

MinkVec affine(const MinkVec& x) {
  if (std::abs(x.x4) < 1e-300) throw Error("vertex at infinity of the affine chart");
  return (1.0 / x.x4) * x;
}

PolySurface PolySurface::build(const CellSurface& base, std::vector<VertexGeom> geom, const BuildOptions& opt) {
  if (static_cast<int>(geom.size()) != base.num_vertices()) throw Error("vertex data count does not match vertices");
  Fan fan = fan_triangulate(base);
  PolySurface s(base.without_weights(),
                CellSurface::build(base.num_vertices(), std::move(fan.edges), std::move(fan.faces)));
  s.kind_ = geom.front().kind;
  for (auto& g : geom) {
    if (g.kind != s.kind_) throw Error("mixed vertex types");
    const Causal c = mink::classify(g.x);
    switch (g.kind) {
      case VertexKind::Compact:
        if (c != Causal::Timelike) throw Error("compact vertex must be timelike");
        g.x = mink::normalize(g.x);
        break;
      case VertexKind::Ideal:
        g.x = mink::Horosphere::make(g.x).u;
        break;
      case VertexKind::Hyperideal:
        if (c != Causal::Spacelike) throw Error("hyperideal vertex must be spacelike");
        if (g.x.x4 <= 0) throw Error("hyperideal vertex must have x4 > 0");
        g.x = mink::normalize(g.x);
        break;
      case VertexKind::DeSitter:
        if (c != Causal::Spacelike) throw Error("de Sitter vertex must be spacelike");
        g.x = mink::normalize(g.x);
        break;
    }
  }
  s.geom_ = std::move(geom);
  const bool desitter = s.kind_ == VertexKind::DeSitter;
  const CellSurface& b = s.base_;
  const CellSurface& t = s.tri_;

  MinkVec centroid;
  if (!desitter) {
    for (const auto& g : s.geom_) centroid = centroid + affine(g.x);
    centroid = (1.0 / s.geom_.size()) * centroid;
  }

  for (int f = 0; f < b.num_faces(); ++f) {
    const auto& c = b.face_darts(f);
    Eigen::MatrixXd m(c.size(), 4);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const MinkVec x = unit_euclid(s.geom_[b.tail(c[i])].x);
      m.row(i) << x.x1, x.x2, x.x3, -x.x4;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (c.size() > 3 && sv[3] > opt.tol_plane) throw Error("non-planar face " + std::to_string(f));
    if (svd.rank() < 3 || sv[2] < 1e-10 * sv[0]) throw Error("degenerate face " + std::to_string(f));
    MinkVec n = MinkVec::from(svd.matrixV().col(3));
    const Causal nc = mink::classify(n);
    if (desitter) {
      if (nc != Causal::Timelike) throw Error("dual face plane must have a timelike normal");
      n = mink::normalize(n);
    } else {
      if (nc != Causal::Spacelike) throw Error("face plane " + std::to_string(f) + " misses H^3");
      n = mink::normalize(n);
    }
    s.face_normals_.push_back(n);
  }
  if (!desitter) {
    // Orient every normal by the face's cyclic order, then fix the one global
    // sign by a vote of how clearly each face separates from the centroid. A
    // vertex pushed inward then shows up as concave instead of flipping normals.
    std::vector<double> handed(b.num_faces());
    double vote = 0;
    for (int f = 0; f < b.num_faces(); ++f) {
      const auto& c = b.face_darts(f);
      Eigen::Matrix4d m;
      for (int i = 0; i < 3; ++i) m.row(i) = unit_euclid(s.geom_[b.tail(c[i])].x).eigen().transpose();
      m.row(3) = s.face_normals_[f].eigen().transpose();
      handed[f] = m.determinant() >= 0 ? 1.0 : -1.0;
      vote -= handed[f] * mink::dot(centroid, s.face_normals_[f]);
    }
    const double sign = vote >= 0 ? 1.0 : -1.0;
    for (int f = 0; f < b.num_faces(); ++f)
      if (handed[f] != sign) s.face_normals_[f] = -s.face_normals_[f];
  }
  for (int p : fan.parent) s.tri_normals_.push_back(s.face_normals_[p]);

  s.convexity_checked_ = opt.check_convexity && !desitter;
  s.min_margin_ = std::numeric_limits<double>::infinity();
  if (!desitter) {
    for (int e = 0; e < b.num_edges(); ++e) {
      const int f = b.face(2 * e), g = b.face(2 * e + 1);
      if (f == g) throw Error("edge " + std::to_string(e) + " has the same face on both sides");
      double worst = -std::numeric_limits<double>::infinity();
      for (const auto& [p, q] : {std::pair{f, g}, std::pair{g, f}})
        for (int x : b.face_darts(q)) {
          const int v = b.tail(x);
          if (v == b.edge(e)[0] || v == b.edge(e)[1]) continue;
          worst = std::max(worst, mink::dot(unit_euclid(affine(s.geom_[v].x)), s.face_normals_[p]));
        }
      s.min_margin_ = std::min(s.min_margin_, -worst);
      if (worst > opt.tol_plane) {
        if (opt.check_convexity) throw Error("locally concave edge " + std::to_string(e));
        s.diagnostics_.push_back("concave edge " + std::to_string(e) + " (convexity check bypassed)");
      } else if (worst > -opt.tol_plane) {
        s.diagnostics_.push_back("flat structural edge " + std::to_string(e));
      }
    }
  }

  const int ne = t.num_edges();
  s.lengths_.resize(ne);
  s.angles_.resize(ne);
  for (int e = 0; e < ne; ++e) {
    const MinkVec& p = s.geom_[t.edge(e)[0]].x;
    const MinkVec& q = s.geom_[t.edge(e)[1]].x;
    switch (s.kind_) {
      case VertexKind::Compact:
        s.lengths_[e] = mink::hyp_distance(p, q);
        break;
      case VertexKind::Ideal:
        s.lengths_[e] = mink::decorated_length({p}, {q});
        break;
      case VertexKind::Hyperideal: {
        const double c = -mink::dot(p, q);
        if (c <= 1.0) {
          if (!s.is_diagonal(e)) throw Error("hyperideal edge " + std::to_string(e) + " misses H^3");
          s.diagnostics_.push_back("diagonal " + std::to_string(e) + " misses H^3");
        }
        s.lengths_[e] = std::acosh(std::max(c, 1.0));
        break;
      }
      case VertexKind::DeSitter:
        s.lengths_[e] = std::acos(std::clamp(mink::dot(p, q), -1.0, 1.0));
        break;
    }
    const MinkVec& nf = s.tri_normals_[t.face(2 * e)];
    const MinkVec& ng = s.tri_normals_[t.face(2 * e + 1)];
    if (s.is_diagonal(e))
      s.angles_[e] = 0.0;
    else if (desitter)
      s.angles_[e] = std::acosh(std::max(-mink::dot(nf, ng), 1.0));
    else
      s.angles_[e] = std::acos(std::clamp(mink::dot(nf, ng), -1.0, 1.0));
  }

  const int nd = t.num_darts();
  s.link_tangent_.resize(nd);
  s.link_chart_.assign(nd, Eigen::Vector2d::Zero());
  if (s.kind_ == VertexKind::Ideal) {
    for (const auto& g : s.geom_) s.charts_.push_back(mink::horo_chart({g.x}));
  } else {
    for (const auto& g : s.geom_) s.frames_.push_back(mink::tangent_frame(g.x));
  }
  for (int d = 0; d < nd; ++d) {
    const int v = t.tail(d);
    const MinkVec& p = s.geom_[v].x;
    const MinkVec& q = s.geom_[t.head(d)].x;
    if (s.kind_ == VertexKind::Ideal) {
      s.link_chart_[d] = s.charts_[v].coords(mink::horosphere_foot({p}, q));
    } else {
      // Component of q orthogonal to p, pointing from p toward q.
      const MinkVec w = q - (mink::dot(p, q) / mink::norm2(p)) * p;
      s.link_tangent_[d] = unit_keep_sign(w);
    }
  }
  return s;
}

PolySurface dual_surface(const PolySurface& s) {
  if (s.kind() == VertexKind::Ideal) throw Error("dual surface needs compact or hyperideal input");
  if (s.kind() != VertexKind::DeSitter && !s.convexity_checked_) throw Error("dual surface needs a convex surface");
  std::vector<VertexGeom> geom;
  const VertexKind k = s.kind() == VertexKind::DeSitter ? VertexKind::Compact : VertexKind::DeSitter;
  for (int f = 0; f < s.base().num_faces(); ++f) geom.push_back({k, s.face_normal(f)});
  return PolySurface::build(s.base().dual(), std::move(geom));
}

Decoration decoration_from_values(const CellSurface& s, const std::vector<double>& a, double tol, bool certified) {
  if (static_cast<int>(a.size()) != s.num_darts()) throw Error("need one value per dart");
  Decoration d = Decoration::trivial(s);
  for (int e = 0; e < s.num_edges(); ++e) {
    const double a0 = a[2 * e], a1 = a[2 * e + 1];
    if (certified && std::abs(a0 + a1) > tol) throw Error("not length-preserving");
    const double v = certified ? 0.5 * (a0 - a1) : (std::abs(a0) >= std::abs(a1) ? a0 : -a1);
    if (v > tol) d.state[e] = EdgeState::Forward;
    if (v < -tol) d.state[e] = EdgeState::Backward;
  }
  return d;
}

Decoration decoration_from_deformation(const PolySurface& s, const std::vector<MinkVec>& Z, bool certified,
                                       double tol_rel) {
  if (s.kind() == VertexKind::Ideal) throw Error("ideal surfaces take affine-function data");
  if (static_cast<int>(Z.size()) != s.num_vertices()) throw Error("need one vector per vertex");
  double norm = 0;
  for (const auto& z : Z) norm += mink::euclid_norm2(z);
  norm = std::sqrt(norm);
  const CellSurface& t = s.tri();
  std::vector<double> a(t.num_darts());
  for (int d = 0; d < t.num_darts(); ++d) a[d] = mink::dot(s.link_tangent(d), Z[t.tail(d)]);
  return decoration_from_values(t, a, tol_rel * norm, certified);
}

Decoration decoration_from_affine(const PolySurface& s, const std::vector<double>& c,
                                  const std::vector<Eigen::Vector2d>& w, bool certified, double tol_rel) {
  if (s.kind() != VertexKind::Ideal) throw Error("affine-function data needs an ideal surface");
  if (static_cast<int>(c.size()) != s.num_vertices() || static_cast<int>(w.size()) != s.num_vertices())
    throw Error("need one function per vertex");
  double norm = 0;
  for (int v = 0; v < s.num_vertices(); ++v) norm += c[v] * c[v] + w[v].squaredNorm();
  norm = std::sqrt(norm);
  const CellSurface& t = s.tri();
  std::vector<double> a(t.num_darts());
  for (int d = 0; d < t.num_darts(); ++d) {
    const int v = t.tail(d);
    a[d] = c[v] + w[v].dot(s.link_chart(d));
  }
  return decoration_from_values(t, a, tol_rel * norm, certified);
}

GaussCircle gauss_circle(const MinkVec& n) {
  const double a = n.x3 + n.x4;
  const std::complex<double> b(n.x1, n.x2);
  GaussCircle g;
  if (std::abs(a) <= 1e-12 * std::sqrt(mink::euclid_norm2(n))) {
    g.is_line = true;
    g.normal = b;
    g.offset = -(n.x3 - n.x4) / 2.0;
    return g;
  }
  g.center = b / a;
  const double r2 = std::norm(g.center) + (n.x3 - n.x4) / a;
  g.radius = std::sqrt(std::max(r2, 0.0)) * (a > 0 ? 1.0 : -1.0);
  return g;
}

std::vector<GaussCircle> gauss_circles(const PolySurface& s) {
  if (s.kind() != VertexKind::Ideal) throw Error("gauss circles need an ideal surface");
  std::vector<GaussCircle> out;
  for (int f = 0; f < s.base().num_faces(); ++f) out.push_back(gauss_circle(s.face_normal(f)));
  return out;
}

double intersection_angle(const GaussCircle& x, const GaussCircle& y) {
  // Coefficients of F(z) = A|z|^2 + 2 Re(conj(B) z) + C, positive on the disk.
  struct Coef {
    double a;
    std::complex<double> b;
    double c;
  };
  auto coef = [](const GaussCircle& g) -> Coef {
    if (g.is_line) return {0.0, g.normal / 2.0, -g.offset};
    const double r = std::abs(g.radius);
    const double sgn = g.radius > 0 ? -1.0 : 1.0;
    return {sgn, -sgn * g.center, sgn * (std::norm(g.center) - r * r)};
  };
  const Coef p = coef(x), q = coef(y);
  const double np = std::sqrt(std::norm(p.b) - p.a * p.c), nq = std::sqrt(std::norm(q.b) - q.a * q.c);
  const double c = ((p.b * std::conj(q.b)).real() - 0.5 * (p.a * q.c + q.a * p.c)) / (np * nq);
  if (std::abs(c) > 1.0 + 1e-9) throw Error("circles do not meet");
  return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace endlab
