#include "endlab/rigidity.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/QR>
#include <Eigen/SVD>
#include <fmt/format.h>

namespace endlab {

using mink::MinkVec;

namespace {

void require_frames(const PolySurface& s) {
  if (s.kind() == VertexKind::Ideal) throw Error("operator needs compact or hyperideal vertices");
}

void require_ideal(const PolySurface& s) {
  if (s.kind() != VertexKind::Ideal) throw Error("operator needs ideal vertices");
}

Eigen::VectorXd frame_signature(const PolySurface& s) {
  Eigen::VectorXd g(3 * s.num_vertices());
  for (int v = 0; v < s.num_vertices(); ++v)
    for (int i = 0; i < 3; ++i) g[3 * v + i] = s.frame(v).sign[i];
  return g;
}

struct Fraction {
  std::int64_t p = 0, q = 1;
  Fraction() = default;
  Fraction(std::int64_t a, std::int64_t b = 1) : p(a), q(b) { norm(); }
  void norm() {
    if (q < 0) p = -p, q = -q;
    const std::int64_t g = std::gcd(p < 0 ? -p : p, q);
    if (g > 1) p /= g, q /= g;
  }
  bool zero() const { return p == 0; }
  Fraction operator-(const Fraction& o) const { return {p * o.q - o.p * q, q * o.q}; }
  Fraction operator*(const Fraction& o) const { return {p * o.p, q * o.q}; }
  Fraction operator/(const Fraction& o) const { return {p * o.q, q * o.p}; }
};

// Orthonormal basis of the column space, rank by relative tolerance.
Eigen::MatrixXd column_space(const Eigen::MatrixXd& m, double tol = 1e-10) {
  if (m.cols() == 0) return m;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int r = 0;
  while (r < sv.size() && sv[r] > tol * sv[0]) ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace

Spectrum kernel_dim(const OperatorBundle& b, double tol_rank, double min_gap) {
  const Eigen::MatrixXd& m = b.matrix;
  Spectrum sp;
  const long n = m.cols();
  if (m.rows() == 0 || n == 0) {
    sp.kernel_dim = static_cast<int>(n);
    sp.gap = std::numeric_limits<double>::infinity();
    sp.kernel = Eigen::MatrixXd::Identity(n, n);
    return sp;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  // Wide matrices have n - rows structural zeros; keep them in the spectrum.
  sp.singular_values = Eigen::VectorXd::Zero(n);
  sp.singular_values.head(svd.singularValues().size()) = svd.singularValues();
  const auto& sv = sp.singular_values;
  const double smax = sv.size() ? sv[0] : 0.0;
  int r = 0;
  while (r < sv.size() && smax > 0 && sv[r] >= tol_rank * smax) ++r;
  sp.rank = r;
  sp.kernel_dim = static_cast<int>(n) - r;
  if (r == 0 || r == sv.size())
    sp.gap = std::numeric_limits<double>::infinity();
  else
    sp.gap = sv[r - 1] / std::max(sv[r], 1e-16 * smax);
  sp.margin = r == 0 ? 0.0 : sv[r - 1] / (tol_rank * smax);
  sp.kernel = svd.matrixV().rightCols(sp.kernel_dim);
  if (sp.gap < min_gap)
    throw IndeterminateRank(fmt::format("indeterminate rank for {}: gap {:.3g}", b.name, sp.gap), sv);
  return sp;
}

OperatorBundle assemble_Phi(const PolySurface& s) {
  require_frames(s);
  const CellSurface& t = s.tri();
  OperatorBundle b{"Phi", "sum_v T_v (frame coordinates)", "R^E", Eigen::MatrixXd::Zero(t.num_edges(), 3 * t.num_vertices()),
                   frame_signature(s)};
  for (int d = 0; d < t.num_darts(); ++d) {
    const int v = t.tail(d), e = CellSurface::edge_of(d);
    for (int i = 0; i < 3; ++i) b.matrix(e, 3 * v + i) += mink::dot(s.link_tangent(d), s.frame(v).e[i]);
  }
  return b;
}

OperatorBundle assemble_Psi(const PolySurface& s) {
  require_frames(s);
  const CellSurface& t = s.tri();
  OperatorBundle b{"Psi", "R^E", "sum_v T_v (frame coordinates)", Eigen::MatrixXd::Zero(3 * t.num_vertices(), t.num_edges()),
                   frame_signature(s)};
  for (int e = 0; e < t.num_edges(); ++e) {
    // Image of the unit angle variation on e: u_{v,e} at both endpoints.
    std::vector<MinkVec> X(t.num_vertices());
    for (int d : {2 * e, 2 * e + 1}) X[t.tail(d)] = X[t.tail(d)] + s.link_tangent(d);
    const Eigen::VectorXd col = to_frame_coords(s, X);
    b.matrix.col(e) = col;
  }
  return b;
}

Eigen::VectorXd to_frame_coords(const PolySurface& s, const std::vector<MinkVec>& Z) {
  Eigen::VectorXd z(3 * s.num_vertices());
  for (int v = 0; v < s.num_vertices(); ++v)
    for (int i = 0; i < 3; ++i) z[3 * v + i] = s.frame(v).sign[i] * mink::dot(Z[v], s.frame(v).e[i]);
  return z;
}

std::vector<MinkVec> from_frame_coords(const PolySurface& s, const Eigen::VectorXd& z) {
  std::vector<MinkVec> Z(s.num_vertices());
  for (int v = 0; v < s.num_vertices(); ++v)
    for (int i = 0; i < 3; ++i) Z[v] = Z[v] + z[3 * v + i] * s.frame(v).e[i];
  return Z;
}

Eigen::MatrixXd killing_basis(const PolySurface& s) {
  const auto gens = mink::so31_basis();
  const int nv = s.num_vertices();
  if (s.kind() == VertexKind::Ideal) {
    Eigen::MatrixXd k(2 * nv, 6);
    for (int j = 0; j < 6; ++j)
      for (int v = 0; v < nv; ++v) {
        const MinkVec xu = mink::apply(gens[j], s.vertex(v).x);
        k(2 * v, j) = -mink::dot(xu, s.chart(v).e1);
        k(2 * v + 1, j) = -mink::dot(xu, s.chart(v).e2);
      }
    return k;
  }
  Eigen::MatrixXd k(3 * nv, 6);
  for (int j = 0; j < 6; ++j) {
    std::vector<MinkVec> Z;
    for (int v = 0; v < nv; ++v) Z.push_back(mink::apply(gens[j], s.vertex(v).x));
    k.col(j) = to_frame_coords(s, Z);
  }
  return k;
}

Eigen::MatrixXd vertex_to_edge(const CellSurface& s) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(s.num_edges(), s.num_vertices());
  for (int e = 0; e < s.num_edges(); ++e) {
    m(e, s.edge(e)[0]) += 1;
    m(e, s.edge(e)[1]) += 1;
  }
  return m;
}

Eigen::MatrixXd quotient_basis(const CellSurface& s) {
  const Eigen::MatrixXd i = vertex_to_edge(s);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(i, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  if (sv.size() < s.num_vertices() || sv[sv.size() - 1] < 1e-10 * sv[0])
    throw Error("i: R^V -> R^E is not injective (bipartite graph?)");
  return svd.matrixU().rightCols(s.num_edges() - s.num_vertices());
}

Eigen::MatrixXd sum_zero_basis(const CellSurface& s) {
  const int nv = s.num_vertices(), ne = s.num_edges();
  std::vector<std::vector<Fraction>> a(nv, std::vector<Fraction>(ne));
  for (int e = 0; e < ne; ++e) {
    a[s.edge(e)[0]][e] = a[s.edge(e)[0]][e] - Fraction(-1);
    a[s.edge(e)[1]][e] = a[s.edge(e)[1]][e] - Fraction(-1);
  }
  std::vector<int> pivot_col;
  int row = 0;
  for (int c = 0; c < ne && row < nv; ++c) {
    int p = row;
    while (p < nv && a[p][c].zero()) ++p;
    if (p == nv) continue;
    std::swap(a[p], a[row]);
    const Fraction piv = a[row][c];
    for (auto& x : a[row]) x = x / piv;
    for (int r = 0; r < nv; ++r) {
      if (r == row || a[r][c].zero()) continue;
      const Fraction f = a[r][c];
      for (int k = 0; k < ne; ++k) a[r][k] = a[r][k] - f * a[row][k];
    }
    pivot_col.push_back(c);
    ++row;
  }
  std::vector<char> is_pivot(ne, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  std::vector<Eigen::VectorXd> cols;
  for (int c = 0; c < ne; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Fraction> v(ne);
    v[c] = Fraction(1);
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = Fraction(0) - a[r][c];
    std::int64_t l = 1;
    for (const auto& x : v) l = std::lcm(l, x.q);
    Eigen::VectorXd col(ne);
    for (int k = 0; k < ne; ++k) col[k] = static_cast<double>(v[k].p * (l / v[k].q));
    cols.push_back(col);
  }
  Eigen::MatrixXd b(ne, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) b.col(j) = cols[j];
  return b;
}

Eigen::MatrixXd link_matrix(const PolySurface& s) {
  require_ideal(s);
  const CellSurface& t = s.tri();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(t.num_edges(), 2 * t.num_vertices());
  for (int d = 0; d < t.num_darts(); ++d) {
    const int v = t.tail(d), e = CellSurface::edge_of(d);
    a(e, 2 * v) += s.link_chart(d)[0];
    a(e, 2 * v + 1) += s.link_chart(d)[1];
  }
  return a;
}

OperatorBundle assemble_phi_ideal(const PolySurface& s) {
  const Eigen::MatrixXd q = quotient_basis(s.tri());
  return {"phi", "sum_v H_v*", "R^E/i(R^V) (orthonormal basis of (im i)^perp)", q.transpose() * link_matrix(s), {}};
}

OperatorBundle assemble_psi_ideal(const PolySurface& s) {
  require_ideal(s);
  const CellSurface& t = s.tri();
  const Eigen::MatrixXd basis = sum_zero_basis(t);
  OperatorBundle b{"psi", "(R^E)_0 (integer basis of ker i^T)", "sum_v H_v",
                   Eigen::MatrixXd::Zero(2 * t.num_vertices(), basis.cols()), {}};
  for (int j = 0; j < basis.cols(); ++j)
    for (int d = 0; d < t.num_darts(); ++d) {
      const double th = basis(CellSurface::edge_of(d), j);
      if (th == 0.0) continue;
      b.matrix.block<2, 1>(2 * t.tail(d), j) += th * s.link_chart(d);
    }
  return b;
}

Eigen::VectorXd affine_constants(const PolySurface& s, const Eigen::VectorXd& w) {
  const Eigen::MatrixXd i = vertex_to_edge(s.tri());
  return i.colPivHouseholderQr().solve(-(link_matrix(s) * w));
}

AdjointnessResult check_adjointness(const PolySurface& s, std::uint64_t seed, int pairs) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  auto random = [&](long n) {
    Eigen::VectorXd v(n);
    for (long k = 0; k < n; ++k) v[k] = gauss(rng);
    return v;
  };
  AdjointnessResult r;
  r.pairs = pairs;
  if (s.kind() == VertexKind::Ideal) {
    const CellSurface& t = s.tri();
    const Eigen::MatrixXd q = quotient_basis(t);
    const Eigen::MatrixXd b = sum_zero_basis(t);
    const OperatorBundle phi = assemble_phi_ideal(s), psi = assemble_psi_ideal(s);
    for (int k = 0; k < pairs; ++k) {
      const Eigen::VectorXd w = random(phi.matrix.cols()), beta = random(psi.matrix.cols());
      const Eigen::VectorXd theta = b * beta;
      const double lhs = theta.dot(q * (phi.matrix * w));
      const double rhs = (psi.matrix * beta).dot(w);
      r.max_relative = std::max(r.max_relative, std::abs(lhs - rhs) / (theta.norm() * w.norm()));
    }
    return r;
  }
  const OperatorBundle phi = assemble_Phi(s), psi = assemble_Psi(s);
  for (int k = 0; k < pairs; ++k) {
    const Eigen::VectorXd z = random(phi.matrix.cols()), th = random(phi.matrix.rows());
    const double lhs = (phi.matrix * z).dot(th);
    const double rhs = z.dot(psi.metric.cwiseProduct(psi.matrix * th));
    r.max_relative = std::max(r.max_relative, std::abs(lhs - rhs) / (z.norm() * th.norm()));
  }
  return r;
}

RigidityReport projective_rigidity_verdict(const PolySurface& s, double tol_rank, std::uint64_t seed) {
  RigidityReport r;
  r.kind = s.kind();
  if (s.kind() == VertexKind::DeSitter) throw Error("rigidity needs compact, ideal or hyperideal vertices");
  const bool ideal = s.kind() == VertexKind::Ideal;
  r.op = ideal ? assemble_phi_ideal(s) : assemble_Phi(s);
  r.spectrum = kernel_dim(r.op, tol_rank);
  const Eigen::MatrixXd k = column_space(killing_basis(s));
  r.trivial_rank = static_cast<int>(k.cols());
  r.residual_dim = r.spectrum.kernel_dim - r.trivial_rank;
  const Eigen::MatrixXd& n = r.spectrum.kernel;
  double res = 0;
  if (k.cols() > 0) res = (k - n * (n.transpose() * k)).norm();
  if (n.cols() > 0 && k.cols() > 0) res = std::max(res, (n - k * (k.transpose() * n)).norm());
  r.span_residual = res;
  r.adjoint = check_adjointness(s, seed);
  for (long j = 0; j < n.cols(); ++j) {
    Decoration d;
    try {
      if (ideal) {
        const Eigen::VectorXd w = n.col(j);
        const Eigen::VectorXd c = affine_constants(s, w);
        std::vector<double> cv(c.data(), c.data() + c.size());
        std::vector<Eigen::Vector2d> wv;
        for (int v = 0; v < s.num_vertices(); ++v) wv.emplace_back(w[2 * v], w[2 * v + 1]);
        d = decoration_from_affine(s, cv, wv, true);
      } else {
        d = decoration_from_deformation(s, from_frame_coords(s, n.col(j)), true);
      }
    } catch (const Error& e) {
      r.notes.push_back(fmt::format("kernel vector {}: {}", j, e.what()));
      continue;
    }
    r.decorations.push_back({classify_decoration(s.tri(), d), is_tight(s.tri(), d), pak_report(s.tri(), d)});
  }
  r.notes.push_back("global properness is not checked");
  return r;
}

}  // namespace endlab
