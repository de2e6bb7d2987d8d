#include "endlab/crossratio.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/SVD>

#include "endlab/error.hpp"
#include "endlab/polysurf.hpp"

namespace endlab {

namespace {

cplx bracket(const mink::CP1& p, const mink::CP1& q) { return p.z * q.w - p.w * q.z; }

double scale(const mink::CP1& p) { return std::sqrt(std::norm(p.z) + std::norm(p.w)); }

// zeta sequence around v in rotation order.
std::vector<int> star_edges(const CellSurface& s, int v) {
  std::vector<int> e;
  for (int d : s.star(v)) e.push_back(CellSurface::edge_of(d));
  return e;
}

}  // namespace

cplx edge_cross_ratio(const mink::CP1& vi, const mink::CP1& vj, const mink::CP1& vk, const mink::CP1& vl) {
  const mink::CP1* p[4] = {&vi, &vj, &vk, &vl};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (std::abs(bracket(*p[a], *p[b])) <= 1e-14 * scale(*p[a]) * scale(*p[b])) throw Error("coincident points");
  return bracket(vk, vi) * bracket(vl, vj) / (bracket(vk, vj) * bracket(vl, vi));
}

CrossRatioAssignment make_assignment(const CellSurface& s, std::vector<cplx> cr) {
  if (!s.is_triangulated()) throw Error("cross-ratios need a triangulated surface");
  if (static_cast<int>(cr.size()) != s.num_edges()) throw Error("need one cross-ratio per edge");
  for (std::size_t e = 0; e < cr.size(); ++e) {
    const cplx c = cr[e];
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || std::abs(c) < 1e-14 || std::abs(c - 1.0) < 1e-14)
      throw Error("degenerate cross-ratio on edge " + std::to_string(e));
  }
  return {s.without_weights(), std::move(cr), false};
}

CrossRatioAssignment from_ideal_surface(const PolySurface& s) {
  if (s.kind() != VertexKind::Ideal) throw Error("cross-ratios need an ideal surface");
  const CellSurface& t = s.tri();
  std::vector<mink::CP1> pts;
  for (const auto& g : s.vertices()) pts.push_back(mink::ideal_point(g.x));
  // A face containing the projection point shows up reversed in the chart, so
  // the orientation is decided by a vote over all finite faces.
  int vote = 0;
  for (int f = 0; f < t.num_faces(); ++f) {
    const auto& c = t.face_darts(f);
    const mink::CP1 &a = pts[t.tail(c[0])], &b = pts[t.tail(c[1])], &d = pts[t.tail(c[2])];
    if (a.is_infinite(1e-12) || b.is_infinite(1e-12) || d.is_infinite(1e-12)) continue;
    const double area = (std::conj(b.value() - a.value()) * (d.value() - a.value())).imag();
    vote += area > 0 ? 1 : -1;
  }
  if (vote == 0) throw Error("cannot orient the chart");
  const bool conj = vote > 0;
  if (conj)
    for (auto& p : pts) p = {std::conj(p.z), std::conj(p.w)};
  std::vector<cplx> cr(t.num_edges());
  for (int e = 0; e < t.num_edges(); ++e) {
    const int d = 2 * e, r = d + 1;
    cr[e] = edge_cross_ratio(pts[t.tail(d)], pts[t.head(d)], pts[t.head(t.next(d))], pts[t.head(t.next(r))]);
  }
  CrossRatioAssignment a = make_assignment(t, std::move(cr));
  a.conjugate_chart = conj;
  return a;
}

std::vector<VertexResidual> vertex_conditions(const CrossRatioAssignment& a) {
  const CellSurface& s = a.surface;
  std::vector<VertexResidual> out;
  for (int v = 0; v < s.num_vertices(); ++v) {
    const auto edges = star_edges(s, v);
    const std::size_t n = edges.size();
    VertexResidual r;
    r.vertex = v;
    cplx prod = 1.0;
    for (int e : edges) prod *= -a.cr[e];
    r.product = std::abs(prod - 1.0);
    for (std::size_t start = 0; start < n; ++start) {
      cplx p = 1.0, sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        p *= -a.cr[edges[(start + k) % n]];
        sum += p;
      }
      r.sum = std::max(r.sum, std::abs(sum));
    }
    out.push_back(r);
  }
  return out;
}

std::vector<ShearAngle> shear_angle_split(const CrossRatioAssignment& a) {
  std::vector<ShearAngle> out;
  for (const cplx& c : a.cr) out.push_back({std::log(std::abs(c)), std::arg(c)});
  return out;
}

Eigen::Matrix2cd holonomy_loop(const CrossRatioAssignment& a, const std::vector<int>& loop) {
  const CellSurface& s = a.surface;
  if (loop.empty()) throw Error("open path");
  for (std::size_t k = 0; k < loop.size(); ++k) {
    if (loop[k] < 0 || loop[k] >= s.num_darts()) throw Error("dart out of range");
    if (s.head(loop[k]) != s.tail(loop[(k + 1) % loop.size()])) throw Error("open path");
  }
  Eigen::Matrix2cd rot, h = Eigen::Matrix2cd::Identity();
  rot << 1.0, -1.0, 1.0, 0.0;
  for (std::size_t k = 0; k < loop.size(); ++k) {
    const int target = loop[(k + 1) % loop.size()];
    h = h * rot;
    int x = s.next(loop[k]);
    for (std::size_t guard = 0; x != target; ++guard) {
      if (guard > static_cast<std::size_t>(s.num_darts())) throw Error("open path");
      Eigen::Matrix2cd cross;
      cross << 0.0, 1.0 / a.cr[CellSurface::edge_of(x)], 1.0, 0.0;
      h = h * cross * rot;
      x = s.sigma(x);
    }
  }
  return h / std::sqrt(h.determinant());
}

double off_identity(const Eigen::Matrix2cd& m0) {
  const Eigen::Matrix2cd m = m0 / std::sqrt(m0.determinant());
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  return std::min((m - id).norm(), (m + id).norm());
}

std::vector<int> vertex_loop(const CellSurface& s, int v) {
  const auto& star = s.star(v);
  std::vector<int> loop;
  for (auto it = star.rbegin(); it != star.rend(); ++it) loop.push_back(s.next(*it));
  return loop;
}

SolveResult solve_vertex_conditions(const CellSurface& s, const SolveOptions& opt) {
  if (!s.is_triangulated()) throw Error("cross-ratios need a triangulated surface");
  const int ne = s.num_edges(), nv = s.num_vertices();
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  constexpr double kPi = 3.14159265358979323846;

  // zeta_e = -cr_e; start near exp(2 pi i / n) with n the mean endpoint degree.
  Eigen::VectorXcd z(ne);
  for (int e = 0; e < ne; ++e) {
    const double n = 0.5 * (s.star(s.edge(e)[0]).size() + s.star(s.edge(e)[1]).size());
    z[e] = std::polar(1.0 + opt.spread * unif(rng), 2 * kPi / n + opt.spread * unif(rng));
  }
  std::vector<std::vector<int>> stars(nv);
  for (int v = 0; v < nv; ++v) stars[v] = star_edges(s, v);

  auto residual = [&](const Eigen::VectorXcd& x) {
    Eigen::VectorXcd f(2 * nv);
    for (int v = 0; v < nv; ++v) {
      cplx p = 1.0, sum = 0.0;
      for (int e : stars[v]) {
        p *= x[e];
        sum += p;
      }
      f[2 * v] = p - 1.0;
      f[2 * v + 1] = sum;
    }
    return f;
  };
  auto jacobian = [&](const Eigen::VectorXcd& x) {
    Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(2 * nv, ne);
    for (int v = 0; v < nv; ++v) {
      const auto& st = stars[v];
      std::vector<int> count(ne, 0);
      cplx p = 1.0;
      for (std::size_t k = 0; k < st.size(); ++k) {
        p *= x[st[k]];
        ++count[st[k]];
        // d(prefix_k)/dz_e = prefix_k * count_e / z_e
        for (std::size_t m = 0; m <= k; ++m) {
          const int e = st[m];
          if (m > 0 && std::find(st.begin(), st.begin() + m, e) != st.begin() + m) continue;
          j(2 * v + 1, e) += p * static_cast<double>(count[e]) / x[e];
          if (k + 1 == st.size()) j(2 * v, e) += p * static_cast<double>(count[e]) / x[e];
        }
      }
    }
    return j;
  };

  Eigen::VectorXcd f = residual(z);
  double norm = f.norm();
  int it = 0;
  for (; it < opt.max_iterations && norm > opt.tol; ++it) {
    const Eigen::MatrixXcd j = jacobian(z);
    const Eigen::VectorXcd step = j.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(-f);
    double t = 1.0;
    bool improved = false;
    for (int k = 0; k < 30; ++k, t *= 0.5) {
      const Eigen::VectorXcd trial = z + t * step;
      const Eigen::VectorXcd ft = residual(trial);
      if (ft.norm() < norm) {
        z = trial;
        f = ft;
        norm = ft.norm();
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  std::vector<cplx> cr(ne);
  for (int e = 0; e < ne; ++e) cr[e] = -z[e];
  return {{s.without_weights(), std::move(cr), false}, norm <= opt.tol, it, norm};
}

}  // namespace endlab
