#include "endlab/volume.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "endlab/error.hpp"
#include "endlab/polysurf.hpp"
#include "endlab/rigidity.hpp"

namespace endlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// zeta(2k) for k = 1..kTerms.
constexpr int kTerms = 40;
const std::array<double, kTerms + 1>& zeta_even() {
  static const std::array<double, kTerms + 1> table = [] {
    std::array<double, kTerms + 1> z{};
    const double p2 = kPi * kPi;
    z[1] = p2 / 6;
    z[2] = p2 * p2 / 90;
    z[3] = p2 * p2 * p2 / 945;
    z[4] = p2 * p2 * p2 * p2 / 9450;
    for (int k = 5; k <= kTerms; ++k) {
      double s = 0;
      for (int n = 40; n >= 2; --n) s += std::pow(n, -2.0 * k);
      z[k] = 1.0 + s;
    }
    return z;
  }();
  return table;
}

mink::MinkVec lift(const mink::CP1& p, double log_scale) {
  const mink::MinkVec v = mink::null_lift(p);
  return (std::exp(log_scale) / v.x4) * v;
}

std::complex<double> bracket(const mink::CP1& a, const mink::CP1& b) { return a.z * b.w - a.w * b.z; }

PolySurface realize(const IdealFamily& f, double s, const std::vector<double>& extra) {
  const auto pts = f.points(s);
  std::vector<VertexGeom> g;
  for (std::size_t v = 0; v < pts.size(); ++v) {
    double t = v < f.log_scales.size() ? f.log_scales[v] : 0.0;
    if (v < extra.size()) t += extra[v];
    g.push_back({VertexKind::Ideal, lift(pts[v], t)});
  }
  return PolySurface::build(f.surface, std::move(g));
}

double family_volume(const IdealFamily& f, double s) {
  const auto p = f.points(s);
  double v = 0;
  for (const auto& t : f.tetrahedra) v += ideal_tet_volume(p[t[0]], p[t[1]], p[t[2]], p[t[3]]);
  return v;
}

Eigen::VectorXd interior_angles(const PolySurface& p) {
  Eigen::VectorXd a(p.num_edges());
  for (int e = 0; e < p.num_edges(); ++e) a[e] = p.is_diagonal(e) ? kPi : kPi - p.dihedral_angles()[e];
  return a;
}

}  // namespace

double clausen2(double x) {
  x = std::remainder(x, 2 * kPi);
  if (x == 0.0) return 0.0;
  const double ax = std::abs(x);
  const auto& z = zeta_even();
  const double r = (ax / (2 * kPi)) * (ax / (2 * kPi));
  double sum = ax - ax * std::log(ax);
  double pw = 1.0;
  for (int k = 1; k <= kTerms; ++k) {
    pw *= r;
    const double term = z[k] / (k * (2.0 * k + 1)) * pw * ax;
    sum += term;
    if (term < 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return x < 0 ? -sum : sum;
}

double lobachevsky(double theta) { return 0.5 * clausen2(2.0 * std::remainder(theta, kPi)); }

AngleTriple AngleTriple::from_shape(std::complex<double> z) {
  return {std::arg(z), std::arg(1.0 / (1.0 - z)), std::arg((z - 1.0) / z)};
}

std::complex<double> AngleTriple::shape() const { return std::polar(std::sin(beta) / std::sin(gamma), alpha); }

double ideal_tet_volume(const AngleTriple& a) {
  for (double t : {a.alpha, a.beta, a.gamma})
    if (!(t > 1e-12 && t < kPi - 1e-12)) throw Error("degenerate triple");
  if (std::abs(a.alpha + a.beta + a.gamma - kPi) > 1e-12) throw Error("angles must sum to pi");
  return lobachevsky(a.alpha) + lobachevsky(a.beta) + lobachevsky(a.gamma);
}

double ideal_tet_volume(const mink::CP1& p0, const mink::CP1& p1, const mink::CP1& p2, const mink::CP1& p3) {
  const std::complex<double> z = bracket(p3, p1) * bracket(p2, p0) / (bracket(p3, p0) * bracket(p2, p1));
  if (std::abs(z.imag()) <= 1e-15 * std::abs(z)) return 0.0;
  const std::complex<double> w = z.imag() > 0 ? z : std::conj(z);
  const AngleTriple t = AngleTriple::from_shape(w);
  const double v = lobachevsky(t.alpha) + lobachevsky(t.beta) + lobachevsky(t.gamma);
  return z.imag() > 0 ? v : -v;
}

IdealFamily tetrahedron_family(const AngleTriple& base, const std::array<double, 3>& dir) {
  if (std::abs(dir[0] + dir[1] + dir[2]) > 1e-12) throw Error("angle variation must keep the sum at pi");
  IdealFamily f{CellSurface::from_polygons(4, {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}}),
                [base, dir](double s) {
                  const AngleTriple t{base.alpha + s * dir[0], base.beta + s * dir[1], base.gamma + s * dir[2]};
                  return std::vector<mink::CP1>{mink::CP1::infinity(), mink::CP1::finite(0.0), mink::CP1::finite(1.0),
                                                mink::CP1::finite(t.shape())};
                },
                {{0, 1, 2, 3}},
                std::vector<double>(4, 0.0)};
  return f;
}

IdealFamily octahedron_family() {
  std::vector<std::vector<int>> faces;
  for (int k = 0; k < 4; ++k) {
    const int a = 2 + k, b = 2 + (k + 1) % 4;
    faces.push_back({0, a, b});
    faces.push_back({1, b, a});
  }
  IdealFamily f{CellSurface::from_polygons(6, faces),
                [](double s) {
                  std::vector<mink::CP1> p{mink::CP1::finite(0.0), mink::CP1::infinity()};
                  const std::complex<double> ik[4] = {1.0, {0.0, 1.0}, -1.0, {0.0, -1.0}};
                  for (int k = 0; k < 4; ++k) p.push_back(mink::CP1::finite(std::exp(k % 2 ? -s : s) * ik[k]));
                  return p;
                },
                {},
                std::vector<double>(6, 0.0)};
  for (int k = 0; k < 4; ++k) f.tetrahedra.push_back({1, 0, 2 + k, 2 + (k + 1) % 4});
  return f;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(y[i] > 0) || !(x[i] > 0)) continue;
    const double a = std::log(x[i]), b = std::log(y[i]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SchlafliResult schlafli_residual_ideal(const IdealFamily& f, const SchlafliOptions& opt,
                                       const std::vector<double>& rescale) {
  SchlafliResult r;
  const PolySurface p0 = realize(f, opt.s0, {});
  const CellSurface& t = p0.tri();
  const Eigen::VectorXd dtheta_raw =
      (interior_angles(realize(f, opt.s0 + opt.h_angle, {})) - interior_angles(realize(f, opt.s0 - opt.h_angle, {}))) /
      (2 * opt.h_angle);
  const Eigen::MatrixXd inc = vertex_to_edge(t);
  r.constraint_defect = (inc.transpose() * dtheta_raw).cwiseAbs().maxCoeff();
  if (r.constraint_defect > 1e-6 * std::max(1.0, dtheta_raw.cwiseAbs().maxCoeff()))
    throw Error("angle variation violates the vertex constraints");
  const Eigen::VectorXd dtheta =
      dtheta_raw - inc * (inc.transpose() * inc).ldlt().solve(inc.transpose() * dtheta_raw);

  auto schlafli = [&](const PolySurface& p) {
    double s = 0;
    for (int e = 0; e < p.num_edges(); ++e) s += p.edge_lengths()[e] * dtheta[e];
    return -0.5 * s;
  };
  r.schlafli_sum = schlafli(p0);
  std::vector<double> extra = rescale;
  if (extra.empty())
    for (int v = 0; v < t.num_vertices(); ++v) extra.push_back(0.1 * (v + 1) * (v % 2 ? -1.0 : 1.0));
  r.rescale_change = std::abs(schlafli(realize(f, opt.s0, extra)) - r.schlafli_sum);
  r.volume = family_volume(f, opt.s0);

  double eps = opt.eps0;
  bool all_zero = true;
  for (int k = 0; k < opt.steps; ++k, eps *= 0.5) {
    const double dv = (family_volume(f, opt.s0 + eps) - family_volume(f, opt.s0 - eps)) / (2 * eps);
    r.eps.push_back(eps);
    r.residual.push_back(std::abs(dv - r.schlafli_sum));
    if (r.residual.back() > 1e-14) all_zero = false;
  }
  r.order = all_zero ? std::numeric_limits<double>::quiet_NaN() : loglog_slope(r.eps, r.residual);
  return r;
}

D13 d13_profile(double x0, double x1, double y) {
  if (!(x0 > 0 && x1 > 0)) throw Error("d13 needs x0, x1 > 0");
  auto branch = [y](double c, double shift) {
    const double u = c * std::cosh(y);
    const double d = std::acosh(u) + shift;
    const double dd = y == 0.0 ? 0.0 : c * std::sinh(y) / std::sqrt(u * u - 1.0);
    return std::pair{d, dd};
  };
  const auto left = branch(std::cosh(x1), x0);
  const auto right = branch(std::cosh(x0 + x1), 0.0);
  if (y < 0) return {left.first, left.second, left.second};
  if (y > 0) return {right.first, right.second, right.second};
  return {left.first, left.second, right.second};
}

D13Jump d13_second_jump(double x0, double x1) {
  auto second = [](double c) { return c / std::sqrt(c * c - 1.0); };
  D13Jump j;
  j.left = second(std::cosh(x1));
  j.right = second(std::cosh(x0 + x1));
  j.jump = j.right - j.left;
  return j;
}

}  // namespace endlab
