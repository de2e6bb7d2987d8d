#pragma once

// Lobachevsky function, ideal tetrahedron volumes, Schlafli finite-difference
// checks for ideal polyhedra, and the two-branch distance profile d13.

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "endlab/cellsurf.hpp"
#include "endlab/mink.hpp"

namespace endlab {

// L(t) = -int_0^t log|2 sin s| ds; odd and pi-periodic.
double lobachevsky(double theta);

// Clausen function Cl2(x) = sum sin(kx)/k^2; L(t) = Cl2(2t)/2.
double clausen2(double x);

struct AngleTriple {
  double alpha = 0, beta = 0, gamma = 0;
  static AngleTriple from_shape(std::complex<double> z);
  std::complex<double> shape() const;  // (sin beta / sin gamma) e^{i alpha}
};

// Throws "degenerate triple" unless all angles lie in (0, pi) and sum to pi.
double ideal_tet_volume(const AngleTriple& a);

// Signed volume of the ideal tetrahedron p0 p1 p2 p3 (positive when the shape
// of p3 relative to (p0, p1, p2) -> (inf, 0, 1) has positive imaginary part).
double ideal_tet_volume(const mink::CP1& p0, const mink::CP1& p1, const mink::CP1& p2, const mink::CP1& p3);

// A one-parameter family of ideal polyhedra with fixed combinatorics.
struct IdealFamily {
  CellSurface surface;
  std::function<std::vector<mink::CP1>(double)> points;
  std::vector<std::array<int, 4>> tetrahedra;  // decomposition used for volumes
  std::vector<double> log_scales;              // horosphere choice per vertex
};

IdealFamily tetrahedron_family(const AngleTriple& base, const std::array<double, 3>& direction);
// Regular ideal octahedron with poles 0, inf and equator points e^{+-s} i^k,
// split into four tetrahedra around the polar axis.
IdealFamily octahedron_family();

struct SchlafliOptions {
  double s0 = 0.0;
  double eps0 = 0.1;
  int steps = 6;        // eps0, eps0/2, ...
  double h_angle = 1e-5;
};

struct SchlafliResult {
  std::vector<double> eps;
  std::vector<double> residual;  // |(V(s0+eps) - V(s0-eps)) / (2 eps) - S|
  double order = 0;              // log-log slope; NaN when every residual vanishes
  double volume = 0;
  double schlafli_sum = 0;       // S = -1/2 sum l_e d(theta_e), interior angles
  double rescale_change = 0;     // |S(rescaled horospheres) - S|
  double constraint_defect = 0;  // |i^T d(theta)| before projection
};

// Throws when the angle variation violates the vertex constraints.
SchlafliResult schlafli_residual_ideal(const IdealFamily& f, const SchlafliOptions& opt = {},
                                       const std::vector<double>& rescale = {});

// Least-squares slope of log y against log x over positive y.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct D13 {
  double distance = 0;
  double derivative_left = 0;
  double derivative_right = 0;
};

// acosh(cosh x1 cosh y) + x0 for y <= 0, acosh(cosh(x0 + x1) cosh y) for y >= 0.
D13 d13_profile(double x0, double x1, double y);
// Second derivative of each branch at y = 0 and their difference.
struct D13Jump {
  double left = 0, right = 0, jump = 0;
};
D13Jump d13_second_jump(double x0, double x1);

}  // namespace endlab
