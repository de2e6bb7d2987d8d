#pragma once

// Minkowski space R^{3,1} with the form x1y1 + x2y2 + x3y3 - x4y4.
// H^3 is the upper sheet {<x,x> = -1, x4 > 0}, dS^3 is {<x,x> = +1}.

#include <array>
#include <complex>
#include <string_view>
#include <variant>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "endlab/tolerances.hpp"

namespace endlab::mink {

struct MinkVec {
  double x1 = 0, x2 = 0, x3 = 0, x4 = 0;

  constexpr MinkVec() = default;
  constexpr MinkVec(double a, double b, double c, double d) : x1(a), x2(b), x3(c), x4(d) {}

  static MinkVec from(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }
  Eigen::Vector4d eigen() const { return {x1, x2, x3, x4}; }

  constexpr double operator[](int i) const { return i == 0 ? x1 : i == 1 ? x2 : i == 2 ? x3 : x4; }

  friend constexpr MinkVec operator+(const MinkVec& a, const MinkVec& b) {
    return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3, a.x4 + b.x4};
  }
  friend constexpr MinkVec operator-(const MinkVec& a, const MinkVec& b) {
    return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3, a.x4 - b.x4};
  }
  friend constexpr MinkVec operator*(double s, const MinkVec& a) {
    return {s * a.x1, s * a.x2, s * a.x3, s * a.x4};
  }
  constexpr MinkVec operator-() const { return {-x1, -x2, -x3, -x4}; }
};

constexpr double dot(const MinkVec& a, const MinkVec& b) {
  return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3 - a.x4 * b.x4;
}
constexpr double norm2(const MinkVec& a) { return dot(a, a); }
constexpr double euclid_norm2(const MinkVec& a) {
  return a.x1 * a.x1 + a.x2 * a.x2 + a.x3 * a.x3 + a.x4 * a.x4;
}

// diag(1, 1, 1, -1)
Eigen::Matrix4d form();

enum class Causal { Timelike, Spacelike, Null };
std::string_view to_string(Causal c);

// Throws on the zero vector ("degenerate vector").
Causal classify(const MinkVec& v, double tol_null = kDefaultTolerances.null);

// Rescale to |<v,v>| = 1; timelike vectors land on the upper sheet.
MinkVec normalize(const MinkVec& v);

// Point of H^3 at distance r from the origin (0,0,0,1) in unit direction dir.
MinkVec hyperboloid_point(const Eigen::Vector3d& dir, double r);

double hyp_distance(const MinkVec& p, const MinkVec& q);

// Principal complex length with cosh-type relation to <v0,v1>; see README for
// the branch: Re >= 0; Im = acos<v0,v1> for a spacelike pair whose dual planes
// meet (so Im equals the exterior angle between them); Im in [0, pi] otherwise.
std::complex<double> complex_edge_length(const MinkVec& v0, const MinkVec& v1,
                                         double tol_null = kDefaultTolerances.null);

struct Horosphere {
  MinkVec u;  // null, u.x4 > 0; the horosphere is {x in H^3 : <x,u> = -1}

  static Horosphere make(const MinkVec& u, double tol_null = kDefaultTolerances.null);
  Horosphere scaled(double t) const;  // u -> e^t u
};

// log(-<u,w>/2): signed distance between the two horospheres along the
// geodesic joining their centers.
double decorated_length(const Horosphere& u, const Horosphere& w);

// Point where the geodesic from the center of h to the center of other meets h.
MinkVec horosphere_foot(const Horosphere& h, const MinkVec& other_center);

struct Plane {
  MinkVec n;  // unit spacelike; {x in H^3 : <x,n> = 0}

  static Plane make(const MinkVec& n, double tol_null = kDefaultTolerances.null);
};

// acos<n1,n2>; throws when the planes do not meet in H^3.
double dihedral_angle_exterior(const Plane& a, const Plane& b);

// Distance between ultraparallel planes, acosh|<n1,n2>|.
double ultraparallel_distance(const Plane& a, const Plane& b);

struct DeSitterPoint {
  MinkVec x;  // <x,x> = 1
};

// Plane of H^3 for an H^3 point: stands for the spacelike plane x^perp in dS^3.
struct DualPlaneOfPoint {
  MinkVec normal;  // timelike unit normal
};

using Dualizable = std::variant<Plane, DeSitterPoint, MinkVec, DualPlaneOfPoint>;

// Plane <-> dS point; H^3 point <-> flagged dS plane record.
Dualizable dual(const Dualizable& x, double tol_null = kDefaultTolerances.null);

// Lorentz transformations.
Eigen::Matrix4d boost(int axis, double rapidity);
Eigen::Matrix4d rotation(int axis, double angle);
// Pure boost taking the origin (0,0,0,1) to p.
Eigen::Matrix4d boost_to(const MinkVec& p);
MinkVec apply(const Eigen::Matrix4d& m, const MinkVec& v);

// The six generators of so(3,1): three rotations then three boosts.
std::array<Eigen::Matrix4d, 6> so31_basis();

// Basis of the tangent space at p (p^perp), orthonormal for <,>, with the
// signature of each vector (+1 or -1). Compact points get 3 spacelike vectors,
// dS points two spacelike and one timelike (listed last).
struct TangentFrame {
  std::array<MinkVec, 3> e;
  std::array<double, 3> sign;
};
TangentFrame tangent_frame(const MinkVec& p);

// Flat chart of a horosphere: x(s) = u' + s1 e1 + s2 e2 + (1+|s|^2)/2 u with
// <u,u'> = -1, u' null and e1, e2 spacelike unit, orthogonal to u and u'.
struct HoroChart {
  MinkVec u, u_dual, e1, e2;
  Eigen::Vector2d coords(const MinkVec& x) const { return {dot(x, e1), dot(x, e2)}; }
  MinkVec point(const Eigen::Vector2d& s) const;
};
HoroChart horo_chart(const Horosphere& h);

// CP^1 chart: stereographic projection from the null direction (0,0,-1,1).
// A point is a homogeneous pair (z, w) standing for z/w; w = 0 is infinity.
struct CP1 {
  std::complex<double> z{0.0}, w{1.0};
  static CP1 finite(std::complex<double> c) { return {c, 1.0}; }
  static CP1 infinity() { return {1.0, 0.0}; }
  bool is_infinite(double tol = 1e-14) const;
  std::complex<double> value() const { return z / w; }
};

// Null vector with Hermitian matrix 2 (z,w)(z,w)^*.
MinkVec null_lift(const CP1& p);
CP1 ideal_point(const MinkVec& null_vec);

// SO+(3,1) matrix of the Moebius map z -> (a z + b)/(c z + d).
Eigen::Matrix4d moebius_to_lorentz(const Eigen::Matrix2cd& m);

}  // namespace endlab::mink
