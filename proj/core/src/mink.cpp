#include "endlab/mink.hpp"

#include <cmath>

#include "endlab/error.hpp"

namespace endlab::mink {

namespace {

constexpr double kPi = 3.14159265358979323846;

// v minus its components along an orthonormal family with given signatures.
MinkVec project_out(MinkVec v, const MinkVec* basis, const double* sign, int n) {
  for (int i = 0; i < n; ++i) v = v - (sign[i] * dot(v, basis[i])) * basis[i];
  return v;
}

}  // namespace

Eigen::Matrix4d form() { return Eigen::Vector4d(1, 1, 1, -1).asDiagonal(); }

std::string_view to_string(Causal c) {
  switch (c) {
    case Causal::Timelike: return "timelike";
    case Causal::Spacelike: return "spacelike";
    case Causal::Null: return "null";
  }
  return "?";
}

Causal classify(const MinkVec& v, double tol_null) {
  const double e = euclid_norm2(v);
  if (e == 0.0) throw Error("degenerate vector");
  const double n = norm2(v);
  if (std::abs(n) <= tol_null * e) return Causal::Null;
  return n < 0 ? Causal::Timelike : Causal::Spacelike;
}

MinkVec normalize(const MinkVec& v) {
  const Causal c = classify(v);
  if (c == Causal::Null) throw Error("cannot normalize a null vector");
  MinkVec r = (1.0 / std::sqrt(std::abs(norm2(v)))) * v;
  if (c == Causal::Timelike && r.x4 < 0) r = -r;
  return r;
}

MinkVec hyperboloid_point(const Eigen::Vector3d& dir, double r) {
  const Eigen::Vector3d d = dir.normalized() * std::sinh(r);
  return {d[0], d[1], d[2], std::cosh(r)};
}

double hyp_distance(const MinkVec& p, const MinkVec& q) {
  const double c = -dot(p, q);
  if (c < 1.0 - 1e-9) throw Error("not both in same sheet");
  return std::acosh(std::max(c, 1.0));
}

std::complex<double> complex_edge_length(const MinkVec& v0, const MinkVec& v1, double tol_null) {
  const Causal c0 = classify(v0, tol_null);
  const Causal c1 = classify(v1, tol_null);
  if (c0 == Causal::Null || c1 == Causal::Null)
    throw Error("use decorated_length for ideal endpoints");
  const MinkVec a = normalize(v0), b = normalize(v1);
  const double c = -dot(a, b);
  if (c >= 1.0) return {std::acosh(c), 0.0};
  if (c <= -1.0) return {std::acosh(-c), kPi};
  if (c0 == Causal::Spacelike && c1 == Causal::Spacelike) return {0.0, std::acos(-c)};
  return {0.0, std::acos(c)};
}

Horosphere Horosphere::make(const MinkVec& u, double tol_null) {
  if (classify(u, tol_null) != Causal::Null) throw Error("horosphere vector must be null");
  if (u.x4 <= 0) throw Error("horosphere vector must be future-pointing");
  return {u};
}

Horosphere Horosphere::scaled(double t) const { return {std::exp(t) * u}; }

double decorated_length(const Horosphere& u, const Horosphere& w) {
  const double p = -dot(u.u, w.u);
  const double scale = std::sqrt(euclid_norm2(u.u) * euclid_norm2(w.u));
  if (p <= 1e-12 * scale) throw Error("same ideal point");
  return std::log(p / 2.0);
}

MinkVec horosphere_foot(const Horosphere& h, const MinkVec& other_center) {
  const double p = dot(h.u, other_center);
  if (p >= 0) throw Error("same ideal point");
  return 0.5 * h.u - (1.0 / p) * other_center;
}

Plane Plane::make(const MinkVec& n, double tol_null) {
  if (classify(n, tol_null) != Causal::Spacelike) throw Error("plane normal must be spacelike");
  return {normalize(n)};
}

double dihedral_angle_exterior(const Plane& a, const Plane& b) {
  const double c = dot(a.n, b.n);
  if (c > 1.0 + 1e-9 || c <= -1.0) throw Error("planes do not intersect");
  return std::acos(std::min(c, 1.0));
}

double ultraparallel_distance(const Plane& a, const Plane& b) {
  const double c = std::abs(dot(a.n, b.n));
  if (c < 1.0) throw Error("planes intersect");
  return std::acosh(c);
}

Dualizable dual(const Dualizable& x, double tol_null) {
  struct Visitor {
    double tol;
    Dualizable operator()(const Plane& p) const { return DeSitterPoint{p.n}; }
    Dualizable operator()(const DeSitterPoint& d) const { return Plane::make(d.x, tol); }
    Dualizable operator()(const DualPlaneOfPoint& d) const { return d.normal; }
    Dualizable operator()(const MinkVec& v) const {
      switch (classify(v, tol)) {
        case Causal::Null: throw Error("ideal points are self-dual boundary data");
        case Causal::Timelike: return DualPlaneOfPoint{normalize(v)};
        case Causal::Spacelike: return Plane::make(v, tol);
      }
      return v;
    }
  };
  return std::visit(Visitor{tol_null}, x);
}

Eigen::Matrix4d boost(int axis, double rapidity) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(axis, axis) = m(3, 3) = std::cosh(rapidity);
  m(axis, 3) = m(3, axis) = std::sinh(rapidity);
  return m;
}

Eigen::Matrix4d rotation(int axis, double angle) {
  const int i = (axis + 1) % 3, j = (axis + 2) % 3;
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(i, i) = m(j, j) = std::cos(angle);
  m(j, i) = std::sin(angle);
  m(i, j) = -std::sin(angle);
  return m;
}

Eigen::Matrix4d boost_to(const MinkVec& p) {
  const MinkVec q = normalize(p);
  if (q.x4 <= 0) throw Error("boost target must lie in H^3");
  const Eigen::Vector3d s(q.x1, q.x2, q.x3);
  Eigen::Matrix4d m;
  m.topLeftCorner<3, 3>() = Eigen::Matrix3d::Identity() + s * s.transpose() / (1.0 + q.x4);
  m.topRightCorner<3, 1>() = s;
  m.bottomLeftCorner<1, 3>() = s.transpose();
  m(3, 3) = q.x4;
  return m;
}

MinkVec apply(const Eigen::Matrix4d& m, const MinkVec& v) { return MinkVec::from(m * v.eigen()); }

std::array<Eigen::Matrix4d, 6> so31_basis() {
  std::array<Eigen::Matrix4d, 6> out;
  for (int a = 0; a < 3; ++a) {
    const int i = (a + 1) % 3, j = (a + 2) % 3;
    Eigen::Matrix4d r = Eigen::Matrix4d::Zero();
    r(j, i) = 1;
    r(i, j) = -1;
    out[a] = r;
    Eigen::Matrix4d k = Eigen::Matrix4d::Zero();
    k(a, 3) = k(3, a) = 1;
    out[3 + a] = k;
  }
  return out;
}

TangentFrame tangent_frame(const MinkVec& p) {
  const Causal c = classify(p);
  if (c == Causal::Null) throw Error("no tangent frame at an ideal point");
  const MinkVec q = normalize(p);
  // Basis of p^perp plus p itself, so projections also remove the normal part.
  MinkVec basis[4];
  double sign[4];
  basis[0] = q;
  sign[0] = c == Causal::Timelike ? -1.0 : 1.0;
  int n = 1;
  TangentFrame f{};
  int spacelike = 0;
  if (c == Causal::Spacelike) {
    const MinkVec tau = normalize(MinkVec(0, 0, 0, 1) + (q.x4 / norm2(q)) * q);
    basis[n] = tau;
    sign[n++] = -1.0;
    f.e[2] = tau;
    f.sign[2] = -1.0;
  }
  const int wanted = c == Causal::Spacelike ? 2 : 3;
  for (int k = 0; k < 3 && spacelike < wanted; ++k) {
    MinkVec v;
    if (k == 0) v = {1, 0, 0, 0};
    if (k == 1) v = {0, 1, 0, 0};
    if (k == 2) v = {0, 0, 1, 0};
    v = project_out(v, basis, sign, n);
    if (norm2(v) < 1e-6) continue;
    v = normalize(v);
    basis[n] = v;
    sign[n++] = 1.0;
    f.e[spacelike] = v;
    f.sign[spacelike] = 1.0;
    ++spacelike;
  }
  if (spacelike < wanted) throw Error("tangent frame construction failed");
  return f;
}

MinkVec HoroChart::point(const Eigen::Vector2d& s) const {
  return u_dual + s[0] * e1 + s[1] * e2 + (0.5 * (1.0 + s.squaredNorm())) * u;
}

HoroChart horo_chart(const Horosphere& h) {
  const MinkVec& u = h.u;
  const Eigen::Vector3d t(u.x1, u.x2, u.x3);
  HoroChart c;
  c.u = u;
  c.u_dual = (1.0 / (2.0 * u.x4 * u.x4)) * MinkVec(-u.x1, -u.x2, -u.x3, u.x4);
  const Eigen::Vector3d n = t.normalized();
  Eigen::Vector3d::Index k;
  n.cwiseAbs().minCoeff(&k);
  const Eigen::Vector3d a = Eigen::Vector3d::Unit(k);
  const Eigen::Vector3d e1 = n.cross(a).normalized();
  const Eigen::Vector3d e2 = n.cross(e1);
  c.e1 = {e1[0], e1[1], e1[2], 0};
  c.e2 = {e2[0], e2[1], e2[2], 0};
  return c;
}

bool CP1::is_infinite(double tol) const { return std::abs(w) <= tol * std::abs(z); }

MinkVec null_lift(const CP1& p) {
  const std::complex<double> zw = 2.0 * p.z * std::conj(p.w);
  const double a = std::norm(p.z), b = std::norm(p.w);
  if (a + b == 0.0) throw Error("degenerate vector");
  return {zw.real(), zw.imag(), b - a, a + b};
}

CP1 ideal_point(const MinkVec& v) {
  if (classify(v) != Causal::Null) throw Error("not an ideal point");
  if (v.x3 >= 0) return {{v.x1, v.x2}, v.x4 + v.x3};
  return {v.x4 - v.x3, {v.x1, -v.x2}};
}

Eigen::Matrix4d moebius_to_lorentz(const Eigen::Matrix2cd& m0) {
  const std::complex<double> det = m0.determinant();
  if (std::abs(det) == 0.0) throw Error("singular Moebius matrix");
  const Eigen::Matrix2cd m = m0 / std::sqrt(det);
  Eigen::Matrix4d out;
  for (int k = 0; k < 4; ++k) {
    const Eigen::Vector4d x = Eigen::Vector4d::Unit(k);
    Eigen::Matrix2cd h;
    h << std::complex<double>(x[3] - x[2], 0), std::complex<double>(x[0], x[1]),
        std::complex<double>(x[0], -x[1]), std::complex<double>(x[3] + x[2], 0);
    const Eigen::Matrix2cd g = m * h * m.adjoint();
    out(0, k) = g(0, 1).real();
    out(1, k) = g(0, 1).imag();
    out(2, k) = 0.5 * (g(1, 1).real() - g(0, 0).real());
    out(3, k) = 0.5 * (g(0, 0).real() + g(1, 1).real());
  }
  return out;
}

}  // namespace endlab::mink
