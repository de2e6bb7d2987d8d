#pragma once

// Convex polyhedral surfaces in H^3 and its de Sitter extension.
//
// Vertex representatives are normalized with x4 > 0: compact vertices lie on
// the hyperboloid, ideal vertices are horosphere vectors, hyperideal and
// de Sitter vertices have <x,x> = 1. Face normals are unit and point away from
// the body, so the body lies in {<x,n> <= 0}.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "endlab/cellsurf.hpp"
#include "endlab/decor.hpp"
#include "endlab/mink.hpp"

namespace endlab {

enum class VertexKind { Compact, Ideal, Hyperideal, DeSitter };
std::string_view to_string(VertexKind k);

struct VertexGeom {
  VertexKind kind = VertexKind::Compact;
  mink::MinkVec x;
};

struct BuildOptions {
  double tol_plane = 1e-8;
  bool check_convexity = true;
};

class PolySurface {
public:
  // Throws on non-planar faces, locally concave structural edges, hyperideal
  // edges missing H^3, mixed vertex kinds, or vertex data of the wrong type.
  static PolySurface build(const CellSurface& base, std::vector<VertexGeom> geom, const BuildOptions& opt = {});

  const CellSurface& base() const { return base_; }
  // base() with every face fanned into triangles from its lowest-index vertex;
  // edges of base() keep their ids, diagonals follow.
  const CellSurface& tri() const { return tri_; }
  bool is_diagonal(int e) const { return e >= base_.num_edges(); }
  VertexKind kind() const { return kind_; }
  const VertexGeom& vertex(int v) const { return geom_[v]; }
  const std::vector<VertexGeom>& vertices() const { return geom_; }
  int num_vertices() const { return tri_.num_vertices(); }
  int num_edges() const { return tri_.num_edges(); }

  // Unit normal of triangle t of tri(); timelike for de Sitter surfaces.
  const mink::MinkVec& tri_normal(int t) const { return tri_normals_[t]; }
  // Normal of face f of base().
  const mink::MinkVec& face_normal(int f) const { return face_normals_[f]; }

  // Per edge of tri(): decorated length for ideal surfaces (a representative
  // modulo i(R^V)), hyperbolic distance otherwise; de Sitter surfaces use the
  // spacelike distance acos<v,w>.
  const std::vector<double>& edge_lengths() const { return lengths_; }
  // Exterior dihedral angle per edge of tri(); 0 on diagonals.
  const std::vector<double>& dihedral_angles() const { return angles_; }

  // Link data at tail(d) along edge(d): a unit tangent vector pointing toward
  // the neighbor (compact, hyperideal), or chart coordinates of the point where
  // the edge crosses the horosphere (ideal).
  const mink::MinkVec& link_tangent(int dart) const { return link_tangent_[dart]; }
  const Eigen::Vector2d& link_chart(int dart) const { return link_chart_[dart]; }
  const mink::TangentFrame& frame(int v) const { return frames_[v]; }
  const mink::HoroChart& chart(int v) const { return charts_[v]; }

  // Tolerance-level findings from build (flat structural edges, planarity margins).
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }
  double min_convexity_margin() const { return min_margin_; }

  bool operator==(const PolySurface&) const = delete;

private:
  PolySurface(CellSurface base, CellSurface tri) : base_(std::move(base)), tri_(std::move(tri)) {}

  CellSurface base_;
  CellSurface tri_;
  VertexKind kind_ = VertexKind::Compact;
  std::vector<VertexGeom> geom_;
  std::vector<mink::MinkVec> tri_normals_, face_normals_;
  std::vector<double> lengths_, angles_;
  std::vector<mink::MinkVec> link_tangent_;
  std::vector<Eigen::Vector2d> link_chart_;
  std::vector<mink::TangentFrame> frames_;
  std::vector<mink::HoroChart> charts_;
  std::vector<std::string> diagnostics_;
  double min_margin_ = 0;
  bool convexity_checked_ = false;

  friend PolySurface dual_surface(const PolySurface&);
};

// Affine-chart representative with x4 = 1.
mink::MinkVec affine(const mink::MinkVec& x);

// Poincare dual: vertices are the face normals, combinatorics the dual cell
// structure of base(). Compact and hyperideal input gives a de Sitter surface;
// de Sitter input gives back a compact surface.
PolySurface dual_surface(const PolySurface& s);

// Per-dart first-order motion of tail(d) along edge(d); edge e is oriented
// from tail(2e) when the value at dart 2e exceeds tol and toward it when below
// -tol. With certified, the two endpoint values must cancel up to tol
// ("not length-preserving" otherwise).
Decoration decoration_from_values(const CellSurface& s, const std::vector<double>& dart_values, double tol,
                                  bool certified);

// Z[v] tangent at vertex v (compact, hyperideal).
Decoration decoration_from_deformation(const PolySurface& s, const std::vector<mink::MinkVec>& Z,
                                       bool certified, double tol_rel = 1e-9);

// Ideal case: per-vertex affine functions f_v(s) = c_v + w_v . s on the horosphere charts.
Decoration decoration_from_affine(const PolySurface& s, const std::vector<double>& c,
                                  const std::vector<Eigen::Vector2d>& w, bool certified, double tol_rel = 1e-9);

// Boundary at infinity of a face plane in the CP^1 chart, the closure of
// {z : <N(z), n> > 0}: a disk (radius > 0), the exterior of a disk
// (radius < 0), or a half-plane {Re(conj(normal) z) > offset}.
struct GaussCircle {
  bool is_line = false;
  std::complex<double> center{0.0};
  double radius = 0;
  std::complex<double> normal{0.0};
  double offset = 0;
};

GaussCircle gauss_circle(const mink::MinkVec& face_normal);
std::vector<GaussCircle> gauss_circles(const PolySurface& s);
// Angle between the inward normals of two Gauss disks where their boundaries meet.
double intersection_angle(const GaussCircle& a, const GaussCircle& b);

}  // namespace endlab
