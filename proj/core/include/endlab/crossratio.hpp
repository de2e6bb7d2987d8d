#pragma once

// Cross-ratio coordinates of triangulated surfaces with vertices in CP^1.
//
// For the edge of dart d from i to j, with k the third vertex of face(d) and
// l the third vertex of face(twin d), cr = (k-i)(l-j) / ((k-j)(l-i)); the value
// does not depend on the dart chosen. Faces are read clockwise in the chart, so
// that arg cr is the interior dihedral angle on convex surfaces; a surface of
// the opposite orientation is read in the conjugate chart.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "endlab/cellsurf.hpp"
#include "endlab/mink.hpp"

namespace endlab {

class PolySurface;

using cplx = std::complex<double>;

// Throws "coincident points" when two of the four points agree.
cplx edge_cross_ratio(const mink::CP1& vi, const mink::CP1& vj, const mink::CP1& vk, const mink::CP1& vl);

struct CrossRatioAssignment {
  CellSurface surface;
  std::vector<cplx> cr;  // per edge
  bool conjugate_chart = false;
};

// Throws unless the surface is triangulated and no cr lies in {0, 1, inf}.
CrossRatioAssignment make_assignment(const CellSurface& s, std::vector<cplx> cr);
CrossRatioAssignment from_ideal_surface(const PolySurface& s);

// At each vertex, with zeta_k = -cr of the k-th edge in rotation order:
// |prod zeta - 1| and |zeta_1 + zeta_1 zeta_2 + ... + zeta_1...zeta_n|, the
// latter maximized over the starting edge.
struct VertexResidual {
  int vertex = 0;
  double product = 0;
  double sum = 0;
};
std::vector<VertexResidual> vertex_conditions(const CrossRatioAssignment& a);

struct ShearAngle {
  double shear = 0;  // log |cr|
  double angle = 0;  // arg cr, the interior dihedral angle on convex fixtures
};
std::vector<ShearAngle> shear_angle_split(const CrossRatioAssignment& a);

// Developing map along a closed dart path, in the frame of the first dart
// (which sends 0, inf, 1 to its tail, head and left third vertex). The result
// has determinant 1; it is defined up to sign. Throws "open path".
Eigen::Matrix2cd holonomy_loop(const CrossRatioAssignment& a, const std::vector<int>& loop);
// Distance from +-identity after scaling to determinant 1.
double off_identity(const Eigen::Matrix2cd& m);
// Link of v: the closed path through the edges opposite v.
std::vector<int> vertex_loop(const CellSurface& s, int v);

struct SolveOptions {
  std::uint64_t seed = 1;
  int max_iterations = 200;
  double tol = 1e-12;
  double spread = 0.05;  // random perturbation of the start
};
struct SolveResult {
  CrossRatioAssignment assignment;
  bool converged = false;
  int iterations = 0;
  double residual = 0;
};
// Damped Gauss-Newton with minimum-norm steps for the vertex conditions,
// started from a seeded perturbation of a per-vertex symmetric guess.
SolveResult solve_vertex_conditions(const CellSurface& s, const SolveOptions& opt = {});

}  // namespace endlab
