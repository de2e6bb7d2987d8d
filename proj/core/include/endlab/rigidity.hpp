#pragma once

// Infinitesimal rigidity operators.
//
// Compact / hyperideal surfaces: Phi maps vertex motions Z (coordinates in the
// tangent frames of PolySurface::frame) to R^E, row e being
// <u_{v,e}, Z_v> + <u_{w,e}, Z_w>, which is minus the first-order variation of
// the length of e. Psi maps angle variations to (sum_e theta_e u_{v,e})_v. With
// G the frame signature, <Phi Z, t> = Z^T G Psi t.
//
// Ideal surfaces: phi maps parallel 1-forms w_v on the horosphere charts to
// R^E / i(R^V), realized as (im i)^perp with an orthonormal basis Q; psi maps
// (R^E)_0 = ker i^T, with an exact integer basis B, to the 1-form duals.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "endlab/decor.hpp"
#include "endlab/error.hpp"
#include "endlab/polysurf.hpp"

namespace endlab {

struct OperatorBundle {
  std::string name;
  std::string domain;
  std::string codomain;
  Eigen::MatrixXd matrix;
  // Inner product on the domain (Phi, phi) or codomain (Psi, psi) side that
  // makes the pair adjoint; identity when empty.
  Eigen::VectorXd metric;
};

struct Spectrum {
  Eigen::VectorXd singular_values;  // descending, one per column (padded with zeros)
  int kernel_dim = 0;
  int rank = 0;
  double gap = 0;  // sigma_rank / sigma_{rank+1}; infinite when no small value exists
  double margin = 0;  // smallest retained sigma over the rank threshold
  Eigen::MatrixXd kernel;  // orthonormal columns
};

class IndeterminateRank : public Error {
public:
  IndeterminateRank(const std::string& what, Eigen::VectorXd spectrum)
      : Error(what), spectrum_(std::move(spectrum)) {}
  const Eigen::VectorXd& spectrum() const { return spectrum_; }

private:
  Eigen::VectorXd spectrum_;
};

// Kernel dimension with singular values below tol_rank * sigma_max treated as
// zero. Throws IndeterminateRank when the gap is below min_gap.
Spectrum kernel_dim(const OperatorBundle& b, double tol_rank = 1e-8, double min_gap = 10.0);

OperatorBundle assemble_Phi(const PolySurface& s);
OperatorBundle assemble_Psi(const PolySurface& s);

// Frame coordinates of a tangent vector and back.
Eigen::VectorXd to_frame_coords(const PolySurface& s, const std::vector<mink::MinkVec>& Z);
std::vector<mink::MinkVec> from_frame_coords(const PolySurface& s, const Eigen::VectorXd& z);

// Restrictions of the six so(3,1) generators, as columns (3V for compact and
// hyperideal surfaces, 2V one-form coordinates for ideal ones).
Eigen::MatrixXd killing_basis(const PolySurface& s);

// i : R^V -> R^E, (i a)_e = a_v + a_w.
Eigen::MatrixXd vertex_to_edge(const CellSurface& s);
// Orthonormal basis of (im i)^perp; throws unless i is injective.
Eigen::MatrixXd quotient_basis(const CellSurface& s);
// Integer basis of ker i^T, exact in floating point.
Eigen::MatrixXd sum_zero_basis(const CellSurface& s);

// Link-point chart coordinates: row e, columns 2v, 2v+1.
Eigen::MatrixXd link_matrix(const PolySurface& s);
OperatorBundle assemble_phi_ideal(const PolySurface& s);
OperatorBundle assemble_psi_ideal(const PolySurface& s);
// Constants c with i(c) closest to -A w, turning 1-forms into affine functions.
Eigen::VectorXd affine_constants(const PolySurface& s, const Eigen::VectorXd& w);

struct AdjointnessResult {
  double max_relative = 0;  // max |<Phi x, y> - <x, Psi y>| / (|x| |y|)
  int pairs = 0;
};
AdjointnessResult check_adjointness(const PolySurface& s, std::uint64_t seed, int pairs = 100);

struct KernelDecoration {
  std::string verdict;
  TightReport tight;
  PakReport pak;
};

struct RigidityReport {
  VertexKind kind = VertexKind::Compact;
  OperatorBundle op;
  Spectrum spectrum;
  int trivial_rank = 0;
  int residual_dim = 0;
  double span_residual = 0;  // distance of the trivial motions from the kernel
  AdjointnessResult adjoint;
  std::vector<KernelDecoration> decorations;
  std::vector<std::string> notes;
};

RigidityReport projective_rigidity_verdict(const PolySurface& s, double tol_rank = 1e-8, std::uint64_t seed = 0);

}  // namespace endlab
