#pragma once

// Angle conditions on weighted graphs: circle-pattern admissibility and the
// hyperideal conditions on the dual graph. Cycle searches are bounded by
// max_cycle edges, so a pass means "pass up to max_cycle".

#include <string>
#include <vector>

#include "endlab/cellsurf.hpp"

namespace endlab {

struct AdmissibleOptions {
  int max_cycle = 12;
  bool simple_cycles_only = true;
  double tol_angle = 1e-9;
};

struct Violation {
  std::string kind;        // "face-sum", "cycle", "dual-cycle", "dual-path"
  int face = -1;           // face-sum: the face; dual-path: the vertex whose dual face is used
  std::vector<int> darts;  // witness path in the surface the condition lives on
  double sum = 0;
  double bound = 0;        // the sum must exceed (or for face sums, equal) this
};

struct AdmissibleReport {
  std::vector<double> face_sums;
  std::vector<Violation> violations;
  long cycles_checked = 0;
  int max_cycle = 0;
  bool simple_cycles_only = true;
  bool pass() const { return violations.empty(); }
};

// Face sums equal 2pi; contractible cycles not contained in a face boundary sum
// to more than 2pi.
AdmissibleReport validate_admissible(const CellSurface& s, const AdmissibleOptions& opt = {});

// On the dual graph: contractible closed paths (dual faces included) sum to
// more than 2pi; paths between two vertices of a dual face that are homotopic
// into the face, other than its own boundary arcs, sum to more than pi.
AdmissibleReport validate_hyperideal(const CellSurface& s, const AdmissibleOptions& opt = {});

// Closed walks of at most max_len edges with weight sum <= max_sum, no
// immediate backtracking, each cyclic class once (up to rotation and reversal).
// With simple = true only cycles without repeated vertices are produced.
std::vector<std::vector<int>> enumerate_cycles(const CellSurface& s, const std::vector<double>& w,
                                               int max_len, double max_sum, bool simple);

}  // namespace endlab
