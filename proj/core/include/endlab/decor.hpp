#pragma once

// Partial edge orientations of triangulated surfaces and orientation-change
// counting at vertices. Corner values are kept in half-units (0, 1, 2) so all
// bookkeeping is exact integer arithmetic.

#include <string>
#include <vector>

#include "endlab/cellsurf.hpp"

namespace endlab {

enum class EdgeState : signed char { Unoriented = 0, Forward = 1, Backward = -1 };

struct Decoration {
  std::vector<EdgeState> state;  // Forward: along dart 2e

  static Decoration trivial(const CellSurface& s) {
    return {std::vector<EdgeState>(s.num_edges(), EdgeState::Unoriented)};
  }
  bool is_trivial() const;
  Decoration reversed() const;
};

// Half-unit change at the corner of face(d) at tail(d), indexed by dart d.
std::vector<int> corner_changes(const CellSurface& s, const Decoration& d);

struct TightVertex {
  int vertex = 0;
  int changes_half = 0;  // total change in half-units
  int limit_half = 4;    // 4, or 2 at vertices with many or adjacent unoriented edges
  bool ok() const { return changes_half <= limit_half; }
};

struct TightReport {
  std::vector<TightVertex> vertices;
  bool tight() const;
  std::vector<int> offending() const;
};

TightReport is_tight(const CellSurface& s, const Decoration& d);

struct PakComponent {
  std::vector<int> faces;
  int V = 0, E = 0, F = 0;  // V counts a pinched vertex once per fan
  int boundary_edges = 0;  // e_b
  int changes_half = 0;    // 2c
  int boundary_cycles = 0; // b
  int euler() const { return V - E + F; }
  int bound() const { return 2 * V - boundary_edges; }
  int twice_genus() const { return 2 - euler() - boundary_cycles; }
  bool identities_hold() const {
    return 3 * F == 2 * E - boundary_edges && 2 * V - boundary_edges == F + 2 * euler();
  }
  bool proof_covered() const { return euler() < 0; }
};

struct PakReport {
  std::vector<PakComponent> components;
  bool all_covered() const;
};

// Drops faces with no oriented edge and counts each edge-connected component.
PakReport pak_report(const CellSurface& s, const Decoration& d);

// "trivial", "not tight", "tight, proof-covered" or
// "tight-by-definition, outside proof coverage".
std::string classify_decoration(const CellSurface& s, const Decoration& d);

}  // namespace endlab
