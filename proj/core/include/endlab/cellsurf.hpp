#pragma once

// Closed oriented surfaces as half-edge structures.
//
// Edge e owns darts 2e (first endpoint to second) and 2e+1; each face is a
// cycle of darts with the face on the left. Loops and multi-edges are allowed.

#include <array>
#include <optional>
#include <vector>

namespace endlab {

class CellSurface {
public:
  using EdgeEnds = std::array<int, 2>;

  // Faces are dart cycles. Throws unless the result is a closed, connected,
  // oriented surface (every dart in exactly one face, vertex links are cycles).
  static CellSurface build(int num_vertices, std::vector<EdgeEnds> edges,
                           std::vector<std::vector<int>> face_darts);

  // Faces given as vertex cycles; each unordered vertex pair becomes one edge,
  // so no multi-edges.
  static CellSurface from_polygons(int num_vertices, const std::vector<std::vector<int>>& polygons);

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_faces() const { return static_cast<int>(faces_.size()); }
  int num_darts() const { return 2 * num_edges(); }

  static constexpr int twin(int d) { return d ^ 1; }
  static constexpr int edge_of(int d) { return d >> 1; }
  static constexpr int dart(int e, bool forward) { return forward ? 2 * e : 2 * e + 1; }

  const EdgeEnds& edge(int e) const { return edges_[e]; }
  int tail(int d) const { return edges_[d >> 1][d & 1]; }
  int head(int d) const { return edges_[d >> 1][(d & 1) ^ 1]; }
  int next(int d) const { return next_[d]; }
  int prev(int d) const { return prev_[d]; }
  int face(int d) const { return face_[d]; }
  // Rotation about tail(d).
  int sigma(int d) const { return next_[twin(d)]; }

  const std::vector<int>& face_darts(int f) const { return faces_[f]; }
  int face_degree(int f) const { return static_cast<int>(faces_[f].size()); }
  // Outgoing darts of v in sigma order, starting from the lowest dart.
  const std::vector<int>& star(int v) const { return stars_[v]; }

  int euler_characteristic() const { return num_vertices() - num_edges() + num_faces(); }
  int genus() const { return (2 - euler_characteristic()) / 2; }
  bool is_triangulated() const;

  // Vertices become faces and vice versa; edge ids are kept. Dart d of the dual
  // runs from face(d) to face(twin d). Applying dual() twice returns the original.
  CellSurface dual() const;

  bool has_weights() const { return theta_.has_value(); }
  const std::vector<double>& weights() const;
  // Throws "weight out of (0,π)" unless every value lies in the open interval.
  CellSurface with_weights(std::vector<double> theta) const;
  CellSurface without_weights() const;

  bool operator==(const CellSurface& o) const;

private:
  CellSurface() = default;
  void finish();

  int num_vertices_ = 0;
  std::vector<EdgeEnds> edges_;
  std::vector<std::vector<int>> faces_;
  std::vector<int> next_, prev_, face_;
  std::vector<std::vector<int>> stars_;
  std::optional<std::vector<double>> theta_;
};

// Bipartite circle-pattern graph of a triangulated nerve: vertices V then F,
// edge d (one per corner) joins tail(d) to the vertex of face(d), one
// quadrilateral per nerve edge, all weights pi/2.
CellSurface thurston_pattern(const CellSurface& nerve);

}  // namespace endlab
