#pragma once

// Fundamental groups of closed oriented surfaces and Dehn's algorithm.

#include <string>
#include <vector>

#include "endlab/cellsurf.hpp"

namespace endlab {

// Letter k+1 is generator k, -(k+1) its inverse.
using Word = std::vector<int>;

Word inverse(const Word& w);
Word free_reduce(const Word& w);
// Lower-case a, b, c, ... for generators 0, 1, 2, ...; upper case for inverses.
std::string to_string(const Word& w);
Word parse_word(const std::string& s);

class SurfaceGroup {
public:
  // <a1, b1, ..., ag, bg | [a1,b1]...[ag,bg]>; generator 2i is a_i, 2i+1 is b_i.
  static SurfaceGroup standard(int genus);

  // One relator of length 4g in which each of the 2g generators occurs once
  // with each sign (the boundary word of a one-vertex polygon).
  SurfaceGroup(int genus, Word relator);

  int genus() const { return genus_; }
  const Word& relator() const { return relator_; }

  // Genus 0: trivial group; genus 1: abelian; genus >= 2: Dehn's algorithm.
  bool is_trivial(const Word& w) const;
  // Dehn-reduced cyclic representative (genus >= 2 only).
  Word dehn_reduce(const Word& w) const;

private:
  int genus_;
  Word relator_;
  std::vector<Word> symmetrized_;
};

// Words of surface-group elements carried by edges: tree-cotree decomposition
// with a breadth-first spanning tree from vertex 0 and dual tree from face 0.
class EdgeLabeling {
public:
  explicit EdgeLabeling(const CellSurface& s);

  const SurfaceGroup& group() const { return group_; }
  const Word& label(int edge) const { return labels_[edge]; }
  Word dart_word(int dart) const;
  Word path_word(const std::vector<int>& darts) const;
  bool contractible(const std::vector<int>& closed_darts) const;

private:
  SurfaceGroup group_;
  std::vector<Word> labels_;
};

}  // namespace endlab
