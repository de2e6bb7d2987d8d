#pragma once

// Line-oriented text formats. Each file starts with a "<format> v1" header;
// '#' starts a comment. Ids are consecutive from 0. Faces list signed edge
// references: +k is dart 2k, -k is dart 2k+1.
//
//   surf v1   v <id> | e <id> <v> <v> | f <id> <±e>... | theta <e> <rad>
//   poly v1   surf keys plus geom <v> compact|ideal|hyper|desitter x1 x2 x3 x4
//   cr v1     v, e, f as in surf plus cr <e> <re> <im>
//   decor v1  o <e> <+|->   (unlisted edges are unoriented)

#include <string>
#include <string_view>
#include <vector>

#include "endlab/cellsurf.hpp"
#include "endlab/crossratio.hpp"
#include "endlab/decor.hpp"
#include "endlab/polysurf.hpp"

namespace endlab::io {

// Header of a document ("surf", "poly", ...); throws ParseError if missing.
std::string format_of(std::string_view text);

CellSurface parse_surf(std::string_view text);
std::string write_surf(const CellSurface& s);

struct PolyData {
  CellSurface base;
  std::vector<VertexGeom> geom;
};
PolyData parse_poly(std::string_view text);
std::string write_poly(const CellSurface& base, const std::vector<VertexGeom>& geom);

CrossRatioAssignment parse_cr(std::string_view text);
std::string write_cr(const CrossRatioAssignment& a);

Decoration parse_decoration(std::string_view text, const CellSurface& s);
std::string write_decoration(const Decoration& d);

// Shortest round-trip representation is not used; numbers are always %.17g.
std::string number(double x);

}  // namespace endlab::io
