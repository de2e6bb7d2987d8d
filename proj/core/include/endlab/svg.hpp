#pragma once

#include <string>
#include <vector>

#include "endlab/polysurf.hpp"

namespace endlab {

struct SvgOptions {
  int pixels = 800;
  double margin = 0.05;         // fraction of the drawing extent
  double tiny_radius = 1e-6;    // relative to the extent; drawn as a marker
};

// One element per face circle, in face order. Interior disks are drawn with
// class "disk", exterior ones (negative radius) with class "exterior", lines
// with class "line" and degenerate circles with class "marker".
std::string render_svg(const std::vector<GaussCircle>& circles, const SvgOptions& opt = {});

}  // namespace endlab
