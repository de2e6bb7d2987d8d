#include "endlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace endlab {

std::string render_svg(const std::vector<GaussCircle>& circles, const SvgOptions& opt) {
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_x;
  for (const auto& c : circles) {
    if (c.is_line) continue;
    const double r = std::abs(c.radius);
    lo_x = std::min(lo_x, c.center.real() - r);
    hi_x = std::max(hi_x, c.center.real() + r);
    lo_y = std::min(lo_y, c.center.imag() - r);
    hi_y = std::max(hi_y, c.center.imag() + r);
  }
  if (!(lo_x < hi_x)) lo_x = lo_y = -1, hi_x = hi_y = 1;
  double extent = std::max(hi_x - lo_x, hi_y - lo_y);
  if (extent <= 0) extent = 1;
  const double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
  const double half = 0.5 * extent * (1 + 2 * opt.margin);
  const double scale = opt.pixels / (2 * half);
  // The y axis is flipped so the picture has the usual orientation.
  auto px = [&](double x) { return (x - cx + half) * scale; };
  auto py = [&](double y) { return (cy + half - y) * scale; };
  auto num = [](double v) { return fmt::format("{:.6f}", v); };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n"
      "<rect width=\"{0}\" height=\"{0}\" fill=\"white\"/>\n",
      opt.pixels);
  for (std::size_t f = 0; f < circles.size(); ++f) {
    const auto& c = circles[f];
    if (c.is_line) {
      // Re(conj(normal) z) = offset; clip the line to the drawing square.
      const std::complex<double> n = c.normal / std::abs(c.normal);
      const std::complex<double> base = n * (c.offset / std::abs(c.normal));
      const std::complex<double> dir = n * std::complex<double>(0, 1);
      const std::complex<double> a = base - 4 * half * dir, b = base + 4 * half * dir;
      out += fmt::format("<line class=\"line\" data-face=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
                         f, num(px(a.real())), num(py(a.imag())), num(px(b.real())), num(py(b.imag())));
    } else if (std::abs(c.radius) < opt.tiny_radius * extent) {
      out += fmt::format("<circle class=\"marker\" data-face=\"{}\" cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"red\"/>\n", f,
                         num(px(c.center.real())), num(py(c.center.imag())));
    } else {
      out += fmt::format(
          "<circle class=\"{}\" data-face=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"{}\"/>\n",
          c.radius > 0 ? "disk" : "exterior", f, num(px(c.center.real())), num(py(c.center.imag())),
          num(std::abs(c.radius) * scale), c.radius > 0 ? "black" : "blue");
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace endlab
