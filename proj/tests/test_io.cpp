#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "endlab/error.hpp"
#include "endlab/fixtures.hpp"
#include "endlab/io.hpp"

using namespace endlab;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path data(const std::string& name) { return std::filesystem::path(ENDLAB_DATA_DIR) / name; }

struct Where {
  std::size_t line = 0, column = 0;
  std::string what;
};

template <class F>
Where parse_error(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return {e.line(), e.column(), e.what()};
  }
  FAIL("no ParseError");
  return {};
}

const char* kTriangleSphere =
    "surf v1\n"
    "v 0\nv 1\nv 2\n"
    "e 0 0 1\ne 1 1 2\ne 2 2 0\n"
    "f 0 +0 +1 +2\n"
    "f 1 -2 -1 -0\n";

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("shipped fixtures round-trip byte for byte") {
    int files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(ENDLAB_DATA_DIR)) {
      const std::string text = slurp(entry.path());
      const std::string fmt = io::format_of(text);
      CAPTURE(entry.path().filename().string());
      if (fmt == "surf") {
        CHECK(io::write_surf(io::parse_surf(text)) == text);
      } else if (fmt == "poly") {
        const auto p = io::parse_poly(text);
        CHECK(io::write_poly(p.base, p.geom) == text);
      } else if (fmt == "cr") {
        CHECK(io::write_cr(io::parse_cr(text)) == text);
      } else {
        FAIL("unexpected format " << fmt);
      }
      ++files;
    }
    CHECK(files >= 10);
  }

  TEST_CASE("in-memory round trips") {
    const CellSurface g = fixtures::genus2();
    const CellSurface back = io::parse_surf(io::write_surf(g));
    CHECK(back.num_vertices() == g.num_vertices());
    CHECK(back.num_edges() == g.num_edges());
    for (int f = 0; f < g.num_faces(); ++f) CHECK(back.face_darts(f) == g.face_darts(f));

    const PolySurface s = fixtures::random_compact(1);
    const auto p = io::parse_poly(io::write_poly(s.base(), s.vertices()));
    for (int v = 0; v < s.num_vertices(); ++v) {
      CHECK(p.geom[v].kind == s.vertex(v).kind);
      CHECK(p.geom[v].x.eigen() == s.vertex(v).x.eigen());  // %.17g is exact
    }

    Decoration d = Decoration::trivial(g);
    d.state[3] = EdgeState::Forward;
    d.state[20] = EdgeState::Backward;
    const std::string text = io::write_decoration(d);
    CHECK(io::format_of(text) == "decor");
    CHECK(io::parse_decoration(text, g).state == d.state);
    CHECK(io::number(0.1) == "0.10000000000000001");
  }

  TEST_CASE("comments and blank lines") {
    const std::string text = std::string("# a sphere made of two triangles\n") + kTriangleSphere + "\n# end\n";
    CHECK(io::parse_surf(text).num_faces() == 2);
  }

  TEST_CASE("errors carry line and column") {
    Where w = parse_error([] { io::format_of("surf\nv 0\n"); });
    CHECK(w.line == 1);

    w = parse_error([] { io::parse_surf("surf v1\nv 0\nv 2\n"); });
    CHECK(w.line == 3);
    CHECK(w.column == 3);

    w = parse_error([] { io::parse_surf("surf v1\nv 0\nvertex 1\n"); });
    CHECK(w.line == 3);
    CHECK(w.column == 1);

    w = parse_error([] { io::parse_surf("surf v1\nv 0\nv 1\ne 0 0 x\n"); });
    CHECK(w.line == 4);
    CHECK(w.column == 7);

    w = parse_error([] { io::parse_poly("poly v1" + std::string(kTriangleSphere).substr(7) + "geom 0 compact 0 0 0 1\n" +
                                        "geom 1 compact 0 0 0 1\ngeom 1 compact 0 0 0 1\n"); });
    CHECK(w.line == 12);
    CHECK(w.what.find("line 12, column") == 0);

    // A face that does not close up is reported after the last line.
    w = parse_error([] { io::parse_surf("surf v1\nv 0\nv 1\nv 2\ne 0 0 1\ne 1 1 2\ne 2 2 0\nf 0 +0 +2 +1\nf 1 -2 -1 -0\n"); });
    CHECK(w.line == 10);
    CHECK(w.column == 1);
  }

  TEST_CASE("truncated files") {
    const std::string full = slurp(data("thurston_tetrahedron.surf"));
    const std::string cut = full.substr(0, full.rfind("theta"));
    const auto lines = static_cast<std::size_t>(std::count(cut.begin(), cut.end(), '\n'));
    const Where w = parse_error([&] { io::parse_surf(cut); });
    CHECK(w.line == lines + 1);
    CHECK(w.column == 1);

    // Cut before the last coordinate.
    const std::string poly = slurp(data("compact_tetrahedron.poly"));
    const std::string mid = poly.substr(0, poly.rfind(' '));
    CHECK_THROWS_AS(io::parse_poly(mid), ParseError);

    CHECK_THROWS_AS(io::parse_cr(slurp(data("ideal_octahedron.cr")).substr(0, 60)), ParseError);
    CHECK_THROWS_AS(io::format_of(""), ParseError);
  }

  TEST_CASE("format mismatch") {
    CHECK_THROWS_AS(io::parse_poly(kTriangleSphere), ParseError);
    CHECK_THROWS_AS(io::parse_surf(slurp(data("ideal_octahedron.cr"))), ParseError);
    const CellSurface g = fixtures::genus2();
    CHECK_THROWS_AS(io::parse_decoration("decor v1\no 99 +\n", g), ParseError);
    CHECK_THROWS_AS(io::parse_decoration("decor v1\no 1 *\n", g), ParseError);
  }
}
