// Writes the shipped data files. The output is a pure function of the code,
// so data/ can be regenerated and compared byte for byte.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include <fmt/format.h>

#include "endlab/crossratio.hpp"
#include "endlab/error.hpp"
#include "endlab/fixtures.hpp"
#include "endlab/io.hpp"

namespace fs = std::filesystem;
using namespace endlab;

namespace {

void write(const fs::path& dir, const std::string& name, const std::string& text) {
  std::ofstream f(dir / name, std::ios::binary);
  if (!f) throw Error("cannot write " + (dir / name).string());
  f << text;
}

std::string poly(const PolySurface& s) { return io::write_poly(s.base(), s.vertices()); }

CellSurface uniform(const CellSurface& s, double theta) {
  return s.with_weights(std::vector<double>(s.num_edges(), theta));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2 || argv[1][0] == '-') {
    std::cerr << "usage: make_fixtures <output-dir>\n";
    return 2;
  }
  const fs::path dir = argv[1];
  try {
    fs::create_directories(dir);
    const double pi = std::numbers::pi;
    write(dir, "tetrahedron.surf", io::write_surf(fixtures::tetrahedron()));
    write(dir, "genus2.surf", io::write_surf(fixtures::genus2()));
    write(dir, "genus2_stellar.surf", io::write_surf(fixtures::genus2_stellar()));
    {
      // Uniform 2pi/3: the old boundary of the subdivided face is a short contractible cycle.
      const CellSurface st = fixtures::genus2_stellar();
      write(dir, "genus2_stellar_uniform.surf",
            io::write_surf(st.with_weights(std::vector<double>(st.num_edges(), 2 * pi / 3))));
    }
    write(dir, "thurston_tetrahedron.surf", io::write_surf(thurston_pattern(fixtures::tetrahedron())));
    write(dir, "thurston_genus2.surf", io::write_surf(thurston_pattern(fixtures::genus2())));
    write(dir, "octahedron_dual_right.surf", io::write_surf(uniform(fixtures::octahedron().dual(), pi / 2)));

    // One face sum pushed off 2pi.
    const CellSurface t = thurston_pattern(fixtures::tetrahedron());
    std::vector<double> w = t.weights();
    w[t.face_darts(0)[0] >> 1] += 0.1;
    write(dir, "thurston_perturbed.surf", io::write_surf(t.with_weights(w)));

    write(dir, "compact_tetrahedron.poly", poly(fixtures::compact_tetrahedron()));
    write(dir, "ideal_octahedron.poly", poly(fixtures::ideal_octahedron()));
    write(dir, "ideal_tetrahedron.poly", poly(fixtures::ideal_tetrahedron()));
    write(dir, "hyperideal_tetrahedron.poly", poly(fixtures::hyperideal_tetrahedron()));
    for (int seed = 1; seed <= 3; ++seed) {
      write(dir, fmt::format("random_compact_{}.poly", seed), poly(fixtures::random_compact(seed)));
      write(dir, fmt::format("random_ideal_{}.poly", seed), poly(fixtures::random_ideal(seed)));
    }
    write(dir, "ideal_octahedron.cr", io::write_cr(from_ideal_surface(fixtures::ideal_octahedron())));
  } catch (const std::exception& e) {
    std::cerr << "make_fixtures: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
