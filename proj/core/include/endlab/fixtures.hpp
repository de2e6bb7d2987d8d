#pragma once

// Reference surfaces used by the tests, the benchmarks and the shipped data
// files. Everything here is deterministic; random fixtures are functions of
// their seed only.

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "endlab/cellsurf.hpp"
#include "endlab/polysurf.hpp"

namespace endlab::fixtures {

// Boundary complexes of the Platonic solids (triangulated ones) and the cube.
CellSurface tetrahedron();
CellSurface octahedron();
CellSurface icosahedron();
CellSurface cube();

// Genus 2: cone over an octagon with side word a b A B c d C D, every side cut
// into three segments. 10 vertices, 36 edges, 24 triangles; vertex 0 is the
// cone point and vertex 1 the image of the octagon corners.
CellSurface genus2();
// genus2() with face 0 subdivided by an extra vertex: 11, 39, 26.
CellSurface genus2_stellar();
// Closed non-contractible dart path on genus2(): cone point to the first
// corner and back through the second one (the generator a).
std::vector<int> genus2_handle_loop();

PolySurface compact_tetrahedron(double circumradius = 1.0);
PolySurface ideal_octahedron();
// Ideal vertices 0, 1, inf, e^{i pi/3}.
PolySurface ideal_tetrahedron();
// Regular tetrahedron with hyperideal vertices whose edges still cross H^3.
PolySurface hyperideal_tetrahedron();

// Convex compact surfaces: perturbed icosahedra, octahedra and hexahedra with
// planar quadrilateral faces, moved by a random isometry.
PolySurface random_compact(std::uint64_t seed);
// Perturbed ideal octahedra and icosahedra with random horosphere scales.
PolySurface random_ideal(std::uint64_t seed);

// Random orthochronous Lorentz transformation with bounded rapidities.
Eigen::Matrix4d random_isometry(std::uint64_t seed, double max_rapidity = 0.5);

}  // namespace endlab::fixtures
