#include <doctest.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

#include "endlab/decor.hpp"
#include "endlab/fixtures.hpp"
#include "oracles.hpp"

using namespace endlab;

namespace {

EdgeState state_along(int dart, int s) {
  // s is relative to the dart; Forward means along dart 2e.
  return static_cast<EdgeState>((dart & 1) == 0 ? s : -s);
}

Decoration random_decoration(const CellSurface& s, std::mt19937_64& rng) {
  static constexpr EdgeState kStates[] = {EdgeState::Unoriented, EdgeState::Forward, EdgeState::Backward};
  Decoration d = Decoration::trivial(s);
  for (auto& e : d.state) e = kStates[rng() % 3];
  return d;
}

int total(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

}  // namespace

TEST_SUITE("decor") {
  TEST_CASE("27-case triangle table") {
    const CellSurface t = fixtures::tetrahedron();
    const std::vector<int> f0 = t.face_darts(0);
    int nontrivial = 0;
    for (int code = 0; code < 27; ++code) {
      std::array<int, 3> st{};
      Decoration d = Decoration::trivial(t);
      for (int k = 0, c = code; k < 3; ++k, c /= 3) {
        st[k] = c % 3 - 1;
        d.state[CellSurface::edge_of(f0[k])] = state_along(f0[k], st[k]);
      }
      const auto expected = oracle::triangle_corners(st);
      const auto got = corner_changes(t, d);
      int sum = 0;
      for (int k = 0; k < 3; ++k) {
        CHECK(got[f0[k]] == expected[k]);
        sum += got[f0[k]];
      }
      if (st != std::array<int, 3>{0, 0, 0}) {
        ++nontrivial;
        CHECK(sum >= 2);  // at least one whole change per touched triangle
      } else {
        CHECK(sum == 0);
      }
    }
    CHECK(nontrivial == 26);
  }

  TEST_CASE("trivial decoration") {
    const CellSurface g = fixtures::genus2();
    const Decoration d = Decoration::trivial(g);
    CHECK(total(corner_changes(g, d)) == 0);
    CHECK(is_tight(g, d).tight());
    CHECK(pak_report(g, d).components.empty());
    CHECK(classify_decoration(g, d) == "trivial");
  }

  TEST_CASE("single oriented edge on the genus-2 fixture") {
    const CellSurface g = fixtures::genus2();
    // Cone edge to the first cut point: its two triangles have four distinct vertices.
    const int e = 13;
    Decoration d = Decoration::trivial(g);
    d.state[e] = EdgeState::Forward;
    const auto corners = corner_changes(g, d);
    const auto [v, w] = g.edge(e);
    int nonzero = 0, at_v = 0, at_w = 0;
    for (int x = 0; x < g.num_darts(); ++x) {
      if (corners[x] == 0) continue;
      CHECK(corners[x] == 1);
      ++nonzero;
      at_v += g.tail(x) == v;
      at_w += g.tail(x) == w;
    }
    CHECK(nonzero == 4);
    CHECK(at_v == 2);
    CHECK(at_w == 2);

    const auto rep = pak_report(g, d);
    REQUIRE(rep.components.size() == 1);
    const PakComponent& c = rep.components[0];
    CHECK(c.F == 2);
    CHECK(c.boundary_edges == 4);
    CHECK(c.V == 4);
    CHECK(c.changes_half == 4);
    CHECK(c.bound() == 4);
    CHECK(c.boundary_cycles == 1);
    CHECK(c.twice_genus() == 0);
    CHECK_FALSE(c.proof_covered());
    CHECK(c.identities_hold());

    CHECK(is_tight(g, d).tight());
    CHECK(classify_decoration(g, d) == "tight-by-definition, outside proof coverage");
  }

  TEST_CASE("global vertex order orientation") {
    const CellSurface g = fixtures::genus2();
    Decoration d = Decoration::trivial(g);
    for (int e = 0; e < g.num_edges(); ++e) {
      const auto [a, b] = g.edge(e);
      d.state[e] = a < b ? EdgeState::Forward : EdgeState::Backward;
    }
    const auto rep = pak_report(g, d);
    REQUIRE(rep.components.size() == 1);
    const PakComponent& c = rep.components[0];
    CHECK(c.F == g.num_faces());
    CHECK(c.V == 10);
    CHECK(c.boundary_edges == 0);
    CHECK(c.boundary_cycles == 0);
    CHECK(c.twice_genus() == 4);
    CHECK(2 * c.V - c.F == -4);
    CHECK(c.proof_covered());
    CHECK(c.identities_hold());
    // Counting: c >= |F| but c <= 2|V| - e_b < |F|, so this cannot be tight.
    CHECK(c.changes_half >= 2 * c.F);
    CHECK_FALSE(is_tight(g, d).tight());
  }

  TEST_CASE("many changes at one vertex are reported") {
    const CellSurface g = fixtures::genus2();
    Decoration d = Decoration::trivial(g);
    // Alternate in and out around the cone vertex.
    bool out = true;
    for (int x : g.star(0)) {
      d.state[CellSurface::edge_of(x)] = state_along(x, out ? 1 : -1);
      out = !out;
    }
    const auto r = is_tight(g, d);
    CHECK_FALSE(r.tight());
    CHECK(r.vertices[0].changes_half == 2 * static_cast<int>(g.star(0).size()));
    const auto off = r.offending();
    CHECK(std::find(off.begin(), off.end(), 0) != off.end());
    CHECK(classify_decoration(g, d) == "not tight");
  }

  TEST_CASE("limit drops to one change with unoriented neighbours") {
    const CellSurface t = fixtures::octahedron();
    Decoration d = Decoration::trivial(t);
    const auto& star = t.star(0);
    d.state[CellSurface::edge_of(star[0])] = state_along(star[0], 1);
    d.state[CellSurface::edge_of(star[2])] = state_along(star[2], -1);
    // Degree 4: two unoriented edges that are not adjacent, so the limit stays at 2 changes.
    const auto r = is_tight(t, d);
    CHECK(r.vertices[0].limit_half == 4);
    d.state[CellSurface::edge_of(star[2])] = EdgeState::Unoriented;
    CHECK(is_tight(t, d).vertices[0].limit_half == 2);
  }

  TEST_CASE("random decorations: invariants and counting identities") {
    const CellSurface g = fixtures::genus2();
    std::mt19937_64 rng(7);
    int tight = 0;
    for (int k = 0; k < 1000; ++k) {
      const Decoration d = random_decoration(g, rng);
      const auto c = corner_changes(g, d);
      CHECK(total(c) == total(corner_changes(g, d.reversed())));
      const auto rep = pak_report(g, d);
      int faces = 0;
      for (const auto& comp : rep.components) {
        CHECK(comp.identities_hold());
        CHECK(comp.twice_genus() >= 0);
        CHECK(comp.twice_genus() % 2 == 0);
        CHECK(comp.changes_half >= 2 * comp.F);
        faces += comp.F;
      }
      int touched = 0;
      for (int f = 0; f < g.num_faces(); ++f) {
        bool any = false;
        for (int x : g.face_darts(f)) any |= d.state[CellSurface::edge_of(x)] != EdgeState::Unoriented;
        touched += any;
      }
      CHECK(faces == touched);
      tight += is_tight(g, d).tight();
    }
    CHECK(tight == 0);
  }
}
