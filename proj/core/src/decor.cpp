#include "endlab/decor.hpp"

#include <algorithm>
#include <numeric>

#include "endlab/error.hpp"

namespace endlab {

namespace {

// +1 if the edge of dart x points away from tail(x), -1 toward it, 0 if unoriented.
int away(const Decoration& dec, int x) {
  const int s = static_cast<int>(dec.state[CellSurface::edge_of(x)]);
  return (x & 1) ? -s : s;
}

void check(const CellSurface& s, const Decoration& d) {
  if (static_cast<int>(d.state.size()) != s.num_edges()) throw Error("decoration size does not match edges");
}

}  // namespace

bool Decoration::is_trivial() const {
  return std::all_of(state.begin(), state.end(), [](EdgeState e) { return e == EdgeState::Unoriented; });
}

Decoration Decoration::reversed() const {
  Decoration r = *this;
  for (auto& e : r.state) e = static_cast<EdgeState>(-static_cast<int>(e));
  return r;
}

std::vector<int> corner_changes(const CellSurface& s, const Decoration& d) {
  check(s, d);
  std::vector<int> out(s.num_darts());
  for (int x = 0; x < s.num_darts(); ++x) {
    const int a = away(d, x), b = away(d, CellSurface::twin(s.prev(x)));
    if (a == 0 && b == 0)
      out[x] = 0;
    else if (a == 0 || b == 0)
      out[x] = 1;
    else
      out[x] = a == b ? 0 : 2;
  }
  return out;
}

bool TightReport::tight() const {
  return std::all_of(vertices.begin(), vertices.end(), [](const TightVertex& v) { return v.ok(); });
}

std::vector<int> TightReport::offending() const {
  std::vector<int> r;
  for (const auto& v : vertices)
    if (!v.ok()) r.push_back(v.vertex);
  return r;
}

TightReport is_tight(const CellSurface& s, const Decoration& d) {
  const auto corners = corner_changes(s, d);
  TightReport r;
  for (int v = 0; v < s.num_vertices(); ++v) {
    const auto& star = s.star(v);
    TightVertex t;
    t.vertex = v;
    int unoriented = 0;
    bool adjacent = false;
    for (std::size_t i = 0; i < star.size(); ++i) {
      t.changes_half += corners[star[i]];
      const bool u = away(d, star[i]) == 0;
      unoriented += u;
      if (star.size() > 1 && u && away(d, star[(i + 1) % star.size()]) == 0) adjacent = true;
    }
    if (unoriented >= 3 || adjacent) t.limit_half = 2;
    r.vertices.push_back(t);
  }
  return r;
}

bool PakReport::all_covered() const {
  return std::all_of(components.begin(), components.end(), [](const PakComponent& c) { return c.proof_covered(); });
}

PakReport pak_report(const CellSurface& s, const Decoration& d) {
  if (!s.is_triangulated()) throw Error("decorations need a triangulated surface");
  const auto corners = corner_changes(s, d);
  std::vector<char> keep(s.num_faces(), 0);
  for (int f = 0; f < s.num_faces(); ++f)
    for (int x : s.face_darts(f))
      if (d.state[CellSurface::edge_of(x)] != EdgeState::Unoriented) keep[f] = 1;

  std::vector<int> comp(s.num_faces(), -1);
  PakReport r;
  for (int f0 = 0; f0 < s.num_faces(); ++f0) {
    if (!keep[f0] || comp[f0] >= 0) continue;
    const int id = static_cast<int>(r.components.size());
    PakComponent c;
    std::vector<int> stack{f0};
    comp[f0] = id;
    while (!stack.empty()) {
      const int f = stack.back();
      stack.pop_back();
      c.faces.push_back(f);
      for (int x : s.face_darts(f)) {
        const int g = s.face(CellSurface::twin(x));
        if (keep[g] && comp[g] < 0) {
          comp[g] = id;
          stack.push_back(g);
        }
      }
    }
    std::sort(c.faces.begin(), c.faces.end());
    std::vector<char> eseen(s.num_edges(), 0);
    for (int f : c.faces)
      for (int x : s.face_darts(f)) {
        c.changes_half += corners[x];
        const int e = CellSurface::edge_of(x);
        if (!eseen[e]) {
          eseen[e] = 1;
          ++c.E;
        }
        if (comp[s.face(CellSurface::twin(x))] != id) ++c.boundary_edges;
      }
    c.F = static_cast<int>(c.faces.size());

    // Vertices are counted once per fan of corners, so a vertex where the
    // component pinches counts once per sheet.
    std::vector<int> parent(s.num_darts());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int f : c.faces)
      for (int x : s.face_darts(f)) {
        const int y = s.next(CellSurface::twin(x));
        if (comp[s.face(y)] == id) parent[find(x)] = find(y);
      }
    for (int f : c.faces)
      for (int x : s.face_darts(f)) c.V += find(x) == x;

    auto inside = [&](int x) { return comp[s.face(x)] == id; };
    std::vector<char> used(s.num_darts(), 0);
    for (int f : c.faces)
      for (int x0 : s.face_darts(f)) {
        if (used[x0] || inside(CellSurface::twin(x0))) continue;
        ++c.boundary_cycles;
        for (int x = x0; !used[x];) {
          used[x] = 1;
          int y = s.next(x);
          while (inside(CellSurface::twin(y))) y = s.next(CellSurface::twin(y));
          x = y;
        }
      }
    r.components.push_back(std::move(c));
  }
  return r;
}

std::string classify_decoration(const CellSurface& s, const Decoration& d) {
  if (d.is_trivial()) return "trivial";
  if (!is_tight(s, d).tight()) return "not tight";
  return pak_report(s, d).all_covered() ? "tight, proof-covered" : "tight-by-definition, outside proof coverage";
}

}  // namespace endlab
