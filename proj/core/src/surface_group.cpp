#include "endlab/surface_group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <queue>

#include "endlab/error.hpp"

namespace endlab {

Word inverse(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (int& x : r) x = -x;
  return r;
}

Word free_reduce(const Word& w) {
  Word r;
  for (int x : w) {
    if (!r.empty() && r.back() == -x)
      r.pop_back();
    else
      r.push_back(x);
  }
  return r;
}

namespace {

Word cyclic_reduce(Word w) {
  w = free_reduce(w);
  std::size_t i = 0, j = w.size();
  while (j - i >= 2 && w[i] == -w[j - 1]) {
    ++i;
    --j;
  }
  return Word(w.begin() + i, w.begin() + j);
}

}  // namespace

std::string to_string(const Word& w) {
  std::string s;
  for (int x : w) {
    const char c = static_cast<char>('a' + (std::abs(x) - 1));
    s.push_back(x > 0 ? c : static_cast<char>(std::toupper(c)));
  }
  return s;
}

Word parse_word(const std::string& s) {
  Word w;
  for (char c : s) {
    if (std::islower(static_cast<unsigned char>(c)))
      w.push_back(c - 'a' + 1);
    else if (std::isupper(static_cast<unsigned char>(c)))
      w.push_back(-(c - 'A' + 1));
    else
      throw Error(std::string("bad letter '") + c + "' in word");
  }
  return w;
}

SurfaceGroup SurfaceGroup::standard(int genus) {
  Word r;
  for (int i = 0; i < genus; ++i) {
    const int a = 2 * i + 1, b = 2 * i + 2;
    r.insert(r.end(), {a, b, -a, -b});
  }
  return SurfaceGroup(genus, r);
}

SurfaceGroup::SurfaceGroup(int genus, Word relator) : genus_(genus), relator_(std::move(relator)) {
  if (genus < 0) throw Error("negative genus");
  if (static_cast<int>(relator_.size()) != 4 * genus_) throw Error("relator must have length 4g");
  std::vector<int> pos(2 * genus_, 0), neg(2 * genus_, 0);
  for (int x : relator_) {
    if (x == 0 || std::abs(x) > 2 * genus_) throw Error("relator letter out of range");
    (x > 0 ? pos : neg)[std::abs(x) - 1]++;
  }
  for (int k = 0; k < 2 * genus_; ++k)
    if (pos[k] != 1 || neg[k] != 1) throw Error("each generator must occur once with each sign");
  const Word inv = inverse(relator_);
  for (const Word* r : {static_cast<const Word*>(&relator_), &inv})
    for (std::size_t i = 0; i < r->size(); ++i) {
      Word rot(r->begin() + i, r->end());
      rot.insert(rot.end(), r->begin(), r->begin() + i);
      symmetrized_.push_back(std::move(rot));
    }
}

Word SurfaceGroup::dehn_reduce(const Word& w0) const {
  if (genus_ < 2) throw Error("Dehn's algorithm needs genus >= 2");
  const std::size_t n = relator_.size(), half = n / 2;
  Word w = cyclic_reduce(w0);
  for (bool changed = true; changed;) {
    changed = false;
    const std::size_t m = w.size();
    for (std::size_t i = 0; i < m && !changed; ++i) {
      for (const Word& r : symmetrized_) {
        std::size_t k = 0;
        while (k < n && k < m && w[(i + k) % m] == r[k]) ++k;
        if (k <= half) continue;
        // w = (r[0..k)) rest, cyclically; r[0..k) equals the inverse of r[k..n).
        Word next;
        for (std::size_t j = n; j > k; --j) next.push_back(-r[j - 1]);
        for (std::size_t j = k; j < m; ++j) next.push_back(w[(i + j) % m]);
        w = cyclic_reduce(next);
        changed = true;
        break;
      }
    }
  }
  return w;
}

bool SurfaceGroup::is_trivial(const Word& w) const {
  if (genus_ == 0) return true;
  if (genus_ == 1) {
    int a = 0, b = 0;
    for (int x : w) (std::abs(x) == 1 ? a : b) += x > 0 ? 1 : -1;
    return a == 0 && b == 0;
  }
  return dehn_reduce(w).empty();
}

namespace {

SurfaceGroup build_labels(const CellSurface& s, std::vector<Word>& labels) {
  const int ne = s.num_edges();
  enum Kind { Unset, Tree, Cotree, Generator };
  std::vector<Kind> kind(ne, Unset);

  // Incident edges of each vertex / face in increasing edge order.
  std::vector<std::vector<int>> vedges(s.num_vertices()), fedges(s.num_faces());
  for (int e = 0; e < ne; ++e) {
    vedges[s.edge(e)[0]].push_back(e);
    if (s.edge(e)[1] != s.edge(e)[0]) vedges[s.edge(e)[1]].push_back(e);
    fedges[s.face(2 * e)].push_back(e);
    if (s.face(2 * e + 1) != s.face(2 * e)) fedges[s.face(2 * e + 1)].push_back(e);
  }

  std::vector<char> vseen(s.num_vertices(), 0);
  std::queue<int> q;
  q.push(0);
  vseen[0] = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int e : vedges[v]) {
      const int w = s.edge(e)[0] == v ? s.edge(e)[1] : s.edge(e)[0];
      if (vseen[w]) continue;
      vseen[w] = 1;
      kind[e] = Tree;
      q.push(w);
    }
  }

  std::vector<char> fseen(s.num_faces(), 0);
  std::vector<int> order, parent_edge(s.num_faces(), -1);
  q.push(0);
  fseen[0] = 1;
  while (!q.empty()) {
    const int f = q.front();
    q.pop();
    order.push_back(f);
    for (int e : fedges[f]) {
      if (kind[e] == Tree) continue;
      const int g = s.face(2 * e) == f ? s.face(2 * e + 1) : s.face(2 * e);
      if (fseen[g]) continue;
      fseen[g] = 1;
      kind[e] = Cotree;
      parent_edge[g] = e;
      q.push(g);
    }
  }
  for (int e = 0; e < ne; ++e)
    if (kind[e] == Unset) kind[e] = Generator;

  // Boundary of the polygon obtained by gluing all faces along cotree edges.
  std::vector<int> gen(ne, -1);
  Word relator;
  int start = -1;
  for (int d = 0; d < s.num_darts() && start < 0; ++d)
    if (kind[CellSurface::edge_of(d)] != Cotree) start = d;
  int ngen = 0;
  for (int x = start;;) {
    const int e = CellSurface::edge_of(x);
    if (kind[e] == Generator) {
      if (gen[e] < 0) gen[e] = ngen++;
      relator.push_back((x & 1) ? -(gen[e] + 1) : gen[e] + 1);
    }
    int y = s.next(x);
    while (kind[CellSurface::edge_of(y)] == Cotree) y = s.next(CellSurface::twin(y));
    x = y;
    if (x == start) break;
  }

  labels.assign(ne, {});
  for (int e = 0; e < ne; ++e)
    if (kind[e] == Generator) labels[e] = {gen[e] + 1};

  auto dart_label = [&](int d) {
    const Word& l = labels[CellSurface::edge_of(d)];
    return (d & 1) ? inverse(l) : l;
  };
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int f = *it, p = parent_edge[f];
    if (p < 0) continue;
    const auto& c = s.face_darts(f);
    const std::size_t k = c.size();
    const std::size_t j = static_cast<std::size_t>(
        std::find_if(c.begin(), c.end(), [&](int d) { return CellSurface::edge_of(d) == p; }) - c.begin());
    Word rest;
    for (std::size_t i = 1; i < k; ++i) {
      const Word l = dart_label(c[(j + i) % k]);
      rest.insert(rest.end(), l.begin(), l.end());
    }
    const Word lp = free_reduce(inverse(rest));
    labels[p] = (c[j] & 1) ? inverse(lp) : lp;
  }
  return SurfaceGroup(s.genus(), relator);
}

}  // namespace

EdgeLabeling::EdgeLabeling(const CellSurface& s) : group_(SurfaceGroup::standard(0)) {
  group_ = build_labels(s, labels_);
}

Word EdgeLabeling::dart_word(int d) const {
  const Word& l = labels_.at(CellSurface::edge_of(d));
  return (d & 1) ? inverse(l) : l;
}

Word EdgeLabeling::path_word(const std::vector<int>& darts) const {
  Word w;
  for (int d : darts) {
    const Word l = dart_word(d);
    w.insert(w.end(), l.begin(), l.end());
  }
  return free_reduce(w);
}

bool EdgeLabeling::contractible(const std::vector<int>& closed_darts) const {
  return group_.is_trivial(path_word(closed_darts));
}

}  // namespace endlab
