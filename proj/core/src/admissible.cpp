#include "endlab/admissible.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "endlab/error.hpp"
#include "endlab/surface_group.hpp"

namespace endlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<int> sorted_edges(const std::vector<int>& darts) {
  std::vector<int> e;
  for (int d : darts) e.push_back(CellSurface::edge_of(d));
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

class FaceEdgeSets {
public:
  explicit FaceEdgeSets(const CellSurface& s) : s_(s) {
    for (int f = 0; f < s.num_faces(); ++f) sets_.push_back(sorted_edges(s.face_darts(f)));
  }
  // True if every edge of the path lies on the boundary of a single face.
  bool inside_face(const std::vector<int>& darts, bool require_equal = false) const {
    const auto e = sorted_edges(darts);
    for (int f : {s_.face(darts.front()), s_.face(CellSurface::twin(darts.front()))}) {
      const auto& fs = sets_[f];
      if (require_equal ? fs == e : std::includes(fs.begin(), fs.end(), e.begin(), e.end())) return true;
    }
    return false;
  }
  const std::vector<int>& of(int f) const { return sets_[f]; }

private:
  const CellSurface& s_;
  std::vector<std::vector<int>> sets_;
};

double weight_sum(const std::vector<int>& darts, const std::vector<double>& w) {
  double t = 0;
  for (int d : darts) t += w[CellSurface::edge_of(d)];
  return t;
}

std::vector<int> canonical(const std::vector<int>& c) {
  std::vector<int> rev;
  for (auto it = c.rbegin(); it != c.rend(); ++it) rev.push_back(CellSurface::twin(*it));
  std::vector<int> best;
  for (const std::vector<int>* seq : {&c, static_cast<const std::vector<int>*>(&rev)})
    for (std::size_t i = 0; i < seq->size(); ++i) {
      std::vector<int> r(seq->begin() + i, seq->end());
      r.insert(r.end(), seq->begin(), seq->begin() + i);
      if (best.empty() || r < best) best = std::move(r);
    }
  return best;
}

struct CycleSearch {
  const CellSurface& s;
  const std::vector<double>& w;
  int max_len;
  double max_sum;
  bool simple;
  int root = 0;
  std::vector<int> path;
  std::vector<char> on_path;
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> out;

  void run() {
    on_path.assign(s.num_vertices(), 0);
    for (root = 0; root < s.num_vertices(); ++root) {
      on_path[root] = 1;
      extend(root, 0.0);
      on_path[root] = 0;
    }
  }

  void extend(int v, double sum) {
    for (int d : s.star(v)) {
      const int e = CellSurface::edge_of(d);
      if (!path.empty() && e == CellSurface::edge_of(path.back())) continue;
      const double t = sum + w[e];
      if (t > max_sum) continue;
      const int h = s.head(d);
      if (h < root) continue;
      if (h == root) {
        if (!path.empty() && e == CellSurface::edge_of(path.front())) continue;
        path.push_back(d);
        record();
        path.pop_back();
        continue;
      }
      if (static_cast<int>(path.size()) + 1 >= max_len) continue;
      if (simple && on_path[h]) continue;
      path.push_back(d);
      ++on_path[h];
      extend(h, t);
      --on_path[h];
      path.pop_back();
    }
  }

  void record() {
    if (simple) {
      if (path.size() == 1 || CellSurface::edge_of(path.front()) < CellSurface::edge_of(path.back()))
        out.push_back(path);
      return;
    }
    if (seen.insert(canonical(path)).second) out.push_back(path);
  }
};

// Simple paths from a to b (a != b) with at most max_len edges and weight sum <= max_sum.
void simple_paths(const CellSurface& s, const std::vector<double>& w, int a, int b, int max_len,
                  double max_sum, std::vector<std::vector<int>>& out) {
  std::vector<int> path;
  std::vector<char> on(s.num_vertices(), 0);
  on[a] = 1;
  auto rec = [&](auto&& self, int v, double sum) -> void {
    for (int d : s.star(v)) {
      const double t = sum + w[CellSurface::edge_of(d)];
      const int h = s.head(d);
      if (t > max_sum || on[h]) continue;
      path.push_back(d);
      if (h == b) {
        out.push_back(path);
      } else if (static_cast<int>(path.size()) < max_len) {
        on[h] = 1;
        self(self, h, t);
        on[h] = 0;
      }
      path.pop_back();
    }
  };
  rec(rec, a, 0.0);
}

void check_weights(const CellSurface& s) {
  for (double t : s.weights())
    if (!(t > 0.0 && t < kPi)) throw Error("weight out of (0,π)");
}

}  // namespace

std::vector<std::vector<int>> enumerate_cycles(const CellSurface& s, const std::vector<double>& w,
                                               int max_len, double max_sum, bool simple) {
  CycleSearch c{s, w, max_len, max_sum, simple, 0, {}, {}, {}, {}};
  c.run();
  return c.out;
}

AdmissibleReport validate_admissible(const CellSurface& s, const AdmissibleOptions& opt) {
  check_weights(s);
  const auto& w = s.weights();
  AdmissibleReport r;
  r.max_cycle = opt.max_cycle;
  r.simple_cycles_only = opt.simple_cycles_only;
  for (int f = 0; f < s.num_faces(); ++f) {
    const double t = weight_sum(s.face_darts(f), w);
    r.face_sums.push_back(t);
    if (std::abs(t - 2 * kPi) > opt.tol_angle)
      r.violations.push_back({"face-sum", f, s.face_darts(f), t, 2 * kPi});
  }
  const EdgeLabeling labels(s);
  const FaceEdgeSets faces(s);
  const auto cycles = enumerate_cycles(s, w, opt.max_cycle, 2 * kPi + opt.tol_angle, opt.simple_cycles_only);
  for (const auto& c : cycles) {
    if (faces.inside_face(c)) continue;
    ++r.cycles_checked;
    if (labels.contractible(c)) r.violations.push_back({"cycle", -1, c, weight_sum(c, w), 2 * kPi});
  }
  return r;
}

AdmissibleReport validate_hyperideal(const CellSurface& s, const AdmissibleOptions& opt) {
  check_weights(s);
  const CellSurface g = s.dual();
  const auto& w = g.weights();
  AdmissibleReport r;
  r.max_cycle = opt.max_cycle;
  r.simple_cycles_only = opt.simple_cycles_only;
  for (int f = 0; f < g.num_faces(); ++f) {
    const double t = weight_sum(g.face_darts(f), w);
    r.face_sums.push_back(t);
    if (t <= 2 * kPi + opt.tol_angle) r.violations.push_back({"dual-cycle", f, g.face_darts(f), t, 2 * kPi});
  }
  const EdgeLabeling labels(g);
  const FaceEdgeSets faces(g);
  for (const auto& c : enumerate_cycles(g, w, opt.max_cycle, 2 * kPi + opt.tol_angle, opt.simple_cycles_only)) {
    if (faces.inside_face(c, true)) continue;
    ++r.cycles_checked;
    if (labels.contractible(c)) r.violations.push_back({"dual-cycle", -1, c, weight_sum(c, w), 2 * kPi});
  }

  std::set<std::pair<int, std::vector<int>>> reported;
  for (int f = 0; f < g.num_faces(); ++f) {
    const auto& c = g.face_darts(f);
    const int k = static_cast<int>(c.size());
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        const int a = g.tail(c[i]), b = g.tail(c[j]);
        if (a == b) continue;
        std::vector<std::vector<int>> paths;
        simple_paths(g, w, b, a, opt.max_cycle, kPi + opt.tol_angle, paths);
        for (const auto& p : paths) {
          if (faces.inside_face(p)) continue;
          ++r.cycles_checked;
          std::vector<int> loop(c.begin() + i, c.begin() + j);
          loop.insert(loop.end(), p.begin(), p.end());
          if (!labels.contractible(loop)) continue;
          std::vector<int> key = sorted_edges(p);
          if (!reported.insert({f, key}).second) continue;
          r.violations.push_back({"dual-path", f, p, weight_sum(p, w), kPi});
        }
      }
  }
  return r;
}

}  // namespace endlab
