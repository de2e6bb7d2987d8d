#include "endlab/cellsurf.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include "endlab/error.hpp"

namespace endlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

CellSurface CellSurface::build(int num_vertices, std::vector<EdgeEnds> edges,
                               std::vector<std::vector<int>> face_darts) {
  CellSurface s;
  s.num_vertices_ = num_vertices;
  s.edges_ = std::move(edges);
  s.faces_ = std::move(face_darts);
  s.finish();
  return s;
}

void CellSurface::finish() {
  if (num_vertices_ <= 0 || edges_.empty() || faces_.empty()) throw Error("empty surface");
  for (const auto& e : edges_)
    for (int v : e)
      if (v < 0 || v >= num_vertices_) throw Error("edge endpoint out of range");
  const int nd = num_darts();
  next_.assign(nd, -1);
  prev_.assign(nd, -1);
  face_.assign(nd, -1);
  for (int f = 0; f < num_faces(); ++f) {
    const auto& c = faces_[f];
    if (c.empty()) throw Error("empty face");
    for (std::size_t i = 0; i < c.size(); ++i) {
      const int d = c[i], n = c[(i + 1) % c.size()];
      if (d < 0 || d >= nd || n < 0 || n >= nd) throw Error("dart out of range");
      if (face_[d] != -1) throw Error("dart " + std::to_string(d) + " used by two faces");
      if (head(d) != tail(n)) throw Error("face " + std::to_string(f) + " is not a closed dart cycle");
      face_[d] = f;
      next_[d] = n;
      prev_[n] = d;
    }
  }
  for (int d = 0; d < nd; ++d)
    if (face_[d] == -1) throw Error("dart " + std::to_string(d) + " lies on no face");

  stars_.assign(num_vertices_, {});
  std::vector<int> count(num_vertices_, 0);
  for (int d = 0; d < nd; ++d) ++count[tail(d)];
  for (int v = 0; v < num_vertices_; ++v)
    if (count[v] == 0) throw Error("isolated vertex " + std::to_string(v));
  std::vector<char> seen(nd, 0);
  for (int d = 0; d < nd; ++d) {
    const int v = tail(d);
    if (!stars_[v].empty()) continue;
    for (int x = d; !seen[x]; x = sigma(x)) {
      seen[x] = 1;
      stars_[v].push_back(x);
    }
    if (static_cast<int>(stars_[v].size()) != count[v])
      throw Error("link of vertex " + std::to_string(v) + " is not a single cycle");
  }

  std::vector<char> reached(num_vertices_, 0);
  std::queue<int> q;
  q.push(0);
  reached[0] = 1;
  int n = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int d : stars_[v])
      if (!reached[head(d)]) {
        reached[head(d)] = 1;
        ++n;
        q.push(head(d));
      }
  }
  if (n != num_vertices_) throw Error("surface is not connected");
}

CellSurface CellSurface::from_polygons(int num_vertices, const std::vector<std::vector<int>>& polygons) {
  std::vector<EdgeEnds> edges;
  std::map<std::pair<int, int>, int> index;
  std::vector<std::vector<int>> faces;
  for (const auto& p : polygons) {
    std::vector<int> cycle;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const int a = p[i], b = p[(i + 1) % p.size()];
      if (a == b) throw Error("loop edges need CellSurface::build");
      const auto key = std::minmax(a, b);
      auto it = index.find(key);
      if (it == index.end()) {
        it = index.emplace(key, static_cast<int>(edges.size())).first;
        edges.push_back({a, b});
      }
      const int e = it->second;
      cycle.push_back(dart(e, edges[e][0] == a));
    }
    faces.push_back(std::move(cycle));
  }
  return build(num_vertices, std::move(edges), std::move(faces));
}

bool CellSurface::is_triangulated() const {
  return std::all_of(faces_.begin(), faces_.end(), [](const auto& f) { return f.size() == 3; });
}

CellSurface CellSurface::dual() const {
  CellSurface s;
  s.num_vertices_ = num_faces();
  s.edges_.reserve(edges_.size());
  for (int e = 0; e < num_edges(); ++e) s.edges_.push_back({face_[2 * e], face_[2 * e + 1]});
  s.faces_ = stars_;
  s.theta_ = theta_;
  s.finish();
  return s;
}

const std::vector<double>& CellSurface::weights() const {
  if (!theta_) throw Error("surface has no edge weights");
  return *theta_;
}

CellSurface CellSurface::with_weights(std::vector<double> theta) const {
  if (static_cast<int>(theta.size()) != num_edges()) throw Error("weight count does not match edges");
  for (double t : theta)
    if (!(t > 0.0 && t < kPi)) throw Error("weight out of (0,π)");
  CellSurface s = *this;
  s.theta_ = std::move(theta);
  return s;
}

CellSurface CellSurface::without_weights() const {
  CellSurface s = *this;
  s.theta_.reset();
  return s;
}

bool CellSurface::operator==(const CellSurface& o) const {
  return num_vertices_ == o.num_vertices_ && edges_ == o.edges_ && next_ == o.next_ &&
         face_ == o.face_ && theta_ == o.theta_;
}

CellSurface thurston_pattern(const CellSurface& nerve) {
  if (!nerve.is_triangulated()) throw Error("nerve must be a triangulation");
  const int nv = nerve.num_vertices();
  std::vector<CellSurface::EdgeEnds> edges;
  for (int d = 0; d < nerve.num_darts(); ++d) edges.push_back({nerve.tail(d), nv + nerve.face(d)});
  std::vector<std::vector<int>> faces;
  for (int e = 0; e < nerve.num_edges(); ++e) {
    const int d = 2 * e, t = d + 1;
    faces.push_back({2 * d, 2 * nerve.next(d) + 1, 2 * t, 2 * nerve.next(t) + 1});
  }
  CellSurface out = CellSurface::build(nv + nerve.num_faces(), std::move(edges), std::move(faces));
  return out.with_weights(std::vector<double>(out.num_edges(), kPi / 2));
}

}  // namespace endlab
