#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "triflip/triangulation.hpp"

namespace triflip {

namespace {

struct Mesh {
  const PointSet* s;
  std::set<std::array<int, 3>> tris;  // sorted triples

  void add(int a, int b, int c) {
    std::array<int, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    tris.insert(t);
  }
  std::map<Edge, std::vector<int>> edge_faces() const {
    std::map<Edge, std::vector<int>> m;
    int id = 0;
    for (const auto& t : tris) {
      for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}})
        m[Edge(t[i], t[j])].push_back(id);
      ++id;
    }
    return m;
  }
};

bool inside_tri(const PointSet& s, const std::array<int, 3>& t, int p) {
  int o1 = orient(s[t[0]], s[t[1]], s[p]);
  int o2 = orient(s[t[1]], s[t[2]], s[p]);
  int o3 = orient(s[t[2]], s[t[0]], s[p]);
  return o1 == o2 && o2 == o3 && o1 != 0;
}

}  // namespace

Triangulation delaunay(PointSetPtr ps) {
  const PointSet& s = *ps;
  int n = s.size();
  if (n < 3) throw Error("delaunay needs at least 3 points");

  Mesh mesh{&s, {}};
  const std::vector<int>& hull = s.hull();
  int h = static_cast<int>(hull.size());
  for (int i = 1; i + 1 < h; ++i) mesh.add(hull[0], hull[i], hull[i + 1]);

  std::set<int> on_hull(hull.begin(), hull.end());
  for (int p = 0; p < n; ++p) {
    if (on_hull.count(p)) continue;
    auto it = std::find_if(mesh.tris.begin(), mesh.tris.end(),
                           [&](const auto& t) { return inside_tri(s, t, p); });
    if (it == mesh.tris.end()) throw Error("point location failed");
    auto t = *it;
    mesh.tris.erase(it);
    mesh.add(t[0], t[1], p);
    mesh.add(t[0], t[2], p);
    mesh.add(t[1], t[2], p);
  }

  // Lawson flips until every interior edge is locally Delaunay. Cocircular
  // quads prefer the lexicographically smaller diagonal.
  std::deque<Edge> queue;
  std::set<Edge> queued;
  auto push = [&](const Edge& e) {
    if (queued.insert(e).second) queue.push_back(e);
  };
  {
    std::set<Edge> es;
    for (const auto& t : mesh.tris)
      for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}})
        es.insert(Edge(t[i], t[j]));
    for (const Edge& e : es) push(e);
  }
  long flips = 0, cap = 20L * n * n + 1000;
  while (!queue.empty()) {
    Edge e = queue.front();
    queue.pop_front();
    queued.erase(e);
    // Find the (up to two) triangles currently incident to e.
    std::vector<std::array<int, 3>> inc;
    for (const auto& t : mesh.tris) {
      int hit = 0;
      for (int v : t) hit += (v == e.a || v == e.b);
      if (hit == 2) inc.push_back(t);
    }
    if (inc.size() != 2) continue;  // hull edge or already flipped away
    auto apex = [&](const std::array<int, 3>& t) {
      for (int v : t)
        if (v != e.a && v != e.b) return v;
      return -1;
    };
    int c = apex(inc[0]), d = apex(inc[1]);
    if (!segments_cross(s[e.a], s[e.b], s[c], s[d])) continue;
    int aa = e.a, bb = e.b;
    if (orient(s[aa], s[bb], s[c]) < 0) std::swap(aa, bb);
    int ic = incircle(s[aa], s[bb], s[c], s[d]);
    bool flip = ic > 0 || (ic == 0 && Edge(c, d) < e);
    if (!flip) continue;
    mesh.tris.erase(inc[0]);
    mesh.tris.erase(inc[1]);
    mesh.add(c, d, e.a);
    mesh.add(c, d, e.b);
    for (int x : {e.a, e.b})
      for (int y : {c, d}) push(Edge(x, y));
    if (++flips > cap) throw Error("delaunay flip loop exceeded cap");
  }

  std::set<Edge> es;
  for (const auto& t : mesh.tris)
    for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}})
      es.insert(Edge(t[i], t[j]));
  return Triangulation::from_edges(std::move(ps),
                                   std::vector<Edge>(es.begin(), es.end()),
                                   /*validate=*/false);
}

}  // namespace triflip
