#include "triflip/triangulation.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>

namespace triflip {

namespace {
using BigInt = boost::multiprecision::cpp_int;

std::string edge_str(const Edge& e) {
  return "(" + std::to_string(e.a) + "," + std::to_string(e.b) + ")";
}
}  // namespace

ValidationReport validate_triangulation(const PointSet& s,
                                        const std::vector<Edge>& edges) {
  int n = s.size();
  auto fail = [](std::string msg) { return ValidationReport{false, std::move(msg)}; };
  for (const Edge& e : edges) {
    if (e.a < 0 || e.b >= n || e.a >= e.b)
      return fail("invalid edge " + edge_str(e));
  }
  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 0; i + 1 < sorted.size(); ++i)
    if (sorted[i] == sorted[i + 1])
      return fail("duplicate edge " + edge_str(sorted[i]));
  for (size_t i = 0; i < sorted.size(); ++i)
    for (size_t j = i + 1; j < sorted.size(); ++j) {
      const Edge &e = sorted[i], &f = sorted[j];
      if (segments_cross(s[e.a], s[e.b], s[f.a], s[f.b]))
        return fail("crossing pair " + edge_str(e) + " " + edge_str(f));
    }
  const std::vector<int>& hull = s.hull();
  int h = static_cast<int>(hull.size());
  for (int i = 0; i < h; ++i) {
    Edge he(hull[i], hull[(i + 1) % h]);
    if (!std::binary_search(sorted.begin(), sorted.end(), he))
      return fail("missing hull edge " + edge_str(he));
  }
  long expect = 3L * n - 3 - h;
  if (static_cast<long>(sorted.size()) != expect)
    return fail("edge count " + std::to_string(sorted.size()) + " != " +
                std::to_string(expect));
  // With the count, hull and non-crossing checks passed, face incidence is
  // forced; re-derive faces anyway and check the incidence invariant.
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : sorted) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());
  std::map<Edge, int> inc;
  long faces = 0;
  for (const Edge& e : sorted) {
    for (int c : adj[e.a]) {
      if (c <= e.b) continue;
      if (!std::binary_search(adj[e.b].begin(), adj[e.b].end(), c)) continue;
      bool empty = true;
      for (int p = 0; p < n && empty; ++p) {
        if (p == e.a || p == e.b || p == c) continue;
        int o1 = orient(s[e.a], s[e.b], s[p]);
        int o2 = orient(s[e.b], s[c], s[p]);
        int o3 = orient(s[c], s[e.a], s[p]);
        if (o1 == o2 && o2 == o3) empty = false;
      }
      if (!empty) continue;
      ++faces;
      ++inc[e];
      ++inc[Edge(e.a, c)];
      ++inc[Edge(e.b, c)];
    }
  }
  if (faces != 2L * n - h - 2)
    return fail("triangle count " + std::to_string(faces) + " != " +
                std::to_string(2L * n - h - 2));
  std::set<Edge> hull_edges;
  for (int i = 0; i < h; ++i) hull_edges.insert(Edge(hull[i], hull[(i + 1) % h]));
  for (const Edge& e : sorted) {
    int want = hull_edges.count(e) ? 1 : 2;
    if (inc[e] != want)
      return fail("edge " + edge_str(e) + " borders " + std::to_string(inc[e]) +
                  " triangles, expected " + std::to_string(want));
  }
  return ValidationReport{};
}

void Triangulation::index_triangles() {
  const PointSet& s = *ps_;
  int n = s.size();
  tris_.clear();
  etris_.clear();
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : edges_) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());
  for (const Edge& e : edges_) {
    for (int c : adj[e.a]) {
      if (c <= e.b) continue;
      if (!std::binary_search(adj[e.b].begin(), adj[e.b].end(), c)) continue;
      bool empty = true;
      for (int p = 0; p < n && empty; ++p) {
        if (p == e.a || p == e.b || p == c) continue;
        int o1 = orient(s[e.a], s[e.b], s[p]);
        int o2 = orient(s[e.b], s[c], s[p]);
        int o3 = orient(s[c], s[e.a], s[p]);
        if (o1 == o2 && o2 == o3) empty = false;
      }
      if (empty) tris_.push_back({e.a, e.b, c});
    }
  }
  std::sort(tris_.begin(), tris_.end());
  for (const Edge& e : edges_) etris_[e] = {-1, -1};
  for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
    const auto& tr = tris_[t];
    for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
      auto& slots = etris_[Edge(tr[i], tr[j])];
      if (slots[0] < 0)
        slots[0] = t;
      else
        slots[1] = t;
    }
  }
}

Triangulation Triangulation::from_edges(PointSetPtr ps, std::vector<Edge> edges,
                                        bool validate) {
  std::sort(edges.begin(), edges.end());
  if (validate) {
    ValidationReport r = validate_triangulation(*ps, edges);
    if (!r.ok) throw Error("invalid triangulation: " + r.violation);
  }
  Triangulation t;
  t.ps_ = std::move(ps);
  t.edges_ = std::move(edges);
  t.index_triangles();
  return t;
}

bool Triangulation::has_edge(const Edge& e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::array<int, 2> Triangulation::edge_triangles(const Edge& e) const {
  auto it = etris_.find(e);
  if (it == etris_.end()) throw Error("edge " + edge_str(e) + " not present");
  return it->second;
}

bool Triangulation::is_hull_edge(const Edge& e) const {
  return edge_triangles(e)[1] < 0;
}

std::vector<std::pair<Edge, Edge>> Triangulation::unit_flip_candidates() const {
  const PointSet& s = *ps_;
  std::vector<std::pair<Edge, Edge>> out;
  for (const Edge& e : edges_) {
    auto ts = edge_triangles(e);
    if (ts[1] < 0) continue;
    auto apex = [&](int t) {
      for (int v : tris_[t])
        if (v != e.a && v != e.b) return v;
      return -1;
    };
    int c = apex(ts[0]), d = apex(ts[1]);
    // The quad is strictly convex iff the other diagonal crosses this one.
    if (segments_cross(s[e.a], s[e.b], s[c], s[d]))
      out.emplace_back(e, Edge(c, d));
  }
  return out;
}

Triangulation Triangulation::apply_parallel_flip(const ParallelFlip& pf) const {
  if (pf.removed.size() != pf.added.size())
    throw Error("parallel flip removed/added size mismatch");
  if (pf.removed.empty()) return *this;
  const PointSet& s = *ps_;
  std::set<int> used_tris;
  std::vector<Edge> added_expect;
  std::vector<std::array<int, 3>> new_faces;
  for (const Edge& e : pf.removed) {
    if (!has_edge(e)) throw Error("removed edge " + edge_str(e) + " absent");
    auto ts = edge_triangles(e);
    if (ts[1] < 0) throw Error("removed edge " + edge_str(e) + " is on the hull");
    for (int t : ts)
      if (!used_tris.insert(t).second)
        throw Error("two removed edges share a triangle (at " + edge_str(e) + ")");
    auto apex = [&](int t) {
      for (int v : tris_[t])
        if (v != e.a && v != e.b) return v;
      return -1;
    };
    int c = apex(ts[0]), d = apex(ts[1]);
    if (!segments_cross(s[e.a], s[e.b], s[c], s[d]))
      throw Error("quad of removed edge " + edge_str(e) + " is not convex");
    added_expect.push_back(Edge(c, d));
    new_faces.push_back({std::min({c, d, e.a}), 0, 0});
    std::array<int, 3> f1{c, d, e.a}, f2{c, d, e.b};
    std::sort(f1.begin(), f1.end());
    std::sort(f2.begin(), f2.end());
    new_faces.back() = f1;
    new_faces.push_back(f2);
  }
  std::vector<Edge> added_sorted = added_expect;
  std::sort(added_sorted.begin(), added_sorted.end());
  std::vector<Edge> given = pf.added;
  std::sort(given.begin(), given.end());
  if (added_sorted != given)
    throw Error("added edges do not match the flipped diagonals");

  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  std::set<Edge> removed(pf.removed.begin(), pf.removed.end());
  for (const Edge& e : edges_)
    if (!removed.count(e)) edges.push_back(e);
  edges.insert(edges.end(), added_sorted.begin(), added_sorted.end());
  std::sort(edges.begin(), edges.end());

  // Local surgery on the face list: drop the faces of the flipped quads and
  // add the two new faces per added diagonal.
  Triangulation out;
  out.ps_ = ps_;
  out.edges_ = std::move(edges);
  for (int t = 0; t < static_cast<int>(tris_.size()); ++t)
    if (!used_tris.count(t)) out.tris_.push_back(tris_[t]);
  out.tris_.insert(out.tris_.end(), new_faces.begin(), new_faces.end());
  std::sort(out.tris_.begin(), out.tris_.end());
  out.etris_.clear();
  for (const Edge& e : out.edges_) out.etris_[e] = {-1, -1};
  for (int t = 0; t < static_cast<int>(out.tris_.size()); ++t) {
    const auto& tr = out.tris_[t];
    for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
      auto& slots = out.etris_[Edge(tr[i], tr[j])];
      if (slots[0] < 0)
        slots[0] = t;
      else
        slots[1] = t;
    }
  }
  return out;
}

std::vector<Edge> Triangulation::crossing_edges(const Edge& seg) const {
  const PointSet& s = *ps_;
  const Point &a = s[seg.a], &b = s[seg.b];
  std::vector<Edge> crossed;
  for (const Edge& e : edges_) {
    // Edges touching an endpoint of seg (seg itself included) never cross it.
    if (e.a == seg.a || e.a == seg.b || e.b == seg.a || e.b == seg.b) continue;
    if (segments_cross(a, b, s[e.a], s[e.b])) crossed.push_back(e);
  }
  // Order by the crossing parameter along ab, compared exactly:
  // t(e) = ((c-a) x (d-c)) / ((b-a) x (d-c)) with positive denominator.
  auto param = [&](const Edge& e) {
    const Point &c = s[e.a], &d = s[e.b];
    BigInt dx = BigInt(d.x) - c.x, dy = BigInt(d.y) - c.y;
    BigInt num = (BigInt(c.x) - a.x) * dy - (BigInt(c.y) - a.y) * dx;
    BigInt den = (BigInt(b.x) - a.x) * dy - (BigInt(b.y) - a.y) * dx;
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return std::pair<BigInt, BigInt>(num, den);
  };
  std::stable_sort(crossed.begin(), crossed.end(),
                   [&](const Edge& x, const Edge& y) {
                     auto [nx, dx] = param(x);
                     auto [ny, dy] = param(y);
                     return nx * dy < ny * dx;
                   });
  return crossed;
}

int Triangulation::crossing_count(const Edge& seg) const {
  const PointSet& s = *ps_;
  const Point &a = s[seg.a], &b = s[seg.b];
  int c = 0;
  for (const Edge& e : edges_) {
    if (e.a == seg.a || e.a == seg.b || e.b == seg.a || e.b == seg.b) continue;
    if (segments_cross(a, b, s[e.a], s[e.b])) ++c;
  }
  return c;
}

std::vector<Triangulation> Path::layers() const {
  std::vector<Triangulation> out{start};
  for (const ParallelFlip& pf : flips)
    out.push_back(out.back().apply_parallel_flip(pf));
  return out;
}

Triangulation Path::end() const {
  Triangulation t = start;
  for (const ParallelFlip& pf : flips) t = t.apply_parallel_flip(pf);
  return t;
}

Path Path::reversed() const {
  Path out{end(), {}};
  for (auto it = flips.rbegin(); it != flips.rend(); ++it)
    out.flips.push_back(it->reversed());
  return out;
}

Path Path::compressed() const {
  Path out{start, {}};
  for (const ParallelFlip& pf : flips)
    if (!pf.empty()) out.flips.push_back(pf);
  return out;
}

std::vector<Edge> common_edges(const Triangulation& t, const Triangulation& t2) {
  std::vector<Edge> out;
  std::set_intersection(t.edges().begin(), t.edges().end(), t2.edges().begin(),
                        t2.edges().end(), std::back_inserter(out));
  return out;
}

}  // namespace triflip
