#include "triflip/flip_graph.hpp"

#include <algorithm>
#include <deque>

namespace triflip {

namespace {

// Enumerates all nonempty subsets of pairwise triangle-disjoint unit flips by
// recursion over the candidate list.
void enumerate_subsets(const Triangulation& t,
                       const std::vector<std::pair<Edge, Edge>>& cands,
                       const std::vector<std::array<int, 2>>& tris, size_t idx,
                       std::vector<int>& chosen,
                       std::vector<Triangulation>& out) {
  if (idx == cands.size()) {
    if (chosen.empty()) return;
    ParallelFlip pf;
    for (int i : chosen) {
      pf.removed.push_back(cands[i].first);
      pf.added.push_back(cands[i].second);
    }
    std::sort(pf.removed.begin(), pf.removed.end());
    std::sort(pf.added.begin(), pf.added.end());
    out.push_back(t.apply_parallel_flip(pf));
    return;
  }
  bool compatible = true;
  for (int i : chosen)
    for (int a : tris[i])
      for (int b : tris[idx])
        if (a == b) compatible = false;
  if (compatible) {
    chosen.push_back(static_cast<int>(idx));
    enumerate_subsets(t, cands, tris, idx + 1, chosen, out);
    chosen.pop_back();
  }
  enumerate_subsets(t, cands, tris, idx + 1, chosen, out);
}

}  // namespace

std::vector<Triangulation> parallel_neighbors(const Triangulation& t) {
  auto cands = t.unit_flip_candidates();
  std::vector<std::array<int, 2>> tris;
  tris.reserve(cands.size());
  for (const auto& [rem, add] : cands) tris.push_back(t.edge_triangles(rem));
  std::vector<Triangulation> out;
  std::vector<int> chosen;
  enumerate_subsets(t, cands, tris, 0, chosen, out);
  return out;
}

FlipGraph::FlipGraph(const Triangulation& source, long node_limit) {
  std::deque<int> queue;
  dist_[source.edges()] = 0;
  nodes_.push_back(source);
  queue.push_back(0);
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    int d = dist_.at(nodes_[id].edges());
    for (Triangulation& nb : parallel_neighbors(nodes_[id])) {
      if (dist_.count(nb.edges())) continue;
      if (static_cast<long>(nodes_.size()) >= node_limit) {
        complete_ = false;
        return;
      }
      dist_[nb.edges()] = d + 1;
      nodes_.push_back(std::move(nb));
      queue.push_back(static_cast<int>(nodes_.size()) - 1);
    }
  }
}

int FlipGraph::distance_to(const Triangulation& t) const {
  auto it = dist_.find(t.edges());
  return it == dist_.end() ? -1 : it->second;
}

std::vector<Triangulation> FlipGraph::at_distance(int d) const {
  std::vector<Triangulation> out;
  for (const Triangulation& t : nodes_)
    if (dist_.at(t.edges()) == d) out.push_back(t);
  return out;
}

std::pair<std::vector<Triangulation>, int> FlipGraph::nearest_with_edge(
    const Edge& e) const {
  int best = -1;
  for (const Triangulation& t : nodes_)
    if (t.has_edge(e)) {
      int d = dist_.at(t.edges());
      if (best < 0 || d < best) best = d;
    }
  if (best < 0) throw Error("no reached triangulation contains the edge");
  std::vector<Triangulation> out;
  for (const Triangulation& t : nodes_)
    if (t.has_edge(e) && dist_.at(t.edges()) == best) out.push_back(t);
  return {out, best};
}

int bfs_distance(const Triangulation& a, const Triangulation& b,
                 long node_limit) {
  if (a == b) return 0;
  std::map<std::vector<Edge>, int> dist;
  std::deque<Triangulation> queue;
  dist[a.edges()] = 0;
  queue.push_back(a);
  long seen = 1;
  while (!queue.empty()) {
    Triangulation cur = std::move(queue.front());
    queue.pop_front();
    int d = dist.at(cur.edges());
    for (Triangulation& nb : parallel_neighbors(cur)) {
      if (dist.count(nb.edges())) continue;
      if (nb == b) return d + 1;
      if (++seen > node_limit) throw Error("bfs node limit exhausted");
      dist[nb.edges()] = d + 1;
      queue.push_back(std::move(nb));
    }
  }
  throw Error("target not reachable");  // cannot happen for one point set
}

}  // namespace triflip
