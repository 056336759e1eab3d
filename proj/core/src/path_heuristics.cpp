#include "triflip/path_heuristics.hpp"

#include <algorithm>
#include <set>

namespace triflip {

namespace {

long penalty_of(const EdgePenalty& pen, const Edge& e) {
  auto it = pen.find(e);
  return it == pen.end() ? 1 : it->second;
}

long weighted_crossings(const Triangulation& target, const EdgePenalty& pen,
                        const Edge& e) {
  long sum = 0;
  for (const Edge& t : target.crossing_edges(e)) sum += penalty_of(pen, t);
  return sum;
}

}  // namespace

ParallelFlip greedy_parallel_step(const Triangulation& t,
                                  const Triangulation& target,
                                  const EdgePenalty& pen) {
  if (t == target) throw Error("greedy step on equal triangulations");
  struct Vertex {
    Edge rem, add;
    long weight;
    std::array<int, 2> tris;
  };
  std::vector<Vertex> vertices;
  for (const auto& [rem, add] : t.unit_flip_candidates()) {
    long w = weighted_crossings(target, pen, rem) -
             weighted_crossings(target, pen, add);
    if (w <= 0) continue;
    vertices.push_back({rem, add, w, t.edge_triangles(rem)});
  }
  if (vertices.empty()) {
    // Guaranteed to exist: a unit flip whose removed edge crosses more target
    // edges than the added one.
    Edge best_rem, best_add;
    long best = 0;
    for (const auto& [rem, add] : t.unit_flip_candidates()) {
      long w = target.crossing_count(rem) - target.crossing_count(add);
      if (w > best) {
        best = w;
        best_rem = rem;
        best_add = add;
      }
    }
    if (best == 0) throw Error("no improving unit flip exists");
    return ParallelFlip{{best_rem}, {best_add}};
  }

  int k = static_cast<int>(vertices.size());
  std::vector<std::vector<int>> adj(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      bool conflict = false;
      for (int a : vertices[i].tris)
        for (int b : vertices[j].tris)
          if (a == b) conflict = true;
      if (conflict) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (vertices[i].weight != vertices[j].weight)
      return vertices[i].weight > vertices[j].weight;
    if (adj[i].size() != adj[j].size()) return adj[i].size() < adj[j].size();
    return vertices[i].rem < vertices[j].rem;
  });
  std::vector<bool> marked(k, false);
  ParallelFlip pf;
  for (int i : order) {
    if (marked[i]) continue;
    marked[i] = true;
    for (int j : adj[i]) marked[j] = true;
    pf.removed.push_back(vertices[i].rem);
    pf.added.push_back(vertices[i].add);
  }
  std::sort(pf.removed.begin(), pf.removed.end());
  std::sort(pf.added.begin(), pf.added.end());
  return pf;
}

Path greedy_parallel_path(const Triangulation& t0, const Triangulation& target,
                          const EdgePenalty& pen) {
  Path path{t0, {}};
  Triangulation cur = t0;
  long cap = 8L * t0.point_set().size() * t0.point_set().size() + 64;
  while (!(cur == target)) {
    ParallelFlip pf = greedy_parallel_step(cur, target, pen);
    cur = cur.apply_parallel_flip(pf);
    path.flips.push_back(std::move(pf));
    if (static_cast<long>(path.flips.size()) > cap)
      throw Error("greedy path failed to terminate");
  }
  return path;
}

Path squeaky_wheel_path(const Triangulation& t0, const Triangulation& target,
                        int max_iters) {
  EdgePenalty pen;
  Path best = greedy_parallel_path(t0, target, pen);
  Path current = best;
  for (int iter = 1; iter < max_iters && current.length() > 0; ++iter) {
    if (!current.flips.empty()) {
      const ParallelFlip& final_step = current.flips.back();
      for (const Edge& e : final_step.added)
        if (target.has_edge(e)) pen[e] = penalty_of(pen, e) + 1;
    }
    Path next = greedy_parallel_path(t0, target, pen);
    if (next.length() < best.length()) best = next;
    if (next.length() > current.length()) break;  // stop when it got worse
    current = std::move(next);
  }
  return best;
}

Path best_heuristic_path(const Triangulation& t0, const Triangulation& target) {
  if (t0 == target) return Path{t0, {}};
  Path best = greedy_parallel_path(t0, target);
  for (Path cand :
       {greedy_parallel_path(target, t0).reversed(),
        squeaky_wheel_path(t0, target), squeaky_wheel_path(target, t0).reversed()})
    if (cand.length() < best.length()) best = std::move(cand);
  return best;
}

}  // namespace triflip
