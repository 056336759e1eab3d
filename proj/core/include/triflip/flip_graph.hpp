#pragma once

#include <map>
#include <vector>

#include "triflip/triangulation.hpp"

namespace triflip {

/// Breadth-first exploration of the parallel flip graph: nodes are
/// triangulations of one point set, neighbors arise from every nonempty set of
/// pairwise compatible unit flips. Exponential in general; intended as an
/// exhaustive oracle on small instances.
class FlipGraph {
 public:
  explicit FlipGraph(const Triangulation& source, long node_limit = 2000000);

  /// Exact parallel flip distance from the source; -1 when the limit cut the
  /// search before reaching t.
  int distance_to(const Triangulation& t) const;

  /// All triangulations at the given distance.
  std::vector<Triangulation> at_distance(int d) const;

  /// Nearest triangulations (by parallel flip distance) containing the edge,
  /// with their distance. Throws when none was reached.
  std::pair<std::vector<Triangulation>, int> nearest_with_edge(
      const Edge& e) const;

  long num_nodes() const { return static_cast<long>(nodes_.size()); }
  bool complete() const { return complete_; }

 private:
  using Key = std::vector<Edge>;
  std::map<Key, int> dist_;
  std::vector<Triangulation> nodes_;
  bool complete_ = true;
};

/// All parallel flip successors of t (every maximal or non-maximal nonempty
/// compatible subset of unit flips), including duplicates removed.
std::vector<Triangulation> parallel_neighbors(const Triangulation& t);

/// Exact pairwise parallel flip distance by BFS from a. Throws when the node
/// limit is exhausted first.
int bfs_distance(const Triangulation& a, const Triangulation& b,
                 long node_limit = 2000000);

}  // namespace triflip
