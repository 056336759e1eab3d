#pragma once

#include <map>
#include <vector>

#include "triflip/triangulation.hpp"

namespace triflip {

/// Squeaky-wheel penalty weights on target edges; missing entries count as 1.
using EdgePenalty = std::map<Edge, long>;

/// One greedy parallel step towards the target: builds the flip conflict
/// graph, keeps strictly improving flips (penalty-weighted crossings removed
/// minus added), and greedily extracts a maximal independent set by
/// (weight desc, degree asc, removed edge asc). Falls back to the single best
/// unit flip when no weighted vertex is positive. Requires t != target.
ParallelFlip greedy_parallel_step(const Triangulation& t,
                                  const Triangulation& target,
                                  const EdgePenalty& pen);

/// Iterates greedy steps until the target is reached.
Path greedy_parallel_path(const Triangulation& t0, const Triangulation& target,
                          const EdgePenalty& pen = {});

/// Repeats the greedy path under evolving penalties (target edges inserted in
/// the final step get heavier), keeping the shortest path; stops after
/// max_iters or as soon as the length increases.
Path squeaky_wheel_path(const Triangulation& t0, const Triangulation& target,
                        int max_iters = 16);

/// Best of greedy/squeaky-wheel, run forward and backward.
Path best_heuristic_path(const Triangulation& t0, const Triangulation& target);

}  // namespace triflip
