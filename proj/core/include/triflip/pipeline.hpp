#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "triflip/bounds.hpp"
#include "triflip/cnf_builder.hpp"
#include "triflip/instance.hpp"
#include "triflip/sat_backend.hpp"

namespace triflip {

/// Verified solutions for one instance; best() has minimal objective.
class SolutionPool {
 public:
  /// Verifies and inserts; throws Error for an invalid solution.
  void add(const Instance& inst, Solution sol);
  const Solution& best() const;
  const std::vector<Solution>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<Solution> entries_;
  size_t best_ = 0;
};

/// Progress events as JSON lines: {"t": seconds, "phase": ..., "objective":
/// ..., "bound": ...}.
using ProgressFn = std::function<void(const std::string&)>;

enum class SolveStatus { OPTIMAL, FEASIBLE, UNKNOWN };

struct SolveResult {
  Solution solution;
  SolveStatus status = SolveStatus::UNKNOWN;
  long lower_bound = 0;
};

struct SolveBudget {
  double time_limit = 0;  // seconds of wall clock, 0 = unlimited
  int max_b_levels = 64;  // levels above the initial lower bound
  int jobs = 1;
};

/// Delaunay plus one greedy hill-climb local optimum per power p, flipping the
/// edge maximizing sum over inputs of chi(e)^p - chi(e')^p while positive.
std::vector<Triangulation> candidate_centers(
    const Instance& inst, const std::vector<double>& powers = {0.5, 1, 2, 3});

/// One pool entry per candidate center (paths by best_heuristic_path), plus a
/// refinement round promoting the penultimate triangulations of the best
/// entry's paths to candidate centers.
SolutionPool build_initial_solution(const Instance& inst);

/// All vectors (l_1..l_m) with sum = b and l_i + l_j >= d(i,j), emitted in
/// lexicographic order.
std::vector<std::vector<int>> enumerate_length_vectors(
    int b, const DistanceMatrix& d);

/// The exact loop: exact distance matrix, cycle packing bound b0, then for
/// b = b0, b0+1, ... test every length vector until the first SAT formula.
/// A heuristic solution meeting the current bound is optimal without SAT.
SolveResult exact_solve(const Instance& inst, const SolveBudget& budget = {},
                        const EncodeOptions& opts = {},
                        const SolverConfig& cfg = {},
                        const ProgressFn& progress = nullptr);

/// Re-solves with lengths[path_id] decremented, all other lengths fixed.
/// nullopt when UNSAT or UNKNOWN.
std::optional<Solution> improve_decrement(const Instance& inst,
                                          const Solution& sol, int path_id,
                                          const EncodeOptions& opts = {},
                                          const SolverConfig& cfg = {});

/// Backward MaxSAT sweep over the last r steps of each path, then re-solves
/// the radius-r sub-instance around the center and splices the result.
/// Objective never increases; the original is returned on backend UNKNOWN.
Solution trim_improve(const Instance& inst, const Solution& sol, int r,
                      const EncodeOptions& opts = {},
                      const SolverConfig& cfg = {});

/// Randomized decrement/trim loop within the time budget.
Solution improve_loop(const Instance& inst, Solution sol, double time_limit,
                      std::uint64_t seed, int proximity_k = 3, int trim_r = 2,
                      const EncodeOptions& opts = {},
                      const SolverConfig& cfg = {},
                      const ProgressFn& progress = nullptr);

struct OracleLimits {
  int max_points = 9;
  long node_limit = 2000000;
};

/// Exhaustive ground truth: BFS over the parallel flip graph from every input;
/// the optimum is min over centers C of the distance sum.
std::pair<long, Triangulation> brute_force_oracle(const Instance& inst,
                                                  const OracleLimits& limits = {});

}  // namespace triflip
