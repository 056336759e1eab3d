#include "triflip/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <random>
#include <set>

#include "json.hpp"

#include "triflip/flip_graph.hpp"
#include "triflip/path_heuristics.hpp"

namespace triflip {

namespace {

using Clock = std::chrono::steady_clock;

struct Progress {
  const ProgressFn& fn;
  Clock::time_point t0 = Clock::now();

  void emit(const std::string& phase, long objective, long bound) const {
    if (!fn) return;
    nlohmann::json j;
    j["t"] = std::chrono::duration<double>(Clock::now() - t0).count();
    j["phase"] = phase;
    j["objective"] = objective;
    j["bound"] = bound;
    fn(j.dump());
  }
};

bool out_of_time(const Clock::time_point& t0, double limit) {
  return limit > 0 &&
         std::chrono::duration<double>(Clock::now() - t0).count() > limit;
}

Solution decode_solution(const Instance& inst, const std::vector<bool>& model,
                         const VarMap& vm) {
  Solution sol;
  sol.instance_name = inst.name;
  for (int p = 0; p < vm.num_paths(); ++p)
    sol.paths.push_back(decode_path(model, vm, p).compressed());
  sol.center = sol.paths[0].end();
  VerifyReport rep = verify_solution(inst, sol);
  if (!rep.valid) throw Error("decoded solution invalid: " + rep.first_violation);
  return sol;
}

}  // namespace

void SolutionPool::add(const Instance& inst, Solution sol) {
  VerifyReport rep = verify_solution(inst, sol);
  if (!rep.valid) throw Error("pool rejects solution: " + rep.first_violation);
  entries_.push_back(std::move(sol));
  if (entries_.back().objective() < entries_[best_].objective())
    best_ = entries_.size() - 1;
}

const Solution& SolutionPool::best() const {
  if (entries_.empty()) throw Error("empty solution pool");
  return entries_[best_];
}

std::vector<Triangulation> candidate_centers(
    const Instance& inst, const std::vector<double>& powers) {
  std::vector<Triangulation> out{delaunay(inst.point_set)};
  auto seen = [&](const Triangulation& t) {
    return std::any_of(out.begin(), out.end(),
                       [&](const Triangulation& o) { return o == t; });
  };
  for (double p : powers) {
    Triangulation cur = out.front();
    long cap = 20L * inst.point_set->size() * inst.point_set->size() + 100;
    for (long step = 0; step < cap; ++step) {
      double best_val = 0;
      Edge best_rem, best_add;
      for (const auto& [rem, add] : cur.unit_flip_candidates()) {
        double val = 0;
        for (const Triangulation& t : inst.inputs)
          val += std::pow(t.crossing_count(rem), p) -
                 std::pow(t.crossing_count(add), p);
        if (val > best_val ||
            (val == best_val && best_val > 0 &&
             std::pair(rem, add) < std::pair(best_rem, best_add))) {
          best_val = val;
          best_rem = rem;
          best_add = add;
        }
      }
      if (best_val <= 0) break;
      cur = cur.apply_parallel_flip(ParallelFlip{{best_rem}, {best_add}});
    }
    if (!seen(cur)) out.push_back(std::move(cur));
  }
  return out;
}

SolutionPool build_initial_solution(const Instance& inst) {
  SolutionPool pool;
  auto evaluate = [&](const Triangulation& center) {
    Solution sol;
    sol.instance_name = inst.name;
    sol.center = center;
    for (const Triangulation& t : inst.inputs)
      sol.paths.push_back(best_heuristic_path(t, center));
    pool.add(inst, std::move(sol));
  };
  for (const Triangulation& c : candidate_centers(inst)) evaluate(c);

  // Refinement: promote the triangulations one flip before the center on each
  // path of the current best entry.
  Solution best = pool.best();
  std::vector<Triangulation> tried;
  for (const Path& path : best.paths) {
    if (path.length() == 0) continue;
    Triangulation penult = path.layers()[path.length() - 1];
    bool dup = penult == best.center ||
               std::any_of(tried.begin(), tried.end(),
                           [&](const Triangulation& t) { return t == penult; });
    if (dup) continue;
    tried.push_back(penult);
    evaluate(penult);
  }
  return pool;
}

std::vector<std::vector<int>> enumerate_length_vectors(int b,
                                                       const DistanceMatrix& d) {
  int m = d.m;
  std::vector<std::vector<int>> out;
  std::vector<int> l(m, 0);
  auto low = [&](int i) {
    int lo = 0;
    for (int j = 0; j < i; ++j) lo = std::max(lo, d.d(i, j) - l[j]);
    return lo;
  };
  auto dfs = [&](auto&& self, int i, int sum) -> void {
    if (i == m - 1) {
      l[i] = b - sum;
      if (l[i] >= low(i)) out.push_back(l);
      return;
    }
    for (l[i] = low(i); sum + l[i] <= b; ++l[i]) {
      int rem_min = 0;
      for (int j = i + 1; j < m; ++j) {
        int lo = 0;
        for (int k = 0; k <= i; ++k) lo = std::max(lo, d.d(j, k) - l[k]);
        rem_min += lo;
      }
      if (sum + l[i] + rem_min > b) continue;
      self(self, i + 1, sum + l[i]);
    }
  };
  if (m == 1) {
    if (b == 0) out.push_back({0});
    return out;
  }
  dfs(dfs, 0, 0);
  return out;
}

SolveResult exact_solve(const Instance& inst, const SolveBudget& budget,
                        const EncodeOptions& opts, const SolverConfig& cfg,
                        const ProgressFn& progress) {
  Progress prog{progress};
  SolveResult res;
  res.solution = build_initial_solution(inst).best();
  res.status = SolveStatus::FEASIBLE;
  prog.emit("pool", res.solution.objective(), 0);

  DistanceMatrix dm = distance_matrix(inst.inputs, opts, cfg, budget.jobs);
  if (!dm.all_exact()) {
    res.status = SolveStatus::UNKNOWN;
    return res;
  }
  long b0 = cycle_packing_lb(dm);
  res.lower_bound = b0;
  prog.emit("lb", res.solution.objective(), b0);

  for (long b = b0; b < b0 + budget.max_b_levels; ++b) {
    if (res.solution.objective() == b) {
      res.status = SolveStatus::OPTIMAL;
      res.lower_bound = b;
      prog.emit("done", b, b);
      return res;
    }
    if (out_of_time(prog.t0, budget.time_limit)) return res;

    bool unknown_seen = false;
    auto vectors = enumerate_length_vectors(static_cast<int>(b), dm);
    size_t i = 0;
    while (i < vectors.size()) {
      size_t batch = std::max(1, budget.jobs);
      size_t end = std::min(vectors.size(), i + batch);
      std::vector<std::future<std::pair<SatResult, BuiltFormula>>> futs;
      for (size_t k = i; k < end; ++k)
        futs.push_back(std::async(
            batch > 1 ? std::launch::async : std::launch::deferred, [&, k] {
              BuiltFormula f = build_solution_formula(inst, vectors[k], opts);
              SatResult r = solve_sat(f.cnf, cfg);
              return std::pair(std::move(r), std::move(f));
            }));
      for (size_t k = i; k < end; ++k) {
        auto [r, f] = futs[k - i].get();
        if (r.status == SatStatus::SAT) {
          Solution sol = decode_solution(inst, r.model, f.vars);
          if (sol.objective() < b)
            throw Error("compressed objective dropped below the lower bound");
          res.solution = std::move(sol);
          res.status = SolveStatus::OPTIMAL;
          res.lower_bound = b;
          prog.emit("done", b, b);
          return res;
        }
        if (r.status == SatStatus::UNKNOWN) unknown_seen = true;
      }
      i = end;
      if (out_of_time(prog.t0, budget.time_limit)) {
        res.status = unknown_seen ? SolveStatus::UNKNOWN : SolveStatus::FEASIBLE;
        return res;
      }
    }
    if (unknown_seen) {
      // Level b is not refuted, so no later level can be proved optimal.
      res.status = SolveStatus::UNKNOWN;
      return res;
    }
    res.lower_bound = b + 1;
    prog.emit("level", res.solution.objective(), b + 1);
  }
  return res;
}

std::optional<Solution> improve_decrement(const Instance& inst,
                                          const Solution& sol, int path_id,
                                          const EncodeOptions& opts,
                                          const SolverConfig& cfg) {
  if (sol.paths[path_id].length() < 1)
    throw Error("cannot decrement an empty path");
  std::vector<int> lengths;
  for (const Path& p : sol.paths) lengths.push_back(p.length());
  lengths[path_id] -= 1;
  BuiltFormula f = build_solution_formula(inst, lengths, opts);
  SatResult r = solve_sat(f.cnf, cfg);
  if (r.status != SatStatus::SAT) return std::nullopt;
  Solution out = decode_solution(inst, r.model, f.vars);
  if (out.objective() >= sol.objective())
    throw Error("decrement produced no improvement");
  return out;
}

Solution trim_improve(const Instance& inst, const Solution& sol, int r,
                      const EncodeOptions& opts, const SolverConfig& cfg) {
  if (r < 1) throw Error("trim radius must be >= 1");
  Solution best = sol;

  // Backward MaxSAT sweep: rebuild the last r steps of each path with a
  // minimal final parallel flip, fixing the penultimate layer each time.
  Solution swept = sol;
  bool sweep_ok = true;
  for (size_t pi = 0; pi < swept.paths.size() && sweep_ok; ++pi) {
    Path& path = swept.paths[pi];
    int len = path.length();
    Triangulation target = path.end();
    std::vector<ParallelFlip> suffix;
    Path prefix = path;
    for (int step = 0; step < r && len - static_cast<int>(suffix.size()) >= 1;
         ++step) {
      int cur_len = len - static_cast<int>(suffix.size());
      BuiltFormula f =
          build_path_formula(path.start, target, cur_len, opts);
      add_last_step_minimization(f.cnf, f.vars, 0, cur_len);
      SatResult res = solve_maxsat(f.cnf, cfg);
      if (res.status != SatStatus::SAT) {
        sweep_ok = false;
        break;
      }
      Path dec = decode_path(res.model, f.vars, 0);
      Triangulation penult = dec.layers()[cur_len - 1];
      suffix.push_back(dec.flips[cur_len - 1]);
      prefix = Path{path.start,
                    std::vector<ParallelFlip>(
                        dec.flips.begin(), dec.flips.begin() + (cur_len - 1))};
      target = penult;
    }
    if (!sweep_ok) break;
    std::vector<ParallelFlip> flips = prefix.flips;
    for (auto it = suffix.rbegin(); it != suffix.rend(); ++it)
      flips.push_back(*it);
    path = Path{path.start, std::move(flips)}.compressed();
  }
  if (sweep_ok) {
    VerifyReport rep = verify_solution(inst, swept);
    if (rep.valid && swept.objective() <= best.objective()) best = swept;
  }

  // Sub-instance around the center: re-solve the radius-r neighborhood and
  // splice the result back onto the untouched outer segments.
  Instance sub;
  sub.name = inst.name + ":trim";
  sub.point_set = inst.point_set;
  std::vector<int> cut;  // outer prefix length per path
  for (const Path& p : best.paths) {
    int keep = std::max(0, p.length() - r);
    cut.push_back(keep);
    sub.inputs.push_back(p.layers()[keep]);
  }
  SolveBudget sub_budget;
  sub_budget.max_b_levels = 8;
  SolveResult sub_res = exact_solve(sub, sub_budget, opts, cfg);
  long inner_old = 0;
  for (size_t i = 0; i < best.paths.size(); ++i)
    inner_old += best.paths[i].length() - cut[i];
  if (sub_res.status != SolveStatus::UNKNOWN &&
      sub_res.solution.objective() <= inner_old) {
    Solution spliced;
    spliced.instance_name = inst.name;
    spliced.center = sub_res.solution.center;
    for (size_t i = 0; i < best.paths.size(); ++i) {
      std::vector<ParallelFlip> flips(best.paths[i].flips.begin(),
                                      best.paths[i].flips.begin() + cut[i]);
      for (const ParallelFlip& pf : sub_res.solution.paths[i].flips)
        flips.push_back(pf);
      spliced.paths.push_back(Path{best.paths[i].start, std::move(flips)});
    }
    VerifyReport rep = verify_solution(inst, spliced);
    if (rep.valid && spliced.objective() <= best.objective())
      best = std::move(spliced);
  }
  return best;
}

Solution improve_loop(const Instance& inst, Solution sol, double time_limit,
                      std::uint64_t seed, int proximity_k, int trim_r,
                      const EncodeOptions& opts, const SolverConfig& cfg,
                      const ProgressFn& progress) {
  Progress prog{progress};
  std::mt19937_64 rng(seed);
  int m = static_cast<int>(sol.paths.size());
  auto with_proximity = [&](const Solution& s) {
    EncodeOptions o = opts;
    if (proximity_k > 0) {
      ProximityRestriction pr;
      pr.max_crossings = proximity_k;
      for (const Path& p : s.paths) pr.layers.push_back(p.layers());
      o.proximity = std::move(pr);
    }
    return o;
  };
  int stale = 0;
  bool trimmed = false;
  while (!out_of_time(prog.t0, time_limit)) {
    std::vector<int> nonzero;
    for (int p = 0; p < m; ++p)
      if (sol.paths[p].length() >= 1) nonzero.push_back(p);
    if (nonzero.empty()) break;
    int p = nonzero[rng() % nonzero.size()];
    auto better = improve_decrement(inst, sol, p, with_proximity(sol), cfg);
    if (better) {
      sol = std::move(*better);
      stale = 0;
      trimmed = false;
      prog.emit("improve", sol.objective(), 0);
      continue;
    }
    if (++stale >= 2 * m) {
      if (trimmed) break;  // local optimum under both moves
      long before = sol.objective();
      sol = trim_improve(inst, sol, trim_r, opts, cfg);
      trimmed = true;
      stale = 0;
      if (sol.objective() < before) prog.emit("trim", sol.objective(), 0);
    }
  }
  return sol;
}

std::pair<long, Triangulation> brute_force_oracle(const Instance& inst,
                                                  const OracleLimits& limits) {
  if (static_cast<int>(inst.point_set->size()) > limits.max_points)
    throw Error("instance too large for the brute-force oracle");
  std::vector<FlipGraph> graphs;
  for (const Triangulation& t : inst.inputs) {
    graphs.emplace_back(t, limits.node_limit);
    if (!graphs.back().complete()) throw Error("oracle node limit exceeded");
  }
  long best = -1;
  std::optional<Triangulation> best_center;
  for (int d = 0;; ++d) {
    std::vector<Triangulation> shell = graphs[0].at_distance(d);
    if (shell.empty()) break;
    // Any center at distance d from input 0 costs at least d, so once the
    // incumbent is <= d no farther shell can beat it.
    if (best >= 0 && best <= d) break;
    for (Triangulation& c : shell) {
      long sum = 0;
      for (const FlipGraph& g : graphs) sum += g.distance_to(c);
      if (best < 0 || sum < best) {
        best = sum;
        best_center = std::move(c);
      }
    }
  }
  if (!best_center) throw Error("oracle found no center");
  return {best, std::move(*best_center)};
}

}  // namespace triflip
