// Acceptance gate: one pass/fail line per criterion, exit code = failures.
// All tolerances are pinned in the criterion functions below.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "rewrite_oracle.hpp"
#include "triflip/bounds.hpp"
#include "triflip/cnf_builder.hpp"
#include "triflip/flip_graph.hpp"
#include "triflip/instance.hpp"
#include "triflip/path_heuristics.hpp"
#include "triflip/pipeline.hpp"
#include "triflip/rewrite.hpp"
#include "triflip/sat_backend.hpp"

using namespace triflip;
using triflip::testing::fan_triangulation;
using triflip::testing::oracle_rewrite_bound;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& msg) {
    ok = false;
    if (detail.empty()) detail = msg;
  }
};

Instance seeded_instance(std::uint64_t seed) {
  int n = 5 + seed % 4;      // 5..8
  int m = 2 + seed % 3;      // 2..4
  int k = 1 + (seed / 3) % 3;  // 1..3
  return generate_random_instance(n, m, k, seed);
}

// The BFS insertion distance: shortest parallel-flip path from t to any
// triangulation containing uv.
int insertion_distance(const Triangulation& t, const Edge& uv) {
  return FlipGraph(t).nearest_with_edge(uv).second;
}

int min_sat_path_length(const Triangulation& a, const Triangulation& b,
                        const EncodeOptions& opts) {
  for (int l = 0; l < 64; ++l) {
    BuiltFormula f = build_path_formula(a, b, l, opts);
    SatResult r = solve_sat(f.cnf);
    if (r.status == SatStatus::UNKNOWN) return -1;
    if (r.status == SatStatus::SAT) return l;
  }
  return -1;
}

// Criterion 1: exact solver equals the brute-force oracle; tolerance 0.
Outcome criterion_oracle_optimality(std::vector<Instance>& instances_out) {
  Outcome out;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Instance inst = seeded_instance(seed);
    auto [obj, center] = brute_force_oracle(inst);
    SolveResult res = exact_solve(inst);
    if (res.status != SolveStatus::OPTIMAL)
      out.fail("seed " + std::to_string(seed) + ": status not OPTIMAL");
    else if (res.solution.objective() != obj)
      out.fail("seed " + std::to_string(seed) + ": exact " +
               std::to_string(res.solution.objective()) + " != oracle " +
               std::to_string(obj));
    else if (!verify_solution(inst, res.solution).valid)
      out.fail("seed " + std::to_string(seed) + ": solution invalid");
    instances_out.push_back(std::move(inst));
  }
  return out;
}

// Criterion 2: pairwise distance equals the BFS distance; SAT at d*, UNSAT at
// d* - 1; tolerance 0, 200 pairs.
Outcome criterion_distance() {
  Outcome out;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Instance inst = generate_random_instance(5 + seed % 4, 2, 1 + seed % 3,
                                             2000 + seed);
    int oracle = bfs_distance(inst.inputs[0], inst.inputs[1]);
    DistanceResult r = pairwise_distance(inst.inputs[0], inst.inputs[1], {}, {});
    if (!r.exact || r.dist != oracle) {
      out.fail("seed " + std::to_string(seed) + ": dist " +
               std::to_string(r.dist) + " oracle " + std::to_string(oracle));
      continue;
    }
    BuiltFormula at = build_path_formula(inst.inputs[0], inst.inputs[1], oracle);
    if (solve_sat(at.cnf).status != SatStatus::SAT)
      out.fail("seed " + std::to_string(seed) + ": not SAT at d*");
    if (oracle > 0) {
      BuiltFormula below =
          build_path_formula(inst.inputs[0], inst.inputs[1], oracle - 1);
      if (solve_sat(below.cnf).status != SatStatus::UNSAT)
        out.fail("seed " + std::to_string(seed) + ": not UNSAT at d*-1");
    }
  }
  return out;
}

// Criterion 3: one parallel flip at most halves a segment's crossing number
// (chi' >= floor(chi / 2)); 10,000 random triples, zero violations.
Outcome criterion_crossing_halving() {
  Outcome out;
  std::mt19937_64 rng(12345);
  int done = 0;
  while (done < 10000) {
    Instance inst = generate_random_instance(6 + rng() % 4, 2, 2 + rng() % 4,
                                             3000 + rng() % 100000);
    const Triangulation& t = inst.inputs[0];
    auto cands = t.unit_flip_candidates();
    if (cands.empty()) continue;
    // Random maximal-ish compatible subset.
    std::shuffle(cands.begin(), cands.end(), rng);
    ParallelFlip pf;
    std::vector<int> used;
    for (const auto& [rem, add] : cands) {
      if (rng() % 2) continue;
      auto tris = t.edge_triangles(rem);
      bool clash = false;
      for (int x : used)
        for (int y : tris)
          if (x == y) clash = true;
      if (clash) continue;
      used.push_back(tris[0]);
      used.push_back(tris[1]);
      pf.removed.push_back(rem);
      pf.added.push_back(add);
    }
    if (pf.removed.empty()) continue;
    std::sort(pf.removed.begin(), pf.removed.end());
    std::sort(pf.added.begin(), pf.added.end());
    Triangulation t2 = t.apply_parallel_flip(pf);
    int n = inst.point_set->size();
    for (int tries = 0; tries < 5 && done < 10000; ++tries) {
      int u = rng() % n, v = rng() % n;
      if (u == v) continue;
      Edge seg(u, v);
      int chi = t.crossing_count(seg);
      int chi2 = t2.crossing_count(seg);
      ++done;
      if (chi2 < chi / 2)
        out.fail("segment (" + std::to_string(seg.a) + "," +
                 std::to_string(seg.b) + "): " + std::to_string(chi) + " -> " +
                 std::to_string(chi2));
    }
  }
  return out;
}

// Criterion 4: cycle packing lower bound vs oracle on the criterion-1
// instances; Hungarian equals permutation brute force on 100 matrices m <= 7.
Outcome criterion_cycle_packing(const std::vector<Instance>& instances) {
  Outcome out;
  for (const Instance& inst : instances) {
    DistanceMatrix dm = distance_matrix(inst.inputs, {}, {});
    if (!dm.all_exact()) {
      out.fail("inexact distance matrix");
      continue;
    }
    auto [obj, center] = brute_force_oracle(inst);
    if (cycle_packing_lb(dm) > obj)
      out.fail("lb " + std::to_string(cycle_packing_lb(dm)) + " > oracle " +
               std::to_string(obj));
  }
  std::mt19937_64 rng(777);
  for (int it = 0; it < 100; ++it) {
    int m = 2 + it % 6;
    DistanceMatrix d = DistanceMatrix::make(m);
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        d.set(i, j, static_cast<int>(rng() % 10), true);
    std::vector<int> perm(m);
    for (int i = 0; i < m; ++i) perm[i] = i;
    long brute = 0;
    do {
      long w = 0;
      for (int i = 0; i < m; ++i)
        if (perm[i] != i) w += d.d(i, perm[i]);
      brute = std::max(brute, w);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (max_cycle_packing_weight(d) != brute)
      out.fail("hungarian mismatch at case " + std::to_string(it));
  }
  return out;
}

// Criterion 5: rewriting system against the unpruned BFS oracle, exhaustive
// for |s| <= 12, plus the pinned values b(LR) = 1 and b(fan of 6) = 3.
Outcome criterion_rewriting() {
  Outcome out;
  if (rewrite_bound_exact(TriString("LR")) != 1) out.fail("b(LR) != 1");
  if (rewrite_bound_exact(TriString("LUUUUUR")) != 3) out.fail("b(fan6) != 3");
  for (int len = 2; len <= 12; ++len)
    for (const TriString& s : all_strings_of_length(len)) {
      int pruned = rewrite_bound_exact(s);
      if (pruned != oracle_rewrite_bound(s.str())) {
        out.fail("pruned mismatch on " + s.str());
        continue;
      }
      // Subword monotonicity: deleting one interior symbol never increases b.
      for (int i = 1; i + 1 < len; ++i) {
        std::string sub = s.str();
        sub.erase(i, 1);
        if (rewrite_bound_exact(TriString(sub)) > pruned)
          out.fail("subword violation on " + s.str());
      }
    }
  return out;
}

// Criterion 6: insertion distance (BFS over the flip graph, SAT spot-checked)
// is never below the string bound; 500 cases, zero violations.
Outcome criterion_insertion_bound() {
  Outcome out;
  std::mt19937_64 rng(999);
  int done = 0, spot = 0;
  while (done < 500) {
    Instance inst = generate_random_instance(6 + rng() % 4, 2, 1 + rng() % 4,
                                             4000 + rng() % 100000);
    const Triangulation& t = inst.inputs[0];
    int n = inst.point_set->size();
    int u = rng() % n, v = rng() % n;
    if (u == v) continue;
    Edge uv(u, v);
    if (t.has_edge(uv)) continue;
    if (t.crossing_count(uv) == 0) continue;  // blocked by a vertex, skip
    int lb = flip_insertion_lb(uv, t);
    int dist;
    try {
      dist = insertion_distance(t, uv);
    } catch (const Error&) {
      continue;  // segment passes through no valid insertion
    }
    ++done;
    if (dist < lb)
      out.fail("insertion distance " + std::to_string(dist) + " < bound " +
               std::to_string(lb));
    if (spot < 25 && dist > 0) {
      // SAT cross-check of the BFS distance against a witness target.
      ++spot;
      Triangulation tt = FlipGraph(t).nearest_with_edge(uv).first.front();
      BuiltFormula at = build_path_formula(t, tt, dist);
      if (solve_sat(at.cnf).status != SatStatus::SAT)
        out.fail("SAT check failed at d*");
      BuiltFormula below = build_path_formula(t, tt, dist - 1);
      if (solve_sat(below.cnf).status == SatStatus::SAT)
        out.fail("SAT found a path below the BFS distance");
    }
  }
  return out;
}

// Criterion 7: minimal path lengths with and without happy edges agree on 200
// pairs; a counterexample is dumped as a reproducible artifact.
Outcome criterion_happy_edges() {
  Outcome out;
  EncodeOptions happy;
  happy.happy_edges = true;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Instance inst = generate_random_instance(5 + seed % 4, 2, 1 + seed % 3,
                                             5000 + seed);
    int plain = min_sat_path_length(inst.inputs[0], inst.inputs[1], {});
    int with = min_sat_path_length(inst.inputs[0], inst.inputs[1], happy);
    if (plain != with) {
      std::string file = "happy_counterexample_" + std::to_string(seed) +
                         ".json";
      std::ofstream(file) << serialize_instance(inst);
      out.fail("lengths " + std::to_string(plain) + " vs " +
               std::to_string(with) + ", instance dumped to " + file);
    }
  }
  return out;
}

// Criterion 8: heuristic within +1 of the oracle distance on >= 90% of 200
// pairs and always valid.
Outcome criterion_heuristic_quality() {
  Outcome out;
  int within = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Instance inst = generate_random_instance(5 + seed % 4, 2, 1 + seed % 3,
                                             6000 + seed);
    Path p = best_heuristic_path(inst.inputs[0], inst.inputs[1]);
    if (!(p.start == inst.inputs[0]) || !(p.end() == inst.inputs[1])) {
      out.fail("invalid heuristic path at seed " + std::to_string(seed));
      continue;
    }
    int d = bfs_distance(inst.inputs[0], inst.inputs[1]);
    if (p.length() < d) {
      out.fail("heuristic beat the oracle at seed " + std::to_string(seed));
      continue;
    }
    if (p.length() <= d + 1) ++within;
  }
  if (within < 180)
    out.fail("only " + std::to_string(within) + "/200 within +1");
  return out;
}

// Criterion 9: improvement operations are monotone and verified over 50
// seeded runs; padding recovery restores the original objective.
Outcome criterion_improvement() {
  Outcome out;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Instance inst = seeded_instance(seed + 60);
    Solution sol = build_initial_solution(inst).best();
    long before = sol.objective();
    Solution trimmed = trim_improve(inst, sol, 2);
    if (trimmed.objective() > before || !verify_solution(inst, trimmed).valid)
      out.fail("trim regression at seed " + std::to_string(seed));
    for (size_t p = 0; p < trimmed.paths.size(); ++p) {
      if (trimmed.paths[p].length() == 0) continue;
      auto dec = improve_decrement(inst, trimmed, static_cast<int>(p));
      if (dec && (dec->objective() >= trimmed.objective() ||
                  !verify_solution(inst, *dec).valid))
        out.fail("decrement regression at seed " + std::to_string(seed));
      break;
    }
  }
  // Padding recovery.
  Instance inst = seeded_instance(5);
  SolveResult res = exact_solve(inst);
  if (res.status == SolveStatus::OPTIMAL) {
    Solution padded = res.solution;
    int p = 0;
    padded.paths[p].flips.push_back(ParallelFlip{});
    auto better = improve_decrement(inst, padded, p);
    if (!better || better->objective() != res.solution.objective())
      out.fail("padding recovery failed");
  } else {
    out.fail("padding fixture not optimal");
  }
  return out;
}

// Criterion 10: serialization round trips and model decoding.
Outcome criterion_round_trips() {
  Outcome out;
  auto canon = [](std::vector<Clause> cs) {
    for (Clause& c : cs) std::sort(c.begin(), c.end());
    std::sort(cs.begin(), cs.end());
    return cs;
  };
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Instance inst = seeded_instance(seed);
    std::string text = serialize_instance(inst);
    if (serialize_instance(parse_instance(text)) != text)
      out.fail("instance round trip at seed " + std::to_string(seed));

    SolveResult res = exact_solve(inst);
    if (!verify_solution(inst, res.solution).valid) {
      out.fail("decoded solution invalid at seed " + std::to_string(seed));
      continue;
    }
    std::string sol_text = serialize_solution(res.solution);
    if (serialize_solution(parse_solution(sol_text, inst)) != sol_text)
      out.fail("solution round trip at seed " + std::to_string(seed));

    BuiltFormula f = build_path_formula(inst.inputs[0], inst.inputs.back(), 3);
    Cnf back = parse_dimacs(emit_dimacs(f.cnf));
    if (back.num_vars != f.cnf.num_vars ||
        canon(back.hard) != canon(f.cnf.hard))
      out.fail("dimacs round trip at seed " + std::to_string(seed));
    add_last_step_minimization(f.cnf, f.vars, 0, 3);
    Cnf wback = parse_wcnf(emit_wcnf(f.cnf));
    if (canon(wback.hard) != canon(f.cnf.hard) ||
        wback.soft.size() != f.cnf.soft.size())
      out.fail("wcnf round trip at seed " + std::to_string(seed));
  }
  return out;
}

int report(int num, const std::string& name, const Outcome& out) {
  std::printf("criterion %d (%s): %s%s%s\n", num, name.c_str(),
              out.ok ? "PASS" : "FAIL", out.detail.empty() ? "" : " - ",
              out.detail.c_str());
  std::fflush(stdout);
  return out.ok ? 0 : 1;
}

}  // namespace

int main() {
  int failures = 0;
  std::vector<Instance> instances;
  failures += report(1, "oracle optimality", criterion_oracle_optimality(instances));
  failures += report(2, "distance correctness", criterion_distance());
  failures += report(3, "crossing halving", criterion_crossing_halving());
  failures += report(4, "cycle packing bound", criterion_cycle_packing(instances));
  failures += report(5, "rewriting system", criterion_rewriting());
  failures += report(6, "insertion bound soundness", criterion_insertion_bound());
  failures += report(7, "happy edges consistency", criterion_happy_edges());
  failures += report(8, "heuristic quality", criterion_heuristic_quality());
  failures += report(9, "improvement monotonicity", criterion_improvement());
  failures += report(10, "round trips", criterion_round_trips());
  return failures;
}
