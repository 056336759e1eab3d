#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "triflip/bounds.hpp"
#include "triflip/cnf_builder.hpp"
#include "triflip/instance.hpp"
#include "triflip/pipeline.hpp"
#include "triflip/rewrite.hpp"

namespace {

using nlohmann::json;
using namespace triflip;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

struct Common {
  int jobs = 0;
  bool progress = false;
  double time_limit = 0;
  bool happy = false;
  bool keep_cnf = false;
  std::string sat_cmd, maxsat_cmd;
  std::string output;

  SolverConfig solver() const {
    SolverConfig cfg = SolverConfig::from_env();
    if (!sat_cmd.empty()) cfg.sat_cmd = sat_cmd;
    if (!maxsat_cmd.empty()) cfg.maxsat_cmd = maxsat_cmd;
    cfg.keep_files = keep_cnf;
    if (time_limit > 0) cfg.time_limit = time_limit;
    return cfg;
  }
  EncodeOptions encode() const {
    EncodeOptions o;
    o.happy_edges = happy;
    return o;
  }
  int effective_jobs() const {
    if (jobs > 0) return jobs;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
  }
  ProgressFn progress_fn() const {
    if (!progress) return nullptr;
    return [](const std::string& line) { std::cerr << line << "\n"; };
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--jobs", c.jobs, "worker count (0 = hardware)");
  cmd->add_flag("--progress", c.progress, "JSON-lines progress on stderr");
  cmd->add_option("--time-limit", c.time_limit, "wall clock seconds");
  cmd->add_flag("--happy", c.happy, "enable happy-edge elimination");
  cmd->add_flag("--keep-cnf", c.keep_cnf, "keep generated CNF/WCNF files");
  cmd->add_option("--sat-cmd", c.sat_cmd, "SAT solver template with {cnf}");
  cmd->add_option("--maxsat-cmd", c.maxsat_cmd,
                  "MaxSAT solver template with {wcnf}");
  cmd->add_option("-o,--output", c.output, "output file (default stdout)");
}

std::string summary(const Solution& sol, long lower_bound, bool optimal) {
  json j;
  j["objective"] = sol.objective();
  j["lower_bound"] = lower_bound;
  j["optimal"] = optimal;
  return j.dump() + "\n";
}

void write_solution(const Instance& inst, const Solution& sol,
                    const std::string& output) {
  VerifyReport rep = verify_solution(inst, sol);
  if (!rep.valid) throw Error("refusing to emit invalid solution: " +
                              rep.first_violation);
  spit(output, serialize_solution(sol));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parallel flip distance solver for triangulations"};
  app.require_subcommand(1);

  Common c;
  std::string instance_path, solution_path;
  int from = 0, to = 1;
  int gen_n = 8, gen_m = 2, gen_k = 2;
  std::uint64_t seed = 1;
  int proximity_k = 3, trim_r = 2;
  int svg_tri = -1;
  bool svg_center = false;
  std::string svg_solution;
  int max_len = 12;

  auto* solve = app.add_subcommand("solve", "heuristic pipeline + improvement");
  solve->add_option("instance", instance_path)->required();
  solve->add_option("--seed", seed);
  add_common(solve, c);

  auto* exact = app.add_subcommand("exact", "exact optimality loop");
  exact->add_option("instance", instance_path)->required();
  add_common(exact, c);

  auto* verify = app.add_subcommand("verify", "verify a solution");
  verify->add_option("instance", instance_path)->required();
  verify->add_option("solution", solution_path)->required();
  add_common(verify, c);

  auto* distance = app.add_subcommand("distance", "pairwise flip distance");
  distance->add_option("instance", instance_path)->required();
  distance->add_option("--from", from)->required();
  distance->add_option("--to", to)->required();
  add_common(distance, c);

  auto* lb = app.add_subcommand("lb", "cycle-packing lower bound");
  lb->add_option("instance", instance_path)->required();
  add_common(lb, c);

  auto* improve = app.add_subcommand("improve", "SAT improvement loop");
  improve->add_option("instance", instance_path)->required();
  improve->add_option("solution", solution_path)->required();
  improve->add_option("--proximity-k", proximity_k);
  improve->add_option("--trim-r", trim_r);
  improve->add_option("--seed", seed);
  add_common(improve, c);

  auto* gen = app.add_subcommand("gen", "random instance");
  gen->add_option("--n", gen_n);
  gen->add_option("--m", gen_m);
  gen->add_option("--k", gen_k);
  gen->add_option("--seed", seed);
  add_common(gen, c);

  auto* svg = app.add_subcommand("svg", "SVG export");
  svg->add_option("instance", instance_path)->required();
  svg->add_option("--triangulation", svg_tri);
  svg->add_option("--solution", svg_solution);
  svg->add_flag("--center", svg_center);
  add_common(svg, c);

  auto* btable = app.add_subcommand("bound-table", "precompute string bounds");
  btable->add_option("--max-len", max_len);
  add_common(btable, c);

  CLI11_PARSE(app, argc, argv);

  try {
    SolverConfig cfg = c.solver();
    EncodeOptions opts = c.encode();

    if (*solve) {
      Instance inst = parse_instance(slurp(instance_path));
      Solution sol = build_initial_solution(inst).best();
      double budget = c.time_limit > 0 ? c.time_limit : 30;
      sol = improve_loop(inst, std::move(sol), budget, seed, proximity_k,
                         trim_r, opts, cfg, c.progress_fn());
      DistanceMatrix dm =
          distance_matrix(inst.inputs, opts, cfg, c.effective_jobs());
      long bound = dm.all_exact() ? cycle_packing_lb(dm) : 0;
      write_solution(inst, sol, c.output);
      std::cout << summary(sol, bound, sol.objective() == bound);
      return 0;
    }
    if (*exact) {
      Instance inst = parse_instance(slurp(instance_path));
      SolveBudget budget;
      budget.time_limit = c.time_limit;
      budget.jobs = c.effective_jobs();
      SolveResult res = exact_solve(inst, budget, opts, cfg, c.progress_fn());
      write_solution(inst, res.solution, c.output);
      std::cout << summary(res.solution, res.lower_bound,
                           res.status == SolveStatus::OPTIMAL);
      return res.status == SolveStatus::OPTIMAL ? 0 : 1;
    }
    if (*verify) {
      Instance inst = parse_instance(slurp(instance_path));
      std::string text = slurp(solution_path);
      VerifyReport rep;
      try {
        Solution sol = parse_solution(text, inst);
        rep = verify_solution(inst, sol);
      } catch (const Error& e) {
        // A solution that cannot even be replayed against this instance is
        // a verification failure, not a tool error.
        rep.valid = false;
        rep.first_violation = e.what();
      }
      json j;
      j["valid"] = rep.valid;
      j["objective"] = rep.objective;
      if (!rep.valid) j["violation"] = rep.first_violation;
      std::cout << j.dump() << "\n";
      return rep.valid ? 0 : 2;
    }
    if (*distance) {
      Instance inst = parse_instance(slurp(instance_path));
      int m = static_cast<int>(inst.inputs.size());
      if (from < 0 || from >= m || to < 0 || to >= m)
        throw Error("--from/--to out of range");
      DistanceResult r =
          pairwise_distance(inst.inputs[from], inst.inputs[to], opts, cfg);
      json j;
      j["distance"] = r.dist;
      j["exact"] = r.exact;
      std::cout << j.dump() << "\n";
      Solution witness;
      witness.instance_name = inst.name;
      witness.center = r.path.end();
      witness.paths = {r.path};
      spit(c.output, serialize_solution(witness));
      return 0;
    }
    if (*lb) {
      Instance inst = parse_instance(slurp(instance_path));
      DistanceMatrix dm =
          distance_matrix(inst.inputs, opts, cfg, c.effective_jobs());
      json j;
      j["lower_bound"] = cycle_packing_lb(dm);
      j["exact"] = dm.all_exact();
      j["distances"] = json::array();
      for (int i = 0; i < dm.m; ++i)
        for (int k = i + 1; k < dm.m; ++k)
          j["distances"].push_back({{"from", i}, {"to", k},
                                    {"d", dm.d(i, k)},
                                    {"exact", dm.is_exact(i, k)}});
      std::cout << j.dump() << "\n";
      return 0;
    }
    if (*improve) {
      Instance inst = parse_instance(slurp(instance_path));
      Solution sol = parse_solution(slurp(solution_path), inst);
      VerifyReport rep = verify_solution(inst, sol);
      if (!rep.valid) throw Error("input solution invalid: " +
                                  rep.first_violation);
      double budget = c.time_limit > 0 ? c.time_limit : 30;
      sol = improve_loop(inst, std::move(sol), budget, seed, proximity_k,
                         trim_r, opts, cfg, c.progress_fn());
      write_solution(inst, sol, c.output);
      std::cout << summary(sol, 0, false);
      return 0;
    }
    if (*gen) {
      Instance inst = generate_random_instance(gen_n, gen_m, gen_k, seed);
      spit(c.output, serialize_instance(inst));
      return 0;
    }
    if (*svg) {
      Instance inst = parse_instance(slurp(instance_path));
      if (!svg_solution.empty() && svg_center) {
        Solution sol = parse_solution(slurp(svg_solution), inst);
        spit(c.output, export_svg(sol.center));
      } else {
        int t = svg_tri < 0 ? 0 : svg_tri;
        if (t >= static_cast<int>(inst.inputs.size()))
          throw Error("--triangulation out of range");
        spit(c.output, export_svg(inst.inputs[t]));
      }
      return 0;
    }
    if (*btable) {
      BoundTable table = precompute_bound_table(max_len);
      spit(c.output, table.store());
      return 0;
    }
  } catch (const std::exception& e) {
    json j;
    j["error"] = e.what();
    std::cerr << j.dump() << "\n";
    return 1;
  }
  return 1;
}
