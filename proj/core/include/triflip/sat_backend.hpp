#pragma once

#include <optional>
#include <string>
#include <vector>

#include "triflip/cnf.hpp"

namespace triflip {

struct SolverConfig {
  /// Command template with a {cnf} placeholder; empty selects the built-in
  /// solver.
  std::string sat_cmd;
  /// Command template with a {wcnf} placeholder.
  std::string maxsat_cmd;
  double time_limit = 0;  // seconds per call, 0 = none
  std::string workdir;    // empty = system temp dir
  bool keep_files = false;
  int builtin_var_limit = 50000;

  /// sat_cmd / maxsat_cmd from the TRIFLIP_SAT_CMD / TRIFLIP_MAXSAT_CMD
  /// environment variables when unset.
  static SolverConfig from_env();
};

enum class SatStatus { SAT, UNSAT, UNKNOWN };

struct SatResult {
  SatStatus status = SatStatus::UNKNOWN;
  std::vector<bool> model;  // present iff SAT, one value per variable
  std::optional<std::int64_t> cost;  // MaxSAT optimum
  std::string diagnostics;
};

/// Decides a hard-clause formula. External template when configured, built-in
/// solver otherwise. Returned models are verified against the formula.
SatResult solve_sat(const Cnf& cnf, const SolverConfig& cfg = {});

/// Minimizes the weight of violated soft clauses subject to the hard ones.
SatResult solve_maxsat(const Cnf& cnf, const SolverConfig& cfg = {});

/// Complete DPLL with watched literals; deterministic branching (lowest
/// unassigned id, positive first).
SatResult builtin_solve(const Cnf& cnf, int var_limit = 50000);

}  // namespace triflip
