#include "triflip/sat_backend.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

namespace triflip {

SolverConfig SolverConfig::from_env() {
  SolverConfig cfg;
  if (const char* s = std::getenv("TRIFLIP_SAT_CMD")) cfg.sat_cmd = s;
  if (const char* s = std::getenv("TRIFLIP_MAXSAT_CMD")) cfg.maxsat_cmd = s;
  return cfg;
}

namespace {

// ---------------------------------------------------------------------------
// Built-in DPLL with two watched literals.

class Dpll {
 public:
  explicit Dpll(const Cnf& cnf) : n_(cnf.num_vars) {
    for (const Clause& raw : cnf.hard) {
      Clause c = raw;
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      bool taut = false;
      for (Lit l : c)
        if (std::binary_search(c.begin(), c.end(), -l)) taut = true;
      if (taut) continue;
      if (c.empty()) {
        empty_clause_ = true;
        continue;
      }
      clauses_.push_back(std::move(c));
    }
    watches_.assign(2 * n_ + 2, {});
    assign_.assign(n_ + 1, 0);
    reason_unit_.clear();
    for (int ci = 0; ci < static_cast<int>(clauses_.size()); ++ci) {
      Clause& c = clauses_[ci];
      if (c.size() == 1) {
        initial_units_.push_back(c[0]);
      } else {
        watches_[idx(c[0])].push_back(ci);
        watches_[idx(c[1])].push_back(ci);
      }
    }
  }

  bool solve(std::vector<bool>& model) {
    if (empty_clause_) return false;
    for (Lit u : initial_units_)
      if (!enqueue(u)) return false;
    if (!propagate()) return false;
    // Iterative DFS; decisions in order of lowest unassigned id, positive
    // first, then the negation on backtrack.
    struct Frame {
      int var;
      bool tried_false;
      size_t trail_mark;
    };
    std::vector<Frame> stack;
    while (true) {
      int v = next_unassigned();
      if (v == 0) {
        model.assign(n_, false);
        for (int i = 1; i <= n_; ++i) model[i - 1] = assign_[i] > 0;
        return true;
      }
      stack.push_back({v, false, trail_.size()});
      bool value = true;
      while (true) {
        bool ok = enqueue(value ? v : -v) && propagate();
        if (ok) break;
        // Undo and flip, or backtrack further.
        while (true) {
          Frame& f = stack.back();
          undo_to(f.trail_mark);
          if (!f.tried_false) {
            f.tried_false = true;
            v = f.var;
            value = false;
            break;
          }
          stack.pop_back();
          if (stack.empty()) return false;
        }
      }
    }
  }

 private:
  static int idx(Lit l) { return l > 0 ? 2 * l : -2 * l + 1; }

  int next_unassigned() const {
    for (int v = 1; v <= n_; ++v)
      if (assign_[v] == 0) return v;
    return 0;
  }

  bool enqueue(Lit l) {
    int v = std::abs(l);
    int val = l > 0 ? 1 : -1;
    if (assign_[v] == val) return true;
    if (assign_[v] == -val) return false;
    assign_[v] = val;
    trail_.push_back(v);
    queue_.push_back(l);
    return true;
  }

  bool propagate() {
    while (!queue_.empty()) {
      Lit l = queue_.back();
      queue_.pop_back();
      Lit falsified = -l;
      auto& ws = watches_[idx(falsified)];
      size_t keep = 0;
      for (size_t wi = 0; wi < ws.size(); ++wi) {
        int ci = ws[wi];
        Clause& c = clauses_[ci];
        if (c[0] == falsified) std::swap(c[0], c[1]);
        // c[1] == falsified now (or the clause was already reordered).
        if (value(c[0]) == 1) {
          ws[keep++] = ci;
          continue;
        }
        bool moved = false;
        for (size_t k = 2; k < c.size(); ++k) {
          if (value(c[k]) != -1) {
            std::swap(c[1], c[k]);
            watches_[idx(c[1])].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        // Unit or conflict on c[0].
        ws[keep++] = ci;
        if (value(c[0]) == -1) {
          for (size_t k = wi + 1; k < ws.size(); ++k) ws[keep++] = ws[k];
          ws.resize(keep);
          queue_.clear();
          return false;
        }
        if (!enqueue(c[0])) {
          for (size_t k = wi + 1; k < ws.size(); ++k) ws[keep++] = ws[k];
          ws.resize(keep);
          queue_.clear();
          return false;
        }
      }
      ws.resize(keep);
    }
    return true;
  }

  int value(Lit l) const {
    int v = assign_[std::abs(l)];
    if (v == 0) return 0;
    return (l > 0) == (v > 0) ? 1 : -1;
  }

  void undo_to(size_t mark) {
    while (trail_.size() > mark) {
      assign_[trail_.back()] = 0;
      trail_.pop_back();
    }
    queue_.clear();
  }

  int n_;
  bool empty_clause_ = false;
  std::vector<Clause> clauses_;
  std::vector<std::vector<int>> watches_;
  std::vector<signed char> assign_;
  std::vector<int> trail_;
  std::vector<Lit> queue_;
  std::vector<Lit> initial_units_;
  std::vector<Lit> reason_unit_;
};

// ---------------------------------------------------------------------------
// External solver plumbing.

std::string substitute(const std::string& tmpl, const std::string& key,
                       const std::string& value) {
  std::string out = tmpl;
  auto pos = out.find(key);
  if (pos == std::string::npos) throw Error("solver template lacks " + key);
  out.replace(pos, key.size(), value);
  return out;
}

std::string run_command(const std::string& cmd) {
  std::string full = cmd + " 2>&1";
  FILE* pipe = popen(full.c_str(), "r");
  if (!pipe) throw Error("failed to start solver: " + cmd);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  pclose(pipe);
  return out;
}

std::string write_formula(const SolverConfig& cfg, const std::string& text,
                          const std::string& ext) {
  namespace fs = std::filesystem;
  fs::path dir = cfg.workdir.empty() ? fs::temp_directory_path()
                                     : fs::path(cfg.workdir);
  fs::create_directories(dir);
  size_t h = std::hash<std::string>{}(text);
  char name[64];
  std::snprintf(name, sizeof name, "%016zx%s", h, ext.c_str());
  fs::path file = dir / name;
  std::ofstream(file) << text;
  return file.string();
}

struct ParsedOutput {
  SatStatus status = SatStatus::UNKNOWN;
  bool optimum = false;
  std::vector<bool> model;
  bool has_model = false;
  std::optional<std::int64_t> cost;
};

ParsedOutput parse_solver_output(const std::string& out, int num_vars) {
  ParsedOutput res;
  res.model.assign(num_vars, false);
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("s SATISFIABLE", 0) == 0) res.status = SatStatus::SAT;
    else if (line.rfind("s UNSATISFIABLE", 0) == 0) res.status = SatStatus::UNSAT;
    else if (line.rfind("s OPTIMUM FOUND", 0) == 0) {
      res.status = SatStatus::SAT;
      res.optimum = true;
    } else if (line.rfind("o ", 0) == 0) {
      res.cost = std::stoll(line.substr(2));
    } else if (line.rfind("v ", 0) == 0) {
      std::istringstream ls(line.substr(2));
      std::string tok;
      while (ls >> tok) {
        bool binary = tok.size() > 1 &&
                      tok.find_first_not_of("01") == std::string::npos;
        if (binary) {
          // New-style MaxSAT model: one 0/1 character per variable.
          for (size_t i = 0; i < tok.size() && i < res.model.size(); ++i)
            res.model[i] = tok[i] == '1';
          res.has_model = true;
        } else {
          long l = std::stol(tok);
          if (l == 0) continue;
          int v = static_cast<int>(l > 0 ? l : -l);
          if (v <= num_vars) res.model[v - 1] = l > 0;
          res.has_model = true;
        }
      }
    }
  }
  return res;
}

std::string command_with_limit(const SolverConfig& cfg, std::string cmd) {
  if (cfg.time_limit > 0)
    cmd = "timeout " + std::to_string(cfg.time_limit) + " " + cmd;
  return cmd;
}

void cleanup(const SolverConfig& cfg, const std::string& file) {
  if (!cfg.keep_files) std::filesystem::remove(file);
}

// Sequential counter "at most k of these literals are true".
void add_at_most_k(Cnf& cnf, const std::vector<Lit>& lits, int k) {
  int n = static_cast<int>(lits.size());
  if (k >= n) return;
  if (k == 0) {
    for (Lit l : lits) cnf.add_hard({-l});
    return;
  }
  // s[i][j]: among the first i+1 literals at least j+1 are true.
  std::vector<std::vector<int>> s(n, std::vector<int>(k, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) s[i][j] = ++cnf.num_vars;
  cnf.add_hard({-lits[0], s[0][0]});
  for (int i = 1; i < n; ++i) {
    cnf.add_hard({-lits[i], s[i][0]});
    cnf.add_hard({-s[i - 1][0], s[i][0]});
    for (int j = 1; j < k; ++j) {
      cnf.add_hard({-lits[i], -s[i - 1][j - 1], s[i][j]});
      cnf.add_hard({-s[i - 1][j], s[i][j]});
    }
    cnf.add_hard({-lits[i], -s[i - 1][k - 1]});
  }
}

}  // namespace

SatResult builtin_solve(const Cnf& cnf, int var_limit) {
  if (cnf.num_vars > var_limit)
    throw Error("built-in solver variable limit exceeded");
  SatResult res;
  Dpll solver(cnf);
  std::vector<bool> model;
  if (solver.solve(model)) {
    if (!model_satisfies(cnf, model))
      throw Error("built-in solver produced a bad model");
    res.status = SatStatus::SAT;
    res.model = std::move(model);
  } else {
    res.status = SatStatus::UNSAT;
  }
  return res;
}

SatResult solve_sat(const Cnf& cnf, const SolverConfig& cfg) {
  if (!cnf.soft.empty()) throw Error("solve_sat given soft clauses");
  if (cnf.trivially_false()) {
    SatResult res;
    res.status = SatStatus::UNSAT;
    res.diagnostics = cnf.witness;
    return res;
  }
  if (cfg.sat_cmd.empty()) return builtin_solve(cnf, cfg.builtin_var_limit);

  std::string file = write_formula(cfg, emit_dimacs(cnf), ".cnf");
  SatResult res;
  try {
    std::string out = run_command(
        command_with_limit(cfg, substitute(cfg.sat_cmd, "{cnf}", file)));
    ParsedOutput parsed = parse_solver_output(out, cnf.num_vars);
    if (parsed.status == SatStatus::SAT) {
      if (!parsed.has_model) throw Error("SAT answer without a model");
      if (!model_satisfies(cnf, parsed.model))
        throw Error("external solver model does not satisfy the formula");
      res.status = SatStatus::SAT;
      res.model = std::move(parsed.model);
    } else if (parsed.status == SatStatus::UNSAT) {
      res.status = SatStatus::UNSAT;
    } else {
      res.status = SatStatus::UNKNOWN;
      res.diagnostics = "unparseable or timed-out solver output";
    }
  } catch (const Error&) {
    cleanup(cfg, file);
    throw;
  }
  cleanup(cfg, file);
  return res;
}

SatResult solve_maxsat(const Cnf& cnf, const SolverConfig& cfg) {
  if (cnf.soft.empty()) {
    SatResult res = solve_sat(cnf, cfg);
    if (res.status == SatStatus::SAT) res.cost = 0;
    return res;
  }
  if (cnf.trivially_false()) {
    SatResult res;
    res.status = SatStatus::UNSAT;
    res.diagnostics = cnf.witness;
    return res;
  }
  if (!cfg.maxsat_cmd.empty()) {
    std::string file = write_formula(cfg, emit_wcnf(cnf), ".wcnf");
    SatResult res;
    std::string out = run_command(
        command_with_limit(cfg, substitute(cfg.maxsat_cmd, "{wcnf}", file)));
    cleanup(cfg, file);
    ParsedOutput parsed = parse_solver_output(out, cnf.num_vars);
    if (parsed.optimum && parsed.has_model) {
      if (!model_satisfies(cnf, parsed.model))
        throw Error("external MaxSAT model violates hard clauses");
      std::int64_t actual = model_cost(cnf, parsed.model);
      if (parsed.cost && *parsed.cost != actual) {
        res.status = SatStatus::UNKNOWN;
        res.diagnostics = "reported cost " + std::to_string(*parsed.cost) +
                          " != recomputed " + std::to_string(actual);
        return res;
      }
      res.status = SatStatus::SAT;
      res.model = std::move(parsed.model);
      res.cost = actual;
      return res;
    }
    if (parsed.status == SatStatus::UNSAT) {
      res.status = SatStatus::UNSAT;
      return res;
    }
    res.status = SatStatus::UNKNOWN;
    res.diagnostics = "no optimum reported";
    return res;
  }

  // Built-in fallback: linear search over the violated-soft weight using an
  // at-most-k encoding over unit-weight relaxation copies.
  std::vector<Lit> relax;
  Cnf base;
  base.num_vars = cnf.num_vars;
  base.hard = cnf.hard;
  std::int64_t total = 0;
  for (const SoftClause& s : cnf.soft) {
    Lit r = ++base.num_vars;
    Clause c = s.clause;
    c.push_back(r);
    base.add_hard(std::move(c));
    for (std::int64_t w = 0; w < s.weight; ++w) relax.push_back(r);
    total += s.weight;
  }
  for (std::int64_t k = 0; k <= total; ++k) {
    Cnf attempt = base;
    add_at_most_k(attempt, relax, static_cast<int>(k));
    SatResult r = solve_sat(attempt, cfg);
    if (r.status == SatStatus::SAT) {
      r.model.resize(cnf.num_vars);
      r.cost = model_cost(cnf, r.model);
      return r;
    }
    if (r.status == SatStatus::UNKNOWN) return r;
  }
  SatResult res;
  res.status = SatStatus::UNSAT;
  return res;
}

}  // namespace triflip
