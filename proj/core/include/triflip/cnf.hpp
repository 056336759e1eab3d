#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "triflip/geometry.hpp"

namespace triflip {

using Lit = int;  // signed variable id, never 0
using Clause = std::vector<Lit>;

struct SoftClause {
  std::int64_t weight = 1;  // positive
  Clause clause;
  friend bool operator==(const SoftClause&, const SoftClause&) = default;
};

struct Cnf {
  int num_vars = 0;
  std::vector<Clause> hard;
  std::vector<SoftClause> soft;
  /// Set when the formula was recognized as unsatisfiable at build time; the
  /// hard list then contains an empty clause.
  std::string witness;

  void add_hard(Clause c) { hard.push_back(std::move(c)); }
  void add_soft(std::int64_t w, Clause c) {
    soft.push_back(SoftClause{w, std::move(c)});
  }
  bool trivially_false() const {
    for (const Clause& c : hard)
      if (c.empty()) return true;
    return false;
  }
};

std::string emit_dimacs(const Cnf& cnf);
/// Classic WCNF: "p wcnf V C TOP" with TOP = 1 + sum of soft weights; hard
/// clauses carry weight TOP.
std::string emit_wcnf(const Cnf& cnf);

Cnf parse_dimacs(const std::string& text);
Cnf parse_wcnf(const std::string& text);

/// True when every hard clause is satisfied. model[v-1] is the value of v.
bool model_satisfies(const Cnf& cnf, const std::vector<bool>& model);
/// Total weight of violated soft clauses.
std::int64_t model_cost(const Cnf& cnf, const std::vector<bool>& model);

}  // namespace triflip
