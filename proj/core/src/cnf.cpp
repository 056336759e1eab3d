#include "triflip/cnf.hpp"

#include <sstream>

namespace triflip {

namespace {

void append_clause(std::ostringstream& out, const Clause& c) {
  for (Lit l : c) out << l << " ";
  out << "0\n";
}

}  // namespace

std::string emit_dimacs(const Cnf& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars << " " << cnf.hard.size() << "\n";
  for (const Clause& c : cnf.hard) append_clause(out, c);
  return out.str();
}

std::string emit_wcnf(const Cnf& cnf) {
  std::int64_t top = 1;
  for (const SoftClause& s : cnf.soft) top += s.weight;
  std::ostringstream out;
  out << "p wcnf " << cnf.num_vars << " " << cnf.hard.size() + cnf.soft.size()
      << " " << top << "\n";
  for (const Clause& c : cnf.hard) {
    out << top << " ";
    append_clause(out, c);
  }
  for (const SoftClause& s : cnf.soft) {
    out << s.weight << " ";
    append_clause(out, s.clause);
  }
  return out.str();
}

Cnf parse_dimacs(const std::string& text) {
  Cnf cnf;
  std::istringstream in(text);
  std::string line;
  long declared = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, fmt;
      ls >> p >> fmt >> cnf.num_vars >> declared;
      if (fmt != "cnf") throw Error("not a DIMACS cnf header");
      continue;
    }
    Clause c;
    Lit l;
    while (ls >> l && l != 0) c.push_back(l);
    cnf.hard.push_back(std::move(c));
  }
  if (declared >= 0 && declared != static_cast<long>(cnf.hard.size()))
    throw Error("DIMACS clause count mismatch");
  return cnf;
}

Cnf parse_wcnf(const std::string& text) {
  Cnf cnf;
  std::istringstream in(text);
  std::string line;
  std::int64_t top = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, fmt;
      long declared;
      ls >> p >> fmt >> cnf.num_vars >> declared >> top;
      if (fmt != "wcnf") throw Error("not a WCNF header");
      continue;
    }
    std::int64_t w;
    ls >> w;
    Clause c;
    Lit l;
    while (ls >> l && l != 0) c.push_back(l);
    if (top >= 0 && w >= top)
      cnf.hard.push_back(std::move(c));
    else
      cnf.add_soft(w, std::move(c));
  }
  return cnf;
}

bool model_satisfies(const Cnf& cnf, const std::vector<bool>& model) {
  for (const Clause& c : cnf.hard) {
    bool sat = false;
    for (Lit l : c) {
      int v = l > 0 ? l : -l;
      if (v > static_cast<int>(model.size())) return false;
      if ((l > 0) == model[v - 1]) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

std::int64_t model_cost(const Cnf& cnf, const std::vector<bool>& model) {
  std::int64_t cost = 0;
  for (const SoftClause& s : cnf.soft) {
    bool sat = false;
    for (Lit l : s.clause) {
      int v = l > 0 ? l : -l;
      if ((l > 0) == model[v - 1]) {
        sat = true;
        break;
      }
    }
    if (!sat) cost += s.weight;
  }
  return cost;
}

}  // namespace triflip
