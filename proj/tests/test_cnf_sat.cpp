#include <algorithm>
#include <random>

#include "doctest.h"
#include "triflip/cnf.hpp"
#include "triflip/sat_backend.hpp"

using namespace triflip;

namespace {

// Clause multiset, order-insensitive within and across clauses.
std::vector<Clause> canon(std::vector<Clause> cs) {
  for (Clause& c : cs) std::sort(c.begin(), c.end());
  std::sort(cs.begin(), cs.end());
  return cs;
}

Cnf random_cnf(std::mt19937_64& rng, int vars, int clauses, int width) {
  Cnf cnf;
  cnf.num_vars = vars;
  std::uniform_int_distribution<int> v(1, vars);
  std::uniform_int_distribution<int> w(1, width);
  std::uniform_int_distribution<int> sign(0, 1);
  for (int i = 0; i < clauses; ++i) {
    Clause c;
    int k = w(rng);
    for (int j = 0; j < k; ++j) c.push_back(sign(rng) ? v(rng) : -v(rng));
    cnf.add_hard(std::move(c));
  }
  return cnf;
}

bool brute_force_sat(const Cnf& cnf) {
  for (int mask = 0; mask < (1 << cnf.num_vars); ++mask) {
    std::vector<bool> model(cnf.num_vars);
    for (int v = 0; v < cnf.num_vars; ++v) model[v] = (mask >> v) & 1;
    if (model_satisfies(cnf, model)) return true;
  }
  return false;
}

std::int64_t brute_force_min_cost(const Cnf& cnf) {
  std::int64_t best = -1;
  for (int mask = 0; mask < (1 << cnf.num_vars); ++mask) {
    std::vector<bool> model(cnf.num_vars);
    for (int v = 0; v < cnf.num_vars; ++v) model[v] = (mask >> v) & 1;
    if (!model_satisfies(cnf, model)) continue;
    std::int64_t cost = model_cost(cnf, model);
    if (best < 0 || cost < best) best = cost;
  }
  return best;
}

}  // namespace

TEST_CASE("dimacs emission") {
  Cnf cnf;
  cnf.num_vars = 1;
  cnf.add_hard({1});
  CHECK(emit_dimacs(cnf) == "p cnf 1 1\n1 0\n");
  SUBCASE("empty clause") {
    cnf.add_hard({});
    CHECK(emit_dimacs(cnf).find("\n0\n") != std::string::npos);
    CHECK(builtin_solve(cnf).status == SatStatus::UNSAT);
  }
}

TEST_CASE("dimacs and wcnf round trip") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 50; ++it) {
    Cnf cnf = random_cnf(rng, 6, 12, 4);
    cnf.add_soft(2, {1, -2});
    cnf.add_soft(7, {-3});
    Cnf back = parse_dimacs(emit_dimacs(cnf));
    CHECK(back.num_vars == cnf.num_vars);
    CHECK(canon(back.hard) == canon(cnf.hard));

    Cnf wback = parse_wcnf(emit_wcnf(cnf));
    CHECK(wback.num_vars == cnf.num_vars);
    CHECK(canon(wback.hard) == canon(cnf.hard));
    REQUIRE(wback.soft.size() == cnf.soft.size());
    std::int64_t total = 0, wtotal = 0;
    for (const auto& s : cnf.soft) total += s.weight;
    for (const auto& s : wback.soft) wtotal += s.weight;
    CHECK(total == wtotal);
  }
}

TEST_CASE("builtin solver basics") {
  SUBCASE("unit conflict") {
    Cnf cnf;
    cnf.num_vars = 1;
    cnf.add_hard({1});
    cnf.add_hard({-1});
    CHECK(builtin_solve(cnf).status == SatStatus::UNSAT);
  }
  SUBCASE("simple SAT with forced literal") {
    Cnf cnf;
    cnf.num_vars = 2;
    cnf.add_hard({1, 2});
    cnf.add_hard({-1});
    SatResult r = builtin_solve(cnf);
    REQUIRE(r.status == SatStatus::SAT);
    CHECK_FALSE(r.model[0]);
    CHECK(r.model[1]);
  }
  SUBCASE("empty formula") {
    Cnf cnf;
    SatResult r = builtin_solve(cnf);
    CHECK(r.status == SatStatus::SAT);
    CHECK(r.model.empty());
  }
  SUBCASE("pigeonhole 4 into 3 is UNSAT") {
    // var(p, h) = pigeon p in hole h.
    Cnf cnf;
    auto var = [](int p, int h) { return p * 3 + h + 1; };
    cnf.num_vars = 12;
    for (int p = 0; p < 4; ++p)
      cnf.add_hard({var(p, 0), var(p, 1), var(p, 2)});
    for (int h = 0; h < 3; ++h)
      for (int p = 0; p < 4; ++p)
        for (int q = p + 1; q < 4; ++q)
          cnf.add_hard({-var(p, h), -var(q, h)});
    CHECK(builtin_solve(cnf).status == SatStatus::UNSAT);
  }
}

TEST_CASE("builtin solver agrees with brute force") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 300; ++it) {
    Cnf cnf = random_cnf(rng, 8, 20, 3);
    SatResult r = builtin_solve(cnf);
    bool expect = brute_force_sat(cnf);
    CHECK((r.status == SatStatus::SAT) == expect);
    if (r.status == SatStatus::SAT) CHECK(model_satisfies(cnf, r.model));
  }
}

TEST_CASE("maxsat basics") {
  SUBCASE("hard forces a violated soft") {
    Cnf cnf;
    cnf.num_vars = 1;
    cnf.add_hard({1});
    cnf.add_soft(1, {-1});
    SatResult r = solve_maxsat(cnf);
    REQUIRE(r.status == SatStatus::SAT);
    CHECK(r.cost == 1);
  }
  SUBCASE("compatible softs cost nothing") {
    Cnf cnf;
    cnf.num_vars = 2;
    cnf.add_hard({1});
    cnf.add_soft(3, {2});
    SatResult r = solve_maxsat(cnf);
    REQUIRE(r.status == SatStatus::SAT);
    CHECK(r.cost == 0);
  }
  SUBCASE("hard UNSAT propagates") {
    Cnf cnf;
    cnf.num_vars = 1;
    cnf.add_hard({1});
    cnf.add_hard({-1});
    cnf.add_soft(1, {1});
    CHECK(solve_maxsat(cnf).status == SatStatus::UNSAT);
  }
}

TEST_CASE("maxsat agrees with brute force") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 100; ++it) {
    Cnf cnf = random_cnf(rng, 6, 8, 3);
    std::uniform_int_distribution<int> v(1, 6), w(1, 5), sign(0, 1);
    for (int s = 0; s < 4; ++s)
      cnf.add_soft(w(rng), {sign(rng) ? v(rng) : -v(rng)});
    std::int64_t expect = brute_force_min_cost(cnf);
    SatResult r = solve_maxsat(cnf);
    if (expect < 0) {
      CHECK(r.status == SatStatus::UNSAT);
    } else {
      REQUIRE(r.status == SatStatus::SAT);
      CHECK(r.cost == expect);
      CHECK(model_satisfies(cnf, r.model));
      CHECK(model_cost(cnf, r.model) == expect);
    }
  }
}

TEST_CASE("external solver template with system tools") {
  // A fake "solver" that always answers SAT with an all-true model would be
  // caught by model verification; a correct trivial formula passes.
  Cnf cnf;
  cnf.num_vars = 2;
  cnf.add_hard({1});
  cnf.add_hard({2});
  SolverConfig cfg;
  cfg.sat_cmd = "printf 's SATISFIABLE\\nv 1 2 0\\n' # {cnf}";
  SatResult r = solve_sat(cnf, cfg);
  REQUIRE(r.status == SatStatus::SAT);
  CHECK(r.model == std::vector<bool>{true, true});

  SUBCASE("lying solver is rejected") {
    Cnf bad;
    bad.num_vars = 1;
    bad.add_hard({-1});
    SolverConfig lie;
    lie.sat_cmd = "printf 's SATISFIABLE\\nv 1 0\\n' # {cnf}";
    CHECK_THROWS_AS(solve_sat(bad, lie), Error);
  }
  SUBCASE("garbage output becomes UNKNOWN") {
    SolverConfig junk;
    junk.sat_cmd = "printf 'c nothing useful\\n' # {cnf}";
    CHECK(solve_sat(cnf, junk).status == SatStatus::UNKNOWN);
  }
}
