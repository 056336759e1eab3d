#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "triflip/bounds.hpp"
#include "triflip/cnf_builder.hpp"
#include "triflip/flip_graph.hpp"
#include "triflip/sat_backend.hpp"

using namespace triflip;
using namespace triflip::testing;

namespace {

long brute_force_packing(const DistanceMatrix& d) {
  std::vector<int> perm(d.m);
  std::iota(perm.begin(), perm.end(), 0);
  long best = 0;
  do {
    long w = 0;
    for (int i = 0; i < d.m; ++i)
      if (perm[i] != i) w += d.d(i, perm[i]);
    best = std::max(best, w);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

DistanceMatrix random_matrix(std::mt19937_64& rng, int m, int maxd) {
  DistanceMatrix d = DistanceMatrix::make(m);
  std::uniform_int_distribution<int> dist(0, maxd);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) d.set(i, j, dist(rng), true);
  return d;
}

}  // namespace

TEST_CASE("crossing string extraction") {
  SUBCASE("single crossing gives LR") {
    Triangulation t = square_tri(square_points());
    CHECK(extract_crossing_string(Edge(1, 3), t) == TriString("LR"));
  }
  SUBCASE("fan gives six equal interior symbols") {
    Triangulation fan = fan_triangulation();
    // All apexes are the bottom vertex, right of the directed segment 0 -> 7.
    CHECK(extract_crossing_string(Edge(0, 7), fan) == TriString("LDDDDDR"));
    // Walked the other way the apexes lie left.
    CHECK(extract_crossing_string(Edge(0, 7), fan).size() == 7);
  }
  SUBCASE("present edge throws") {
    Triangulation t = square_tri(square_points());
    CHECK_THROWS_AS(extract_crossing_string(Edge(0, 2), t), Error);
  }
}

TEST_CASE("flip insertion lower bound") {
  Triangulation t = square_tri(square_points());
  CHECK(flip_insertion_lb(Edge(0, 2), t) == 0);
  CHECK(flip_insertion_lb(Edge(1, 3), t) == 1);
  CHECK(flip_insertion_lb(Edge(0, 7), fan_triangulation()) == 3);
}

TEST_CASE("fan insertion: SAT refutes length 2, admits length 3") {
  Triangulation fan = fan_triangulation();
  FlipGraph g(fan);
  auto [nearest, d] = g.nearest_with_edge(Edge(0, 7));
  CHECK(d == 3);
  REQUIRE_FALSE(nearest.empty());
  const Triangulation& tt = nearest.front();
  BuiltFormula f2 = build_path_formula(fan, tt, 2);
  CHECK(solve_sat(f2.cnf).status == SatStatus::UNSAT);
  BuiltFormula f3 = build_path_formula(fan, tt, 3);
  CHECK(solve_sat(f3.cnf).status == SatStatus::SAT);
}

TEST_CASE("hungarian equals permutation brute force") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 100; ++it) {
    int m = 2 + it % 6;  // up to 7
    DistanceMatrix d = random_matrix(rng, m, 9);
    CHECK(max_cycle_packing_weight(d) == brute_force_packing(d));
  }
}

TEST_CASE("cycle packing examples") {
  SUBCASE("two inputs") {
    DistanceMatrix d = DistanceMatrix::make(2);
    d.set(0, 1, 5, true);
    CHECK(max_cycle_packing_weight(d) == 10);
    CHECK(cycle_packing_lb(d) == 5);
  }
  SUBCASE("three inputs all distance four") {
    DistanceMatrix d = DistanceMatrix::make(3);
    d.set(0, 1, 4, true);
    d.set(0, 2, 4, true);
    d.set(1, 2, 4, true);
    CHECK(max_cycle_packing_weight(d) == 12);
    CHECK(cycle_packing_lb(d) == 6);
  }
  SUBCASE("odd weight rounds up") {
    DistanceMatrix d = DistanceMatrix::make(3);
    d.set(0, 1, 2, true);
    d.set(0, 2, 1, true);
    d.set(1, 2, 0, true);
    CHECK(cycle_packing_lb(d) == (max_cycle_packing_weight(d) + 1) / 2);
  }
}

TEST_CASE("cycle packing MaxSAT agrees with hungarian") {
  std::mt19937_64 rng(37);
  for (int it = 0; it < 20; ++it) {
    int m = 2 + it % 3;  // keep builtin MaxSAT fast
    DistanceMatrix d = random_matrix(rng, m, 5);
    Cnf cnf = cycle_packing_cnf(d);
    std::int64_t total = 0;
    for (const auto& s : cnf.soft) total += s.weight;
    SatResult r = solve_maxsat(cnf);
    REQUIRE(r.status == SatStatus::SAT);
    CHECK(total - *r.cost == max_cycle_packing_weight(d));
  }
  SUBCASE("wcnf text parses back") {
    DistanceMatrix d = DistanceMatrix::make(2);
    d.set(0, 1, 3, true);
    Cnf back = parse_wcnf(cycle_packing_wcnf(d));
    CHECK(back.num_vars == 2);
    CHECK(back.soft.size() == 2);
  }
}

TEST_CASE("pairwise distance equals BFS oracle") {
  for (int it = 0; it < 12; ++it) {
    Instance inst = generate_random_instance(5 + it % 4, 2, 1 + it % 3,
                                             400 + it);
    DistanceResult r = pairwise_distance(inst.inputs[0], inst.inputs[1], {}, {});
    CHECK(r.exact);
    CHECK(r.dist == bfs_distance(inst.inputs[0], inst.inputs[1]));
    CHECK(r.path.start == inst.inputs[0]);
    CHECK(r.path.end() == inst.inputs[1]);
    CHECK(r.path.length() == r.dist);
  }
}

TEST_CASE("distance matrix is symmetric and parallel-safe") {
  Instance inst = generate_random_instance(7, 4, 2, 55);
  DistanceMatrix serial = distance_matrix(inst.inputs, {}, {}, 1);
  DistanceMatrix parallel = distance_matrix(inst.inputs, {}, {}, 4);
  CHECK(serial.all_exact());
  CHECK(serial.dist == parallel.dist);
  for (int i = 0; i < serial.m; ++i) {
    CHECK(serial.d(i, i) == 0);
    for (int j = 0; j < serial.m; ++j) CHECK(serial.d(i, j) == serial.d(j, i));
  }
}
