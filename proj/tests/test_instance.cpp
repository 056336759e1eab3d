#include "doctest.h"
#include "helpers.hpp"
#include "triflip/instance.hpp"

using namespace triflip;
using namespace triflip::testing;

namespace {

Instance square_instance() {
  Instance inst;
  inst.name = "square";
  inst.point_set = square_points();
  inst.inputs.push_back(square_tri(inst.point_set, true));
  inst.inputs.push_back(square_tri(inst.point_set, false));
  return inst;
}

}  // namespace

TEST_CASE("instance parse and round trip") {
  Instance inst = square_instance();
  std::string text = serialize_instance(inst);
  Instance back = parse_instance(text);
  CHECK(back.name == inst.name);
  CHECK(back.point_set->points() == inst.point_set->points());
  REQUIRE(back.inputs.size() == 2);
  CHECK(back.inputs[0] == inst.inputs[0]);
  CHECK(back.inputs[1] == inst.inputs[1]);
  CHECK(serialize_instance(back) == text);
}

TEST_CASE("instance parse rejects crossing edges") {
  std::string bad = R"({"name":"bad",
    "points":[[0,0],[10,0],[10,10],[0,10]],
    "triangulations":[
      [[0,1],[1,2],[2,3],[0,3],[0,2]],
      [[0,1],[1,2],[2,3],[0,3],[0,2],[1,3]]]})";
  CHECK_THROWS_WITH_AS(parse_instance(bad),
                       doctest::Contains("crossing"), Error);
}

TEST_CASE("solution round trip and verification") {
  Instance inst = square_instance();
  Solution sol;
  sol.instance_name = inst.name;
  sol.center = inst.inputs[1];
  sol.paths.push_back(
      Path{inst.inputs[0], {ParallelFlip{{Edge(0, 2)}, {Edge(1, 3)}}}});
  sol.paths.push_back(Path{inst.inputs[1], {}});

  VerifyReport rep = verify_solution(inst, sol);
  CHECK(rep.valid);
  CHECK(rep.objective == 1);

  std::string text = serialize_solution(sol);
  Solution back = parse_solution(text, inst);
  CHECK(back.center == sol.center);
  CHECK(back.objective() == 1);
  CHECK(serialize_solution(back) == text);
}

TEST_CASE("verify rejects broken solutions") {
  Instance inst = square_instance();
  SUBCASE("wrong start") {
    Solution sol;
    sol.instance_name = inst.name;
    sol.center = inst.inputs[0];
    sol.paths = {Path{inst.inputs[0], {}}, Path{inst.inputs[0], {}}};
    CHECK_FALSE(verify_solution(inst, sol).valid);
  }
  SUBCASE("paths end at different centers") {
    Solution sol;
    sol.instance_name = inst.name;
    sol.center = inst.inputs[0];
    sol.paths = {Path{inst.inputs[0], {}}, Path{inst.inputs[1], {}}};
    auto rep = verify_solution(inst, sol);
    CHECK_FALSE(rep.valid);
    CHECK_FALSE(rep.first_violation.empty());
  }
  SUBCASE("invalid flip in a path") {
    Solution sol;
    sol.instance_name = inst.name;
    sol.center = inst.inputs[0];
    sol.paths = {
        Path{inst.inputs[0], {ParallelFlip{{Edge(0, 1)}, {Edge(1, 3)}}}},
        Path{inst.inputs[1], {ParallelFlip{{Edge(1, 3)}, {Edge(0, 2)}}}}};
    CHECK_FALSE(verify_solution(inst, sol).valid);
  }
  SUBCASE("strict mode rejects stationary flips") {
    Solution sol;
    sol.instance_name = inst.name;
    sol.center = inst.inputs[0];
    sol.paths = {Path{inst.inputs[0], {ParallelFlip{}}},
                 Path{inst.inputs[1], {ParallelFlip{{Edge(1, 3)}, {Edge(0, 2)}}}}};
    CHECK(verify_solution(inst, sol).valid);
    CHECK_FALSE(verify_solution(inst, sol, true).valid);
  }
}

TEST_CASE("random instance generator") {
  SUBCASE("deterministic for fixed seed") {
    Instance a = generate_random_instance(8, 3, 2, 5);
    Instance b = generate_random_instance(8, 3, 2, 5);
    CHECK(serialize_instance(a) == serialize_instance(b));
  }
  SUBCASE("k = 0 gives identical Delaunay inputs") {
    Instance inst = generate_random_instance(8, 3, 0, 9);
    for (const Triangulation& t : inst.inputs) CHECK(t == inst.inputs[0]);
  }
  SUBCASE("inputs always validate") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      Instance inst = generate_random_instance(7, 3, 3, seed);
      CHECK(inst.inputs.size() == 3);
      for (const Triangulation& t : inst.inputs)
        CHECK(validate_triangulation(*inst.point_set, t.edges()).ok);
    }
  }
}

TEST_CASE("svg export") {
  Triangulation t = delaunay(make_points({{0, 0}, {10, 0}, {5, 9}}));
  std::string svg = export_svg(t);
  CHECK(svg.find("<svg") != std::string::npos);
  size_t lines = 0, pos = 0;
  while ((pos = svg.find("<line", pos)) != std::string::npos) {
    ++lines;
    pos += 5;
  }
  CHECK(lines == 3);
}
