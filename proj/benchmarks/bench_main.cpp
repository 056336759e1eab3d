#include <benchmark/benchmark.h>

#include "triflip/bounds.hpp"
#include "triflip/cnf_builder.hpp"
#include "triflip/instance.hpp"
#include "triflip/path_heuristics.hpp"
#include "triflip/rewrite.hpp"
#include "triflip/sat_backend.hpp"

namespace {

using namespace triflip;

Instance bench_instance(int n, int m, int k) {
  return generate_random_instance(n, m, k, 42);
}

void BM_Orient(benchmark::State& state) {
  Point a{0, 0}, b{1000000007, 999999937}, c{123456789, 987654321};
  for (auto _ : state) benchmark::DoNotOptimize(orient(a, b, c));
}
BENCHMARK(BM_Orient);

void BM_Incircle(benchmark::State& state) {
  Point a{0, 0}, b{1000000007, 0}, c{0, 999999937}, d{123456789, 987654321};
  for (auto _ : state) benchmark::DoNotOptimize(incircle(a, b, c, d));
}
BENCHMARK(BM_Incircle);

void BM_Delaunay(benchmark::State& state) {
  Instance inst = bench_instance(static_cast<int>(state.range(0)), 2, 0);
  for (auto _ : state) benchmark::DoNotOptimize(delaunay(inst.point_set));
}
BENCHMARK(BM_Delaunay)->Arg(16)->Arg(32)->Arg(64);

void BM_CrossingCount(benchmark::State& state) {
  Instance inst = bench_instance(32, 2, 4);
  const Triangulation& t = inst.inputs[0];
  int n = static_cast<int>(inst.point_set->size());
  for (auto _ : state) {
    long sum = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) sum += t.crossing_count(Edge(i, j));
    benchmark::DoNotOptimize(sum);
  }
}
BENCHMARK(BM_CrossingCount);

void BM_GreedyPath(benchmark::State& state) {
  Instance inst =
      bench_instance(static_cast<int>(state.range(0)), 2, 6);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        greedy_parallel_path(inst.inputs[0], inst.inputs[1]));
}
BENCHMARK(BM_GreedyPath)->Arg(16)->Arg(32);

void BM_RewriteBoundExact(benchmark::State& state) {
  TriString s("LUDUDUDUDUDUR");
  for (auto _ : state) benchmark::DoNotOptimize(rewrite_bound_exact(s));
}
BENCHMARK(BM_RewriteBoundExact);

void BM_BuildPathFormula(benchmark::State& state) {
  Instance inst = bench_instance(12, 2, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        build_path_formula(inst.inputs[0], inst.inputs[1], 4));
}
BENCHMARK(BM_BuildPathFormula);

void BM_BuiltinDpll(benchmark::State& state) {
  Instance inst = bench_instance(10, 2, 2);
  BuiltFormula f = build_path_formula(inst.inputs[0], inst.inputs[1], 3);
  for (auto _ : state) benchmark::DoNotOptimize(builtin_solve(f.cnf));
}
BENCHMARK(BM_BuiltinDpll);

}  // namespace

BENCHMARK_MAIN();
