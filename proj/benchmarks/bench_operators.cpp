#include <benchmark/benchmark.h>

#include "amalgam/bmo.hpp"
#include "amalgam/harness.hpp"
#include "amalgam/operators.hpp"

using namespace amalgam;

static void BM_FractionalIntegral1D(benchmark::State& state) {
  const Grid g = make_grid({{-8, 8}}, {state.range(0)});
  const GridFunction f = random_function(g, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fractional_integral(f, 0.5));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FractionalIntegral1D)->RangeMultiplier(2)->Range(256, 4096)->Complexity(benchmark::oNSquared);

static void BM_FractionalIntegral2D(benchmark::State& state) {
  const auto m = state.range(0);
  const Grid g = make_grid({{-4, 4}, {-4, 4}}, {m, m});
  const GridFunction f = random_function(g, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fractional_integral(f, 0.5));
}
BENCHMARK(BM_FractionalIntegral2D)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_FractionalMaximal(benchmark::State& state) {
  const Grid g = make_grid({{-8, 8}}, {state.range(0)});
  const GridFunction f = random_function(g, 2);
  const RadiusSweep sweep = RadiusSweep::dyadic(-3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(fractional_maximal(f, 0.5, sweep));
}
BENCHMARK(BM_FractionalMaximal)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

static void BM_BmoNorm(benchmark::State& state) {
  const Grid g = make_grid({{-4, 4}}, {state.range(0)});
  const GridFunction b = sample(log_abs(), g);
  const BallFamily fam = BallFamily::default_for(g);
  for (auto _ : state) benchmark::DoNotOptimize(bmo_norm(b, fam));
}
BENCHMARK(BM_BmoNorm)->Arg(512)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
