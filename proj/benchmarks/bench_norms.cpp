#include <benchmark/benchmark.h>

#include "amalgam/amalgam.hpp"
#include "amalgam/harness.hpp"

using namespace amalgam;

static void BM_BallWindowNorms(benchmark::State& state) {
  const auto m = state.range(0);
  const Grid g = make_grid({{-8, 8}, {-8, 8}}, {m, m});
  const GridFunction f = random_function(g, 3);
  for (auto _ : state) benchmark::DoNotOptimize(ball_window_norms(f, {2.0, 3.0}, 1.0));
}
BENCHMARK(BM_BallWindowNorms)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_DiscreteAlphaNorm(benchmark::State& state) {
  const auto m = state.range(0);
  const Grid g = make_grid({{-8, 8}, {-8, 8}}, {m, m});
  const GridFunction f = random_function(g, 4);
  const ExponentSystem sys = validate_exponents({2.0, 2.0}, {4.0, 4.0}, 3.0, 2);
  const RadiusSweep sweep = RadiusSweep::dyadic(-2, 2, WindowKind::Cube);
  for (auto _ : state) benchmark::DoNotOptimize(discrete_alpha_norm(f, sys, sweep));
}
BENCHMARK(BM_DiscreteAlphaNorm)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_MixedLebesgueNorm(benchmark::State& state) {
  const auto m = state.range(0);
  const Grid g = make_grid({{-8, 8}, {-8, 8}}, {m, m});
  const GridFunction f = random_function(g, 5);
  for (auto _ : state) benchmark::DoNotOptimize(mixed_lebesgue_norm(f, {1.5, 4.0}));
}
BENCHMARK(BM_MixedLebesgueNorm)->Arg(256)->Arg(1024);
