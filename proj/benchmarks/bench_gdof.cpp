#include <benchmark/benchmark.h>

#include "hdrelay/channel.hpp"
#include "hdrelay/gdof.hpp"
#include "hdrelay/sweep.hpp"

using namespace hdrelay;

namespace {

SweepConfig config_for(int n) {
  SweepConfig cfg;
  cfg.n_relays = n;
  cfg.trials = 1;
  cfg.seed = 99;
  return cfg;
}

void BM_BuildCoefficientsExact(benchmark::State& state) {
  const auto b = sweep_network(config_for(static_cast<int>(state.range(0))), 0);
  for (auto _ : state) benchmark::DoNotOptimize(build_coefficient_matrix(b));
}

void BM_BuildCoefficientsDouble(benchmark::State& state) {
  const auto b = to_double_matrix(sweep_network(config_for(static_cast<int>(state.range(0))), 0));
  for (auto _ : state) benchmark::DoNotOptimize(build_coefficient_matrix(b));
}

void BM_SolveExact(benchmark::State& state) {
  const auto a =
      build_coefficient_matrix(sweep_network(config_for(static_cast<int>(state.range(0))), 0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_gdof(a));
}

void BM_MinimumSupportExact(benchmark::State& state) {
  const auto a =
      build_coefficient_matrix(sweep_network(config_for(static_cast<int>(state.range(0))), 0));
  for (auto _ : state) benchmark::DoNotOptimize(minimum_support_solution(a));
}

void BM_SweepTrialExact(benchmark::State& state) {
  auto cfg = config_for(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const auto b = sweep_network(cfg, 0);
    const auto a = build_coefficient_matrix(b);
    benchmark::DoNotOptimize(solve_gdof(a));
    benchmark::DoNotOptimize(minimum_support_solution(a));
  }
}

}  // namespace

BENCHMARK(BM_BuildCoefficientsExact)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildCoefficientsDouble)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveExact)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinimumSupportExact)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepTrialExact)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
