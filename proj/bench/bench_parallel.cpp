/**
 * @file bench_parallel.cpp
 * @brief Serial reference against the OpenMP kernels for the batch workloads.
 */
#include <benchmark/benchmark.h>

#include <random>

#include "rotwave/atlas.hpp"

namespace rotwave {
namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

std::vector<WaveParams> random_params(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<WaveParams> v;
  for (std::size_t i = 0; i < n; ++i) {
    const std::array<double, 4> d{U(rng), U(rng), U(rng), U(rng)};
    v.push_back(WaveParams::direct(Theta::quarter(), d[0], d[1], d[2], d[3]));
  }
  return v;
}

void BM_CensusBatch(benchmark::State& state) {
  const auto params = random_params(1000);
  for (auto _ : state) benchmark::DoNotOptimize(census_batch(params, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(params.size()));
}

void BM_DriftBatch(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<DriftCase> cases;
  for (const auto& wp : random_params(64)) {
    const double phi = U(rng);
    const double y = U(rng);
    cases.push_back({wp, {phi, y}, 10.0});
  }
  for (auto _ : state) benchmark::DoNotOptimize(drift_batch(cases, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(cases.size()));
}

void BM_SweepFamily(benchmark::State& state) {
  const auto base = WaveParams::direct(Theta::quarter(), 0.0, 0.0, -1.0, 0.5);
  SweepOptions opt;
  opt.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_singular_line(base, 0.4, -0.15, 24, opt));
  state.SetItemsProcessed(state.iterations() * 24);
}

BENCHMARK(BM_CensusBatch)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DriftBatch)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepFamily)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace rotwave

BENCHMARK_MAIN();
