#include <benchmark/benchmark.h>

#include "ordet/mc.hpp"

namespace {

// Items are simulated networks (both hypotheses).
void BM_EstimateErrorsExtremePair(benchmark::State& state) {
  const ordet::Policy p = ordet::gaussian_llr_policy(1, 1, 1);
  const ordet::McOptions opt{1, ordet::SimulationMode::automatic};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ordet::estimate_errors(p, ordet::Deterministic{state.range(0)}, -1.0, 0.0, 10000, 1, opt));
  }
  state.SetItemsProcessed(state.iterations() * 20000);
}
BENCHMARK(BM_EstimateErrorsExtremePair)->Arg(100)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_EstimateErrorsFullNetwork(benchmark::State& state) {
  const ordet::Policy p = ordet::gaussian_llr_policy(1, 1, 1);
  const ordet::McOptions opt{1, ordet::SimulationMode::full_network};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ordet::estimate_errors(p, ordet::Deterministic{state.range(0)}, -1.0, 0.0, 1000, 1, opt));
  }
  state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_EstimateErrorsFullNetwork)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_EnergyStoppedNetwork(benchmark::State& state) {
  const ordet::EnergyStopped model{state.range(0), {ordet::gaussian(-1, 1), ordet::gaussian(1, 1)},
                                   ordet::gaussian(0, 1), {}};
  const ordet::Policy p = ordet::gaussian_llr_policy(1, 1, 1.4142135623730951);
  const ordet::McOptions opt{1, ordet::SimulationMode::automatic};
  for (auto _ : state) benchmark::DoNotOptimize(ordet::estimate_errors(p, model, 0.0, 0.0, 200, 1, opt));
  state.SetItemsProcessed(state.iterations() * 400);
}
BENCHMARK(BM_EnergyStoppedNetwork)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
