#include <benchmark/benchmark.h>

#include "ordet/evt.hpp"
#include "ordet/network.hpp"
#include "ordet/orderstats.hpp"

namespace {

void BM_ErrorProbsExact(benchmark::State& state) {
  const ordet::Policy p = ordet::gaussian_llr_policy(1, 1, 1);
  const std::int64_t n = state.range(0);
  const double g = ordet::threshold_refined(p.z_law(ordet::Hypothesis::h0), n, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(ordet::error_probs_exact(p, n, g));
}
BENCHMARK(BM_ErrorProbsExact)->RangeMultiplier(100)->Range(1, 1000000)->Unit(benchmark::kMicrosecond);

void BM_ErrorProbsMixed(benchmark::State& state) {
  const ordet::Policy p = ordet::gaussian_llr_policy(1, 1, 1);
  const ordet::SizePmf pmf = ordet::size_pmf(ordet::MixedPoisson{state.range(0), 0.5, 0.5});
  for (auto _ : state) benchmark::DoNotOptimize(ordet::error_probs_mixed(p, pmf, -1.0));
}
BENCHMARK(BM_ErrorProbsMixed)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_PdfWinner(benchmark::State& state) {
  const ordet::ScalarLaw z = ordet::gaussian(0.3, 1.0);
  double x = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ordet::pdf_winner(z, 1000, x));
    x = x > 3.0 ? -3.0 : x + 0.01;
  }
}
BENCHMARK(BM_PdfWinner);

void BM_NormConstants(benchmark::State& state) {
  const ordet::ScalarLaw z = ordet::gaussian(0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ordet::norm_constants(z, 10000, ordet::EvtFamily::gumbel()));
}
BENCHMARK(BM_NormConstants);

}  // namespace
