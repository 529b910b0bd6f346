// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "centrality/conditions.hpp"
#include "centrality/fuzz.hpp"

using namespace centrality;

namespace {

const AlgebraElement& bench_element() {
  static const AlgebraElement a = [] {
    RngStream rng(2024);
    return random_central_positive(AlgebraShape({4, 3, 2}), rng);
  }();
  return a;
}

template <SampleSummary (*Kernel)(ConditionId, const AlgebraElement&, int, std::uint64_t, double)>
void BM_SampleMargins(benchmark::State& state) {
  const auto id = kAllConditions[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) {
    benchmark::DoNotOptimize(Kernel(id, bench_element(), 200, 11, kDefaultTol));
  }
  state.SetLabel(std::string(to_string(id)));
  state.SetItemsProcessed(state.iterations() * 200);
}

template <FuzzSummary (*Campaign)(const FuzzConfig&)>
void BM_Fuzz(benchmark::State& state) {
  FuzzConfig config;
  config.shape = AlgebraShape({2, 2});
  config.trials = static_cast<int>(state.range(0));
  config.samples = 50;
  config.seed = 7;
  for (auto _ : state) benchmark::DoNotOptimize(Campaign(config));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_SampleMargins<sample_margins_serial>)->DenseRange(0, 10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleMargins<sample_margins>)->DenseRange(0, 10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Fuzz<fuzz_campaign_serial>)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Fuzz<fuzz_campaign>)->Arg(40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
