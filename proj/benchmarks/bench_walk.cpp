#include <benchmark/benchmark.h>

#include "cmvspec/walk.hpp"

namespace {

using namespace cmvspec;

void BM_WalkSteps(benchmark::State& state) {
  const CoinSequence coins({hadamard_coin()});
  for (auto _ : state) {
    WalkState psi = WalkState::localized(0, 1.0, 0.0);
    for (index_t n = 0; n < state.range(0); ++n) psi = step(psi, coins);
    benchmark::DoNotOptimize(psi.norm());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WalkSteps)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oNSquared);

void BM_Rage(benchmark::State& state) {
  const CoinSequence coins({hadamard_coin()});
  for (auto _ : state) {
    benchmark::DoNotOptimize(rage_diagnostics(coins, WalkState::localized(0, 1.0, 0.0), 3, state.range(0)));
  }
}
BENCHMARK(BM_Rage)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace
