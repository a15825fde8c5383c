#include <benchmark/benchmark.h>

#include <random>

#include "cmvspec/bands.hpp"
#include "cmvspec/dos.hpp"
#include "cmvspec/potential.hpp"

namespace {

using namespace cmvspec;

VerblunskyWord random_word(index_t q, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<VerblunskyPair> p;
  for (index_t i = 0; i < q; ++i) {
    p.push_back({DiskPoint(std::polar(0.8 * u(gen), kTwoPi * u(gen))), kTwoPi * u(gen)});
  }
  return VerblunskyWord(std::move(p));
}

void BM_Discriminant(benchmark::State& state) {
  const TransferEvaluator ev(random_word(state.range(0), 1));
  double tau = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev.discriminant(tau));
    tau += 1e-3;
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Discriminant)->RangeMultiplier(4)->Range(8, 8192)->Complexity(benchmark::oN);

void BM_DiscriminantDerivative(benchmark::State& state) {
  const TransferEvaluator ev(random_word(state.range(0), 2));
  for (auto _ : state) benchmark::DoNotOptimize(ev.discriminant_and_derivative(0.7));
}
BENCHMARK(BM_DiscriminantDerivative)->RangeMultiplier(4)->Range(8, 2048);

void BM_BandList(benchmark::State& state) {
  const VerblunskyWord w = random_word(state.range(0), 3);
  for (auto _ : state) benchmark::DoNotOptimize(band_list(w));
}
BENCHMARK(BM_BandList)->RangeMultiplier(4)->Range(2, 512)->Unit(benchmark::kMillisecond);

void BM_DosProfile(benchmark::State& state) {
  const VerblunskyWord w = random_word(8, 4);
  const BandList b = band_list(w);
  const auto grid = uniform_tau_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dos_profile(w, b, grid));
}
BENCHMARK(BM_DosProfile)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_BandMasses(benchmark::State& state) {
  const VerblunskyWord w = random_word(8, 5);
  const BandList b = band_list(w);
  for (auto _ : state) benchmark::DoNotOptimize(band_masses(w, b, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_BandMasses)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Thouless(benchmark::State& state) {
  const VerblunskyWord w = constant_word(0.5, 2);
  const BandList b = band_list(w);
  for (auto _ : state) {
    benchmark::DoNotOptimize(thouless_residual(w, b, cplx(0.4, 0.3), static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_Thouless)->Arg(16)->Arg(64)->Arg(256);

}  // namespace
