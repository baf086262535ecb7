#include "hqr/detection.hpp"
#include "hqr/logic.hpp"
#include "hqr/rates.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace hqr;

static void BM_HermitianEigen(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = Complex{g(rng), g(rng)};
      m(j, i) = std::conj(m(i, j));
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigen(m));
}
BENCHMARK(BM_HermitianEigen)->Arg(9)->Arg(27)->Arg(81)->Unit(benchmark::kMillisecond);

static void BM_NegativityScan(benchmark::State& state) {
  std::vector<double> alphas(100);
  for (int i = 0; i < 100; ++i) alphas[i] = 2.5 * i / 99.0;
  const ChannelParams ch(5.0);
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(negativity_scan(d, ch, alphas));
}
BENCHMARK(BM_NegativityScan)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_HomodyneReport(benchmark::State& state) {
  const ChannelParams ch(5.0);
  for (auto _ : state) benchmark::DoNotOptimize(homodyne_report(3, 1.0, ch, 0.2));
}
BENCHMARK(BM_HomodyneReport)->Unit(benchmark::kMicrosecond);

static void BM_ZAttempts(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(z_attempts(n, 0.05));
}
BENCHMARK(BM_ZAttempts)->Arg(1)->Arg(8)->Arg(20);

static void BM_PurifyCircuit(benchmark::State& state) {
  const auto w = PhaseMixtureWeights::leading(3, 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(purify_circuit_sim(3, w));
}
BENCHMARK(BM_PurifyCircuit)->Unit(benchmark::kMillisecond);

static void BM_MonteCarlo(benchmark::State& state) {
  const AttemptModel model{3, 0.3, {}};
  const auto shards = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_attempts(model, 100000, 1, shards));
}
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
