#include <benchmark/benchmark.h>

#include "monogamy/game.hpp"
#include "monogamy/linalg.hpp"
#include "monogamy/posver.hpp"
#include "monogamy/qkd.hpp"
#include "monogamy/random.hpp"
#include "monogamy/seesaw.hpp"

using namespace monogamy;

static void BM_SeesawBb84(benchmark::State& state) {
  const auto g = game_power(bb84_game(), static_cast<std::size_t>(state.range(0)));
  SeesawConfig cfg;
  cfg.restarts = 4;
  for (auto _ : state) benchmark::DoNotOptimize(seesaw(g, cfg).value);
}
BENCHMARK(BM_SeesawBb84)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_PartialTrace(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Rng rng = make_rng(1);
  const ComplexMatrix rho = random_density(d * d * d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace(rho, {d, d, d}, {1}));
}
BENCHMARK(BM_PartialTrace)->Arg(2)->Arg(4)->Arg(8);

static void BM_WinningProbability(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = game_power(bb84_game(), n);
  const auto s = strategy_power(bb84_optimal_unentangled_strategy(), n, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(winning_probability(g, s).value);
}
BENCHMARK(BM_WinningProbability)->Arg(1)->Arg(2)->Arg(3);

static void BM_ToeplitzHash(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t ell = n / 4;
  Rng rng = make_rng(2);
  BitString seed(n + ell - 1), input(n);
  for (auto& b : seed) b = static_cast<std::uint8_t>(rng() & 1U);
  for (auto& b : input) b = static_cast<std::uint8_t>(rng() & 1U);
  for (auto _ : state) benchmark::DoNotOptimize(toeplitz_hash(seed, input, ell));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_ToeplitzHash)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

static void BM_SecurityDelta(benchmark::State& state) {
  const QkdParams p{1000000000, 1000000, 70676374, 86093890, 0.005, 0.0035};
  for (auto _ : state) benchmark::DoNotOptimize(security_delta(p).delta);
}
BENCHMARK(BM_SecurityDelta);

static void BM_MaxKeyLength(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_key_length(1000000000, 1000000, 70676374, 0.005, 0.0035, 1e-9).ell);
  }
}
BENCHMARK(BM_MaxKeyLength);

static void BM_EqkdTrials(benchmark::State& state) {
  const QkdParams p{400, 100, 300, 16, 0.2, 0.05};
  for (auto _ : state) benchmark::DoNotOptimize(run_eqkd_trials(p, NoisyChannel{0.05}, 1000, 3).aborts);
}
BENCHMARK(BM_EqkdTrials)->Unit(benchmark::kMillisecond);

static void BM_PosverTrials(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_pv_trials(TimingScenario{}, n, BreidbartPair{}, 10000, 4).accepted);
  }
}
BENCHMARK(BM_PosverTrials)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
