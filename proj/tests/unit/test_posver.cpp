#include <gtest/gtest.h>

#include <cmath>

#include "expected.hpp"
#include "monogamy/bounds.hpp"
#include "monogamy/errors.hpp"
#include "monogamy/posver.hpp"
#include "monogamy/qkd.hpp"

using namespace monogamy;

TEST(PosverBounds, Soundness) {
  EXPECT_EQ(soundness_bound(1), expected::kBeta0);
  EXPECT_NEAR(soundness_bound(20), expected::kBeta0Pow20, 1e-16);
  for (std::uint64_t n = 1; n < 40; ++n) EXPECT_EQ(soundness_bound(n), bb84_parallel_value(n).value);
}

TEST(PosverBounds, EntangledSoundness) {
  EXPECT_EQ(entangled_soundness_bound(5, 1).value, soundness_bound(5));
  EXPECT_NEAR(entangled_soundness_bound(100, std::ldexp(1.0, 20)).value, expected::kEntangled100, 1e-14);
  EXPECT_NEAR(entangled_soundness_bound(200, std::ldexp(1.0, 40)).value, expected::kEntangled200, 1e-14);
  EXPECT_NEAR(entangled_soundness_bound(250, std::ldexp(1.0, 50)).value, expected::kEntangled250, 1e-14);
  for (std::uint64_t n = 1; n <= 30; ++n) {
    EXPECT_TRUE(entangled_soundness_bound(n, std::ldexp(1.0, static_cast<int>(n))).vacuous);
  }
  EXPECT_THROW(entangled_soundness_bound(3, 0.5), DomainError);
}

TEST(PosverBounds, EntanglementRate) {
  const double rate = max_entanglement_rate();
  EXPECT_GT(rate, 0.228);
  EXPECT_LT(rate, 0.229);
  for (std::uint64_t n = 1; n <= 200; n += 17) {
    const double d = std::exp2(rate * static_cast<double>(n));
    EXPECT_NEAR(entangled_soundness_bound(n, d).value, 1.0, 1e-9);
  }
  double previous = 2.0;
  for (std::uint64_t n = 10; n <= 400; n += 10) {
    const double v = entangled_soundness_bound(n, std::exp2(0.2 * static_cast<double>(n))).value;
    EXPECT_LT(v, previous);
    previous = v;
  }
}

TEST(PosverBounds, NoisySoundness) {
  EXPECT_EQ(noisy_soundness_bound(9, 0.0, 0.0), soundness_bound(9));
  EXPECT_NEAR(noisy_soundness_bound(50, 0.01, 0.01), expected::kNoisyPv50, 1e-14);
  const double g = noise_threshold();
  for (std::uint64_t n = 1; n <= 50; n += 7) EXPECT_NEAR(noisy_soundness_bound(n, g, g), 1.0, 1e-8);
  EXPECT_LE(noisy_soundness_bound(10, 0.01, 0.02), noisy_soundness_bound(10, 0.02, 0.02));
  EXPECT_LE(noisy_soundness_bound(10, 0.02, 0.01), noisy_soundness_bound(10, 0.02, 0.02));
  EXPECT_THROW(noisy_soundness_bound(10, 0.7, 0.0), DomainError);
}

TEST(PosverSim, HonestProverAlwaysAccepted) {
  const TimingScenario sc{0.0, 3.0, 1.0};
  const auto st = run_pv_trials(sc, 16, HonestProver{}, 500, 1);
  EXPECT_EQ(st.accepted, 500u);
}

TEST(PosverSim, BreidbartSingleQubit) {
  const auto st = run_pv_trials(TimingScenario{}, 1, BreidbartPair{}, 100000, 2);
  EXPECT_NEAR(st.acceptance_rate, 0.8536, 0.004);
  EXPECT_LE(st.acceptance_rate, st.bound + 5 * st.standard_error);
}

TEST(PosverSim, BreidbartIsOnTime) {
  const TimingScenario sc{-1.0, 4.0, 0.5};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = simulate_pv_round(sc, 4, BreidbartPair{-0.5, 3.0}, seed);
    EXPECT_TRUE(r.on_time0);
    EXPECT_TRUE(r.on_time1);
    EXPECT_EQ(r.response0, r.response1);
  }
}

TEST(PosverSim, SingleAdversaryMissesADeadline) {
  const TimingScenario sc{0.0, 2.0, 1.0};
  for (double a : {0.1, 0.5, 0.99, 1.01, 1.5, 1.9}) {
    const auto r = simulate_pv_round(sc, 8, SingleAdversary{a}, 3);
    EXPECT_FALSE(r.on_time0 && r.on_time1);
    EXPECT_FALSE(r.accepted);
    EXPECT_EQ(r.response0, r.x);
  }
}

TEST(PosverSim, ScenarioErrors) {
  EXPECT_THROW(simulate_pv_round({0.0, 2.0, 3.0}, 1, HonestProver{}, 0), DomainError);
  EXPECT_THROW(simulate_pv_round({2.0, 0.0, 1.0}, 1, HonestProver{}, 0), DomainError);
  EXPECT_THROW(simulate_pv_round({0.0, 2.0, 1.0}, 1, SingleAdversary{2.5}, 0), DomainError);
  EXPECT_THROW(simulate_pv_round({0.0, 2.0, 1.0}, 1, BreidbartPair{1.5, 1.8}, 0), DomainError);
  EXPECT_THROW(simulate_pv_round({0.0, 2.0, 1.0}, 65, HonestProver{}, 0), DomainError);
}

TEST(PosverSim, NoisyHonestProverCanFail) {
  const auto st = run_pv_trials(TimingScenario{}, 10, HonestProver{0.1}, 20000, 4);
  EXPECT_NEAR(st.acceptance_rate, std::pow(0.9, 10), 5 * st.standard_error);
}
