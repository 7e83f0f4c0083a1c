#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "expected.hpp"
#include "monogamy/bounds.hpp"
#include "monogamy/errors.hpp"
#include "monogamy/qkd.hpp"
#include "monogamy/random.hpp"

using namespace monogamy;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

ComplexVector epr() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

CqEnsemble random_cq(std::size_t k, std::size_t d, Rng& rng) {
  CqEnsemble e;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double total = 0.0;
  for (std::size_t x = 0; x < k; ++x) {
    e.alphabet.push_back(std::to_string(x));
    e.weights.push_back(u(rng));
    total += e.weights.back();
    e.conditionals.push_back(random_density(d, rng));
  }
  for (auto& w : e.weights) w /= total;
  return e;
}

}  // namespace

TEST(QkdDelta, ExampleFromTheCalculator) {
  const std::uint64_t s = auto_syndrome_length(100000, 10000, 0.005, 0.005);
  EXPECT_EQ(s, expected::kDeltaExampleS);
  const auto r = security_delta({100000, 10000, s, 1000, 0.005, 0.005});
  EXPECT_LT(rel(r.sampling_term, expected::kDeltaExampleSampling), 1e-12);
  EXPECT_LT(rel(r.exponent_budget, expected::kDeltaExampleBudget), 1e-12);
  EXPECT_DOUBLE_EQ(r.log2_pa_term, -0.5 * r.exponent_budget);
  EXPECT_TRUE(std::isinf(r.pa_term));
  EXPECT_TRUE(r.vacuous);
}

TEST(QkdDelta, SamplingTermLimit) {
  const auto r = security_delta({1000, 100, 10, 1, 0.01, 1e-9});
  EXPECT_NEAR(r.sampling_term, 5.0, 1e-12);
  EXPECT_TRUE(r.vacuous);
}

TEST(QkdDelta, PaTermMatchesBudget) {
  for (std::uint64_t ell = 0; ell < 200000; ell += 9973) {
    const auto r = security_delta({1000000, 50000, 60172, ell, 0.005, 0.02});
    EXPECT_DOUBLE_EQ(r.pa_term, std::exp2(-0.5 * r.exponent_budget));
    EXPECT_EQ(r.pa_term <= 1.0, r.exponent_budget >= 0.0);
    EXPECT_EQ(r.delta, r.sampling_term + r.pa_term);
  }
}

TEST(QkdDelta, Monotonicity) {
  const QkdParams base{1000000, 50000, 60000, 10000, 0.005, 0.01};
  const double d0 = security_delta(base).delta;
  auto p = base;
  p.ell += 10;
  EXPECT_GE(security_delta(p).delta, d0);
  p = base;
  p.s += 10;
  EXPECT_GE(security_delta(p).pa_term, security_delta(base).pa_term);
  p = base;
  p.t += 10;
  EXPECT_GE(security_delta(p).pa_term, security_delta(base).pa_term);
  EXPECT_LT(security_delta(p).sampling_term, security_delta(base).sampling_term);
  p = base;
  p.n += 1000;
  EXPECT_LE(security_delta(p).delta, d0);
  p = base;
  p.epsilon = 0.011;
  EXPECT_LT(security_delta(p).sampling_term, security_delta(base).sampling_term);
}

TEST(QkdDelta, DomainErrors) {
  EXPECT_THROW(security_delta({1000, 100, 0, 0, 0.3, 0.2}), DomainError);
  EXPECT_THROW(security_delta({1000, 1000, 0, 0, 0.01, 0.01}), DomainError);
  EXPECT_THROW(security_delta({1000, 0, 0, 0, 0.01, 0.01}), DomainError);
  EXPECT_THROW(security_delta({1000, 10, 0, 0, 0.01, 0.0}), DomainError);
}

TEST(QkdKeyLength, PositiveExample) {
  const std::uint64_t n = 1000000000, t = 1000000;
  const auto s = static_cast<std::uint64_t>(std::llround(static_cast<double>(n) * binary_entropy(0.0085)));
  EXPECT_EQ(s, expected::kKeylenS);
  const auto r = max_key_length(n, t, s, 0.005, 0.0035, 1e-9);
  EXPECT_EQ(r.status, KeyLengthStatus::Feasible);
  EXPECT_EQ(r.ell, expected::kKeylenEll);
  EXPECT_LT(rel(r.sampling_term, expected::kKeylenSampling), 1e-9);
  const double at = security_delta({n, t, s, r.ell, 0.005, 0.0035}).delta;
  const double next = security_delta({n, t, s, r.ell + 1, 0.005, 0.0035}).delta;
  EXPECT_LT(rel(at, expected::kKeylenDelta), 1e-7);
  EXPECT_LT(rel(next, expected::kKeylenDeltaNext), 1e-7);
  EXPECT_LE(at, 1e-9);
  EXPECT_GT(next, 1e-9);
}

TEST(QkdKeyLength, InfeasibleWhenSamplingTermExceedsTarget) {
  const std::uint64_t n = 1000000, t = 50000;
  const auto s = static_cast<std::uint64_t>(std::llround(static_cast<double>(n) * binary_entropy(0.007)));
  const auto r = max_key_length(n, t, s, 0.005, 0.002, 1e-9);
  EXPECT_EQ(r.status, KeyLengthStatus::Infeasible);
  EXPECT_GT(r.sampling_term, 1e-9);
}

TEST(QkdKeyLength, NoExtractableKey) {
  const std::uint64_t n = 1000000, t = 50000;
  const auto s = static_cast<std::uint64_t>(std::llround(static_cast<double>(n) * binary_entropy(0.025)));
  const auto r = max_key_length(n, t, s, 0.005, 0.02, 1e-9);
  EXPECT_EQ(r.status, KeyLengthStatus::NoExtractableKey);
  EXPECT_EQ(r.ell, 0u);
}

TEST(QkdKeyLength, InversionBracketsTarget) {
  for (double target : {1e-6, 1e-9, 1e-12}) {
    const auto r = max_key_length(100000000, 500000, 9000000, 0.01, 0.006, target);
    ASSERT_EQ(r.status, KeyLengthStatus::Feasible);
    EXPECT_LE(security_delta({100000000, 500000, 9000000, r.ell, 0.01, 0.006}).delta, target);
    EXPECT_GT(security_delta({100000000, 500000, 9000000, r.ell + 1, 0.01, 0.006}).delta, target);
  }
}

TEST(QkdThreshold, NoiseThreshold) {
  const double g = noise_threshold();
  EXPECT_NEAR(g, expected::kNoiseThreshold, 1e-10);
  EXPECT_NEAR(2.0 * binary_entropy(g) - log2_inv_beta0(), 0.0, 1e-9);
  EXPECT_NEAR(log2_inv_beta0(), 0.2284, 1e-4);
}

TEST(QkdRate, AsymptoticRateAtHundredMillion) {
  const auto r = asymptotic_rate(100000000, 0.005, 1e-9);
  EXPECT_EQ(r.t, expected::kRateT);
  EXPECT_LT(rel(r.epsilon, expected::kRateEps), 1e-12);
  EXPECT_LT(rel(r.rate, expected::kRate), 1e-9);
  EXPECT_LT(rel(r.limit, expected::kRateLimit), 1e-12);
  EXPECT_LT(rel(r.gap, expected::kRateGap), 1e-6);
}

TEST(QkdRate, GapShrinksWithN) {
  double previous = 1.0;
  for (std::uint64_t n = 1000000; n <= 100000000000ULL; n *= 10) {
    const double gap = asymptotic_rate(n, 0.005, 1e-9).gap;
    EXPECT_LT(gap, previous);
    previous = gap;
  }
}

TEST(Toeplitz, Basics) {
  EXPECT_EQ(toeplitz_hash(BitString(23, 1), BitString(16, 0), 8), BitString(8, 0));
  EXPECT_TRUE(toeplitz_hash(BitString(15, 1), BitString(16, 1), 0).empty());
  EXPECT_THROW(toeplitz_hash(BitString(10, 1), BitString(16, 1), 8), DimensionError);
  // m = 2, ell = 2: out[j] = seed[j + 1] for input (1, 0).
  EXPECT_EQ(toeplitz_hash({0, 1, 0}, {1, 0}, 2), (BitString{1, 0}));
  EXPECT_EQ(toeplitz_hash({0, 1, 1}, {0, 1}, 2), (BitString{0, 1}));
}

TEST(Toeplitz, Linearity) {
  Rng rng = make_rng(1);
  for (int i = 0; i < 50; ++i) {
    BitString seed(40), a(32), b(32), ab(32);
    for (auto& v : seed) v = rng() & 1U;
    for (std::size_t j = 0; j < 32; ++j) {
      a[j] = rng() & 1U;
      b[j] = rng() & 1U;
      ab[j] = a[j] ^ b[j];
    }
    const auto ha = toeplitz_hash(seed, a, 9), hb = toeplitz_hash(seed, b, 9), hab = toeplitz_hash(seed, ab, 9);
    for (std::size_t j = 0; j < 9; ++j) EXPECT_EQ(hab[j], ha[j] ^ hb[j]);
  }
}

TEST(Toeplitz, CollisionFrequency) {
  BitString a(16, 0), b(16, 0);
  a[0] = 1;
  b[5] = b[11] = 1;
  Rng rng = make_rng(2);
  const int trials = 100000;
  int collisions = 0;
  BitString seed(23);
  for (int i = 0; i < trials; ++i) {
    for (auto& v : seed) v = rng() & 1U;
    collisions += toeplitz_hash(seed, a, 8) == toeplitz_hash(seed, b, 8);
  }
  const double p = std::ldexp(1.0, -8);
  const double sigma = std::sqrt(p * (1 - p) / trials);
  EXPECT_LE(static_cast<double>(collisions) / trials, p + 3 * sigma);
}

TEST(Syndrome, TrivialCases) {
  Rng rng = make_rng(3);
  BitString x(45);
  for (auto& v : x) v = rng() & 1U;
  const auto syn = syndrome_encode(x, 30, 77);
  EXPECT_EQ(syn.size(), 30u);
  EXPECT_EQ(syndrome_decode(x, syn, 77), x);
  BitString y = x;
  y[3] ^= 1U;
  EXPECT_EQ(syndrome_decode(y, {}, 77), y);
  EXPECT_THROW(syndrome_encode(BitString(20, 0), 100, 1), CapacityError);
}

// Nearest consistent word by exhaustive search, lexicographically smallest on ties.
TEST(Syndrome, DecodeMatchesBruteForce) {
  Rng rng = make_rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 8 + trial % 9;
    const std::size_t s = 1 + trial % m;
    BitString x(m), y(m);
    for (auto& v : x) v = rng() & 1U;
    y = x;
    y[rng() % m] ^= 1U;
    if (trial % 3 == 0) y[rng() % m] ^= 1U;
    const std::uint64_t code = rng();
    const auto syn = syndrome_encode(x, s, code);
    BitString best;
    std::size_t best_d = m + 1;
    for (std::uint64_t w = 0; w < (1ULL << m); ++w) {
      BitString c(m);
      for (std::size_t i = 0; i < m; ++i) c[i] = (w >> (m - 1 - i)) & 1U;
      if (syndrome_encode(c, s, code) != syn) continue;
      std::size_t d = 0;
      for (std::size_t i = 0; i < m; ++i) d += c[i] != y[i];
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    EXPECT_EQ(syndrome_decode(y, syn, code), best);
  }
}

TEST(Syndrome, SingleFlipCorrectedWithFullSyndrome) {
  Rng rng = make_rng(5);
  int corrected = 0;
  for (int trial = 0; trial < 100; ++trial) {
    BitString x(20);
    for (auto& v : x) v = rng() & 1U;
    BitString y = x;
    y[rng() % 20] ^= 1U;
    const auto syn = syndrome_encode(x, 20, static_cast<std::uint64_t>(trial));
    corrected += syndrome_decode(y, syn, static_cast<std::uint64_t>(trial)) == x;
  }
  EXPECT_GE(corrected, 95);
}

TEST(Eqkd, NoiselessNeverAborts) {
  const QkdParams p{64, 16, 48, 16, 0.0, 0.05};
  const auto st = run_eqkd_trials(p, NoisyChannel{0.0}, 500, 1);
  EXPECT_EQ(st.aborts, 0u);
  EXPECT_EQ(st.key_matches, 500u);
  EXPECT_EQ(st.decode_failures, 0u);
}

TEST(Eqkd, FullNoiseAborts) {
  const QkdParams p{80, 64, 8, 4, 0.01, 0.05};
  const auto st = run_eqkd_trials(p, NoisyChannel{0.5}, 10000, 2);
  EXPECT_GE(st.abort_rate, 0.999);
}

TEST(Eqkd, AbortDecisionReplaysFromSample) {
  const QkdParams p{100, 30, 50, 10, 0.05, 0.05};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto tr = simulate_eqkd(p, NoisyChannel{0.06}, seed);
    ASSERT_EQ(tr.sample.size(), 30u);
    for (std::size_t i = 0; i < tr.sample.size(); ++i) {
      EXPECT_EQ(tr.x_sample[i], tr.x[tr.sample[i]]);
      EXPECT_EQ(tr.y_sample[i], tr.y[tr.sample[i]]);
    }
    EXPECT_EQ(abort_decision(tr.x_sample, tr.y_sample, p.gamma), tr.aborted);
    if (!tr.aborted && tr.decode_success) {
      EXPECT_EQ(tr.k, tr.k_hat);
    }
  }
}

TEST(Eqkd, HoeffdingFrequency) {
  const QkdParams p{400, 100, 300, 16, 0.2, 0.05};
  const auto st = run_eqkd_trials(p, NoisyChannel{0.05}, 20000, 3);
  EXPECT_NEAR(st.hoeffding_bound, std::exp(-0.5), 1e-15);
  EXPECT_LE(st.hoeffding_rate, st.hoeffding_bound);
  EXPECT_EQ(st.key_match_rate, 1.0);
}

TEST(Eqkd, TrialsAreReproducible) {
  const QkdParams p{120, 40, 60, 8, 0.1, 0.05};
  const auto a = run_eqkd_trials(p, NoisyChannel{0.05}, 300, 9);
  const auto b = run_eqkd_trials(p, NoisyChannel{0.05}, 300, 9);
  EXPECT_EQ(a.aborts, b.aborts);
  EXPECT_EQ(a.key_matches, b.key_matches);
  EXPECT_EQ(a.hoeffding_violations, b.hoeffding_violations);
}

TEST(Eqkd, QuantumDeviceWithEprPairs) {
  const auto g2 = game_power(bb84_game(), 2);
  const ComplexMatrix pairs = permute_subsystems(projector(tensor(epr(), epr())), {2, 2, 2, 2}, {0, 2, 1, 3});
  Strategy s{tensor(pairs, ComplexMatrix::Ones(1, 1)), {4, 4, 1}, g2.povms, constant_guess(4, 4, 0)};
  const QkdParams p{2, 1, 0, 1, 0.0, 0.1};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto tr = simulate_eqkd(p, QuantumDevice{s}, seed);
    EXPECT_EQ(tr.x, tr.y);
    EXPECT_FALSE(tr.aborted);
    EXPECT_EQ(tr.k, tr.k_hat);
  }
  EXPECT_THROW(simulate_eqkd({6, 1, 0, 1, 0.0, 0.1}, QuantumDevice{s}, 0), CapacityError);
}

TEST(Eqkd, Guards) {
  EXPECT_THROW(simulate_eqkd({10, 5, 0, 6, 0.0, 0.1}, NoisyChannel{0.0}, 0), DomainError);
  EXPECT_THROW(simulate_eqkd({10, 5, 0, 1, 0.0, 0.1}, NoisyChannel{1.5}, 0), DomainError);
}

TEST(Secdef, EqualStates) {
  Rng rng = make_rng(6);
  const auto e = random_cq(3, 2, rng);
  const auto g = secdef_gap(e, e, {true, false, true});
  EXPECT_NEAR(g.distance, 0.0, 1e-15);
  EXPECT_NEAR(g.lhs, g.rhs, 1e-12);
}

TEST(Secdef, EmptyEvent) {
  Rng rng = make_rng(7);
  const auto e = random_cq(2, 2, rng), f = random_cq(2, 2, rng);
  const auto g = secdef_gap(e, f, {false, false});
  EXPECT_EQ(g.lhs, 0.0);
  EXPECT_EQ(g.pr_rho, 0.0);
}

TEST(Secdef, PerturbedIdealState) {
  Rng rng = make_rng(8);
  std::uniform_real_distribution<double> u(0.0, 0.2);
  for (int i = 0; i < 50; ++i) {
    const ComplexMatrix b = random_density(2, rng);
    CqEnsemble ideal{{"0", "1"}, {0.5, 0.5}, {b, b}};
    CqEnsemble real = ideal;
    const double eta = u(rng);
    real.weights = {0.5 + eta / 2, 0.5 - eta / 2};
    const auto g = secdef_gap(real, ideal, {true, true});
    EXPECT_NEAR(g.distance, eta / 2, 1e-12);
    EXPECT_LE(g.lhs, 5 * g.distance + 1e-12);
  }
}

TEST(Secdef, RandomInstances) {
  Rng rng = make_rng(9);
  for (int i = 0; i < 200; ++i) {
    const std::size_t k = 2 + i % 3;
    const auto a = random_cq(k, 2, rng), b = random_cq(k, 2, rng);
    std::vector<bool> pred(k);
    for (std::size_t x = 0; x < k; ++x) pred[x] = rng() & 1U;
    EXPECT_TRUE(secdef_gap(a, b, pred).holds());
    EXPECT_TRUE(secdef_gap(a, b, pred, random_density(k, rng)).holds());
  }
}

TEST(Secdef, MismatchedAlphabets) {
  Rng rng = make_rng(10);
  EXPECT_THROW(secdef_gap(random_cq(2, 2, rng), random_cq(3, 2, rng), {true, true}), DimensionError);
}
