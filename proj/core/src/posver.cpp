#include "monogamy/posver.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <type_traits>

#include "monogamy/bounds.hpp"
#include "monogamy/errors.hpp"
#include "monogamy/parallel.hpp"
#include "monogamy/random.hpp"

namespace monogamy {

namespace {

constexpr std::uint64_t kPvStream = 0x9057;
constexpr double kTimingSlack = 1e-12;

struct Timeline {
  double arrival0 = 0.0;
  double arrival1 = 0.0;
};

// Probability that the pi/8-basis measurement of H^theta|x> returns x.
double breidbart_success(std::uint8_t x, std::uint8_t theta) {
  const double c = std::cos(std::numbers::pi / 8.0), s = std::sin(std::numbers::pi / 8.0);
  const double r = std::numbers::sqrt2 / 2.0;
  double v0 = x == 0 ? 1.0 : 0.0, v1 = x == 0 ? 0.0 : 1.0;
  if (theta == 1) {
    const double a = r * (v0 + v1), b = r * (v0 - v1);
    v0 = a;
    v1 = b;
  }
  const double amp = x == 0 ? c * v0 + s * v1 : -s * v0 + c * v1;
  return amp * amp;
}

}  // namespace

double soundness_bound(std::uint64_t n) { return bb84_parallel_value(n).value; }

SoundnessReport entangled_soundness_bound(std::uint64_t n, double d) {
  if (!(d >= 1.0)) throw DomainError("entangled_soundness_bound: d must be at least 1");
  SoundnessReport r;
  r.value = d * soundness_bound(n);
  r.vacuous = r.value >= 1.0;
  return r;
}

double max_entanglement_rate() { return log2_inv_beta0(); }

double noisy_soundness_bound(std::uint64_t n, double gamma, double gamma_prime) {
  return imperfect_guessing_bound(0.5, 2, n, gamma, gamma_prime).value;
}

void TimingScenario::validate() const {
  if (!(v0 < v1)) throw DomainError("scenario: need v0 < v1");
  if (!(pos > v0 && pos < v1)) throw DomainError("scenario: pos must lie strictly between the verifiers");
}

double TimingScenario::meeting_time() const { return std::max(pos - v0, v1 - pos); }

double TimingScenario::deadline(int verifier) const {
  return meeting_time() + (verifier == 0 ? pos - v0 : v1 - pos);
}

PvRound simulate_pv_round(const TimingScenario& scenario, std::size_t n, const ProverModel& prover,
                          std::uint64_t seed) {
  scenario.validate();
  if (n == 0 || n > 64) throw DomainError("simulate_pv_round: n must lie in [1, 64]");
  Rng rng = make_rng(seed);
  PvRound r;
  r.n = n;
  r.x.resize(n);
  r.theta.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.x[i] = static_cast<std::uint8_t>(rng() & 1U);
    r.theta[i] = static_cast<std::uint8_t>(rng() & 1U);
  }
  const double t = scenario.meeting_time();
  // Q leaves v0 and theta leaves v1 so that both reach pos at time t.
  const auto q_at = [&](double a) { return t + (a - scenario.pos); };
  const auto theta_at = [&](double a) { return t + (scenario.pos - a); };
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Timeline tl = std::visit(
      [&](const auto& p) -> Timeline {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, HonestProver>) {
          r.response0 = r.x;
          for (auto& b : r.response0) b ^= static_cast<std::uint8_t>(unit(rng) < p.flip_prob);
          r.response1 = r.response0;
          const double ready = std::max(q_at(scenario.pos), theta_at(scenario.pos));
          return {ready + (scenario.pos - scenario.v0), ready + (scenario.v1 - scenario.pos)};
        } else if constexpr (std::is_same_v<P, BreidbartPair>) {
          const double a0 = p.a0.value_or(0.5 * (scenario.v0 + scenario.pos));
          const double a1 = p.a1.value_or(0.5 * (scenario.pos + scenario.v1));
          if (!(a0 > scenario.v0 && a0 <= scenario.pos && a1 >= scenario.pos && a1 < scenario.v1)) {
            throw DomainError("simulate_pv_round: adversaries must sit on either side of pos");
          }
          r.response0 = r.x;
          for (std::size_t i = 0; i < n; ++i) {
            if (unit(rng) >= breidbart_success(r.x[i], r.theta[i])) r.response0[i] ^= 1U;
          }
          r.response1 = r.response0;
          const double measured = q_at(a0);
          return {measured + (a0 - scenario.v0), measured + (a1 - a0) + (scenario.v1 - a1)};
        } else {
          const double a = p.location;
          if (!(a > scenario.v0 && a < scenario.v1)) {
            throw DomainError("simulate_pv_round: adversary outside the verifier segment");
          }
          r.response0 = r.x;
          r.response1 = r.x;
          const double ready = std::max(q_at(a), theta_at(a));
          return {ready + (a - scenario.v0), ready + (scenario.v1 - a)};
        }
      },
      prover);

  r.arrival0 = tl.arrival0;
  r.arrival1 = tl.arrival1;
  r.deadline0 = scenario.deadline(0);
  r.deadline1 = scenario.deadline(1);
  r.on_time0 = r.arrival0 <= r.deadline0 + kTimingSlack;
  r.on_time1 = r.arrival1 <= r.deadline1 + kTimingSlack;
  r.accepted = r.on_time0 && r.on_time1 && r.response0 == r.x && r.response1 == r.x;
  return r;
}

PvStats run_pv_trials(const TimingScenario& scenario, std::size_t n, const ProverModel& prover,
                      std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw DomainError("run_pv_trials: trials must be positive");
  std::vector<std::uint8_t> accepted(trials);
  parallel_for(trials, [&](std::size_t i) {
    accepted[i] = simulate_pv_round(scenario, n, prover, derive_seed(seed, kPvStream, i)).accepted;
  });
  PvStats st;
  st.trials = trials;
  for (auto a : accepted) st.accepted += a;
  st.acceptance_rate = static_cast<double>(st.accepted) / static_cast<double>(trials);
  st.standard_error = std::sqrt(st.acceptance_rate * (1.0 - st.acceptance_rate) / static_cast<double>(trials));
  st.bound = soundness_bound(n);
  return st;
}

}  // namespace monogamy
