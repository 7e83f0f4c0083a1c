#pragma once

// One-round position verification on a line with BB84 qubits: soundness
// bounds and a timing-model simulator.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>

#include "monogamy/qkd.hpp"

namespace monogamy {

/// beta0^n, against adversaries without shared entanglement.
double soundness_bound(std::uint64_t n);

struct SoundnessReport {
  double value = 0.0;
  bool vacuous = false;  // value >= 1
};

/// d * beta0^n for adversaries sharing a state of dimension d. Not clamped.
SoundnessReport entangled_soundness_bound(std::uint64_t n, double d);

/// log2(1/beta0): entanglement rates below this keep soundness exponentially small.
double max_entanglement_rate();

/// Accept when the responses are within relative distance gamma, gamma'.
double noisy_soundness_bound(std::uint64_t n, double gamma, double gamma_prime);

/// Verifiers at v0 < v1 on a line, claimed position strictly between, unit
/// signal speed.
struct TimingScenario {
  double v0 = 0.0;
  double v1 = 2.0;
  double pos = 1.0;

  void validate() const;
  /// Time at which Q and theta both reach pos.
  double meeting_time() const;
  double deadline(int verifier) const;
};

struct HonestProver {
  double flip_prob = 0.0;
};

/// Two colluders without entanglement. E0 intercepts Q at a0 in (v0, pos],
/// measures every qubit in the basis rotated by pi/8 and sends the result to
/// E1 at a1 in [pos, v1); both report it. Midpoints when unset.
struct BreidbartPair {
  std::optional<double> a0;
  std::optional<double> a1;
};

/// A single party that waits for both Q and theta and answers correctly.
struct SingleAdversary {
  double location = 0.0;
};

using ProverModel = std::variant<HonestProver, BreidbartPair, SingleAdversary>;

struct PvRound {
  std::size_t n = 0;
  BitString x, theta;
  BitString response0, response1;
  double arrival0 = 0.0, arrival1 = 0.0;
  double deadline0 = 0.0, deadline1 = 0.0;
  bool on_time0 = false, on_time1 = false;
  bool accepted = false;
};

PvRound simulate_pv_round(const TimingScenario& scenario, std::size_t n, const ProverModel& prover,
                          std::uint64_t seed);

struct PvStats {
  std::size_t trials = 0;
  std::size_t accepted = 0;
  double acceptance_rate = 0.0;
  double standard_error = 0.0;
  double bound = 0.0;  // soundness_bound(n)
};

PvStats run_pv_trials(const TimingScenario& scenario, std::size_t n, const ProverModel& prover,
                      std::size_t trials, std::uint64_t seed);

}  // namespace monogamy
