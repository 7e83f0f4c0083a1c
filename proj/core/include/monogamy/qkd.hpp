#pragma once

// Finite-key security of the entanglement-based BB84 protocol with an
// untrusted measurement device on Bob's side, plus a small Monte-Carlo
// simulator of the protocol.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "monogamy/game.hpp"
#include "monogamy/uncertainty.hpp"

namespace monogamy {

using BitString = std::vector<std::uint8_t>;

struct QkdParams {
  std::uint64_t n = 0;
  std::uint64_t t = 0;
  std::uint64_t s = 0;
  std::uint64_t ell = 0;
  double gamma = 0.0;
  double epsilon = 0.0;

  void validate() const;
};

/// s = ceil((n - t) h(gamma + epsilon)).
std::uint64_t auto_syndrome_length(std::uint64_t n, std::uint64_t t, double gamma, double epsilon);

struct QkdSecurityReport {
  double delta = 0.0;
  double sampling_term = 0.0;  // 5 exp(-2 eps^2 t)
  double pa_term = 0.0;        // 2^{-budget/2}; +inf when it overflows
  double exponent_budget = 0.0;
  double log2_pa_term = 0.0;  // -budget/2, finite even when pa_term is not
  bool vacuous = false;
};

/// delta = 5 e^{-2 eps^2 t} + 2^{-1/2 (log2(1/beta0) n - h(gamma+eps) n - ell - t - s + 2)}.
QkdSecurityReport security_delta(const QkdParams& p);

enum class KeyLengthStatus { Feasible, NoExtractableKey, Infeasible };

std::string to_string(KeyLengthStatus s);

struct KeyLengthResult {
  KeyLengthStatus status = KeyLengthStatus::Infeasible;
  std::uint64_t ell = 0;
  double sampling_term = 0.0;
};

/// Largest ell with security_delta <= target.
KeyLengthResult max_key_length(std::uint64_t n, std::uint64_t t, std::uint64_t s, double gamma,
                               double epsilon, double delta_target);

/// The gamma* in (0, 1/2) with 2 h(gamma*) = log2(1/beta0).
double noise_threshold();

struct AsymptoticRate {
  std::uint64_t n = 0;
  std::uint64_t t = 0;
  double epsilon = 0.0;
  double s = 0.0;
  double rate = 0.0;   // max ell / n
  double limit = 0.0;  // log2(1/beta0) - 2 h(gamma + eps)
  double gap = 0.0;
};

/// Closed-form max ell / n with t = floor(n^{2/3}), s = n h(gamma + eps) and
/// eps chosen so the sampling term is half of delta_target.
AsymptoticRate asymptotic_rate(std::uint64_t n, double gamma, double delta_target);

/// Toeplitz hashing over GF(2): out[j] = XOR_i seed[j + m - 1 - i] & input[i].
BitString toeplitz_hash(const BitString& seed_bits, const BitString& input, std::size_t ell);

/// Seeded random linear code, applied in chunks of at most kSyndromeChunk bits.
inline constexpr std::size_t kSyndromeChunk = 20;

BitString syndrome_encode(const BitString& x, std::size_t s, std::uint64_t code_seed);

/// Nearest string to y with the given syndrome; ties go to the
/// lexicographically smallest candidate. Decoding is exact per chunk.
BitString syndrome_decode(const BitString& y, const BitString& syndrome, std::uint64_t code_seed);

/// Bob's device flips each bit independently.
struct NoisyChannel {
  double flip_prob = 0.0;
};

/// Bob's device measures a supplied state. The strategy must be one for
/// game_power(bb84_game(), n); Bob's outcome is read as his n-bit string and
/// Charlie is traced out.
struct QuantumDevice {
  Strategy strategy;
};

using DeviceModel = std::variant<NoisyChannel, QuantumDevice>;

struct ProtocolTranscript {
  std::uint64_t seed = 0;
  BitString theta, x, y;
  std::vector<std::size_t> sample;  // sorted, size t
  BitString x_sample, y_sample;
  double sample_error_rate = 0.0;
  double total_error_rate = 0.0;
  bool aborted = false;
  BitString syndrome;
  std::uint64_t code_seed = 0;
  BitString hash_seed;
  BitString k, k_hat;
  bool decode_success = false;
  bool hoeffding_violation = false;  // d(x, y) > d(x_T, y_T) + eps
};

/// Abort iff the relative Hamming distance of the samples exceeds gamma.
bool abort_decision(const BitString& x_sample, const BitString& y_sample, double gamma);

ProtocolTranscript simulate_eqkd(const QkdParams& p, const DeviceModel& device, std::uint64_t seed);

struct EqkdTrialStats {
  std::size_t trials = 0;
  std::size_t aborts = 0;
  std::size_t completed = 0;
  std::size_t decode_failures = 0;
  std::size_t key_matches = 0;
  std::size_t hoeffding_violations = 0;
  double abort_rate = 0.0;
  double key_match_rate = 0.0;  // among completed runs that decoded
  double hoeffding_rate = 0.0;
  double hoeffding_bound = 0.0;  // e^{-2 eps^2 t}
};

EqkdTrialStats run_eqkd_trials(const QkdParams& p, const DeviceModel& device, std::size_t trials,
                               std::uint64_t seed);

struct SecdefGap {
  double lhs = 0.0;
  double rhs = 0.0;
  double distance = 0.0;  // Delta(rho_XB, rho~_XB)
  double pr_rho = 0.0;
  double pr_tilde = 0.0;
  bool holds() const { return lhs <= rhs + 1e-12; }
};

/// Both sides of
///   Pr_rho[L] D(rho_XB|L, tau (x) rho_B|L)
///     <= 5 D(rho, rho~) + Pr_rho~[L] D(rho~_XB|L, tau (x) rho~_B|L).
SecdefGap secdef_gap(const CqEnsemble& rho, const CqEnsemble& rho_tilde,
                     const std::vector<bool>& predicate, const ComplexMatrix& tau_x);
/// Same with tau_X uniform.
SecdefGap secdef_gap(const CqEnsemble& rho, const CqEnsemble& rho_tilde,
                     const std::vector<bool>& predicate);

/// The block-diagonal matrix sum_x p_x |x><x| (x) rho_x.
ComplexMatrix cq_matrix(const CqEnsemble& e);

}  // namespace monogamy
