#pragma once

// Closed-form upper bounds on monogamy-game winning probabilities.

#include <cstdint>
#include <optional>
#include <string>

namespace monogamy {

/// Single-round optimal BB84 winning probability 1/2 + 1/(2 sqrt 2).
double beta0();

/// log2(1 / beta0).
double log2_inv_beta0();

/// h(p) = -p log2 p - (1-p) log2(1-p), h(0) = h(1) = 0. DomainError
/// outside [0, 1].
double binary_entropy(double p);

struct BoundInputs {
  std::uint64_t n = 1;
  double c = 0.5;
  std::uint64_t theta_count = 2;
  double q_cardinality = 1.0;
  double gamma = 0.0;
  double gamma_prime = 0.0;
};

/// A bound value with its provenance. Values above 1 are returned as-is
/// and flagged vacuous.
struct BoundReport {
  double value = 0.0;
  std::string formula;
  BoundInputs inputs;
  bool vacuous = false;
};

/// beta0^n: the exact optimum of BB84^{xn}.
BoundReport bb84_parallel_value(std::uint64_t n);

/// |Q| (1/|Theta| + (|Theta|-1)/|Theta| sqrt c)^n.
BoundReport general_upper_bound(double c, std::uint64_t theta_count, double q_cardinality,
                                std::uint64_t n);

/// (2^{h(g)+h(g')} (1 + (|Theta|-1) sqrt c) / |Theta|)^n for g, g' in [0, 1/2].
BoundReport imperfect_guessing_bound(double c, std::uint64_t theta_count, std::uint64_t n,
                                     double gamma, double gamma_prime);

/// (2^{h(g)} (1 + (|Theta|-1) sqrt c) / |Theta|)^n: Charlie must name Bob's string.
BoundReport same_string_bound(double c, std::uint64_t theta_count, std::uint64_t n, double gamma);

}  // namespace monogamy
