#include "monogamy/bounds.hpp"

#include <cmath>
#include <string>

#include "monogamy/errors.hpp"

namespace monogamy {

namespace {

void require_overlap(double c) {
  if (!(c > 0.0 && c <= 1.0)) throw DomainError("overlap c must lie in (0, 1]");
}

void require_theta_count(std::uint64_t theta_count) {
  if (theta_count < 2) throw DomainError("need at least two bases");
}

void require_error_rate(double g, const char* name) {
  if (!(g >= 0.0 && g <= 0.5)) throw DomainError(std::string(name) + " must lie in [0, 1/2]");
}

double single_round_factor(double c, std::uint64_t theta_count) {
  const double k = static_cast<double>(theta_count);
  return (1.0 + (k - 1.0) * std::sqrt(c)) / k;
}

BoundReport finish(double value, std::string formula, BoundInputs inputs) {
  return BoundReport{value, std::move(formula), inputs, value >= 1.0};
}

}  // namespace

double beta0() { return 0.5 + 0.5 / std::sqrt(2.0); }

double log2_inv_beta0() { return -std::log2(beta0()); }

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binary_entropy: p must lie in [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

BoundReport bb84_parallel_value(std::uint64_t n) {
  if (n == 0) throw DomainError("bb84_parallel_value: n must be positive");
  BoundInputs in;
  in.n = n;
  return finish(std::pow(beta0(), static_cast<double>(n)), "bb84-exact", in);
}

BoundReport general_upper_bound(double c, std::uint64_t theta_count, double q_cardinality,
                                std::uint64_t n) {
  require_overlap(c);
  require_theta_count(theta_count);
  if (n == 0) throw DomainError("general_upper_bound: n must be positive");
  if (!(q_cardinality >= 1.0)) throw DomainError("general_upper_bound: |Q| must be at least 1");
  const double base = single_round_factor(c, theta_count);
  BoundInputs in{n, c, theta_count, q_cardinality, 0.0, 0.0};
  return finish(q_cardinality * std::pow(base, static_cast<double>(n)), "general", in);
}

BoundReport imperfect_guessing_bound(double c, std::uint64_t theta_count, std::uint64_t n,
                                     double gamma, double gamma_prime) {
  require_overlap(c);
  require_theta_count(theta_count);
  require_error_rate(gamma, "gamma");
  require_error_rate(gamma_prime, "gamma_prime");
  if (n == 0) throw DomainError("imperfect_guessing_bound: n must be positive");
  const double base = single_round_factor(c, theta_count);
  const double factor = std::exp2(binary_entropy(gamma) + binary_entropy(gamma_prime)) * base;
  BoundInputs in{n, c, theta_count, 1.0, gamma, gamma_prime};
  return finish(std::pow(factor, static_cast<double>(n)), "imperfect-guessing", in);
}

BoundReport same_string_bound(double c, std::uint64_t theta_count, std::uint64_t n, double gamma) {
  auto r = imperfect_guessing_bound(c, theta_count, n, gamma, 0.0);
  r.formula = "same-string";
  return r;
}

}  // namespace monogamy
