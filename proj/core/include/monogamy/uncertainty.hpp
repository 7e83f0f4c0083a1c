#pragma once

// Guessing probabilities and min-entropy for classical-quantum ensembles, and
// the tripartite uncertainty relation
//   p_guess(X|B Theta) + p_guess(X|C Theta) <= 1 + sqrt(c).

#include <cstddef>
#include <string>
#include <vector>

#include "monogamy/game.hpp"
#include "monogamy/linalg.hpp"

namespace monogamy {

/// {p_x, rho_B^x}: a classical label with quantum side information.
struct CqEnsemble {
  std::vector<std::string> alphabet;
  std::vector<double> weights;
  std::vector<ComplexMatrix> conditionals;

  std::size_t size() const { return weights.size(); }
  std::size_t dim() const { return conditionals.empty() ? 0 : static_cast<std::size_t>(conditionals[0].rows()); }
  /// p_x rho_B^x.
  std::vector<ComplexMatrix> weighted() const;
  void validate() const;
};

/// Optimal two-outcome discrimination: outcome 0 is the projector onto the
/// non-negative part of (w0 - w1); the zero eigenspace goes to outcome 0.
Povm helstrom_measurement(const ComplexMatrix& w0, const ComplexMatrix& w1);

/// Square-root measurement M_x = s^{-1/2} w_x s^{-1/2}, s = sum_x w_x, with
/// the kernel of s assigned to outcome 0 so the result is a POVM.
Povm pretty_good_measurement(const std::vector<ComplexMatrix>& weighted);

/// sum_x tr(w_x M_x).
double guessing_value(const std::vector<ComplexMatrix>& weighted, const Povm& povm);

struct GuessResult {
  double value = 0.0;
  Povm povm;
};

/// 1/2 (1 + ||p0 rho0 - p1 rho1||_1) with its Helstrom measurement.
/// DomainError for non-binary alphabets.
GuessResult guessing_probability_binary(const CqEnsemble& e);

struct PgmResult {
  double value = 0.0;
  Povm povm;
  // The PGM lost to ignoring B altogether (value < max_x p_x).
  bool beaten_by_prior = false;
};

PgmResult pgm_guessing_lower_bound(const CqEnsemble& e);

/// H_min(X|B Theta) = -log2 sum_theta p_theta p_guess(X|B)_theta. Exact for
/// binary alphabets; otherwise a bracket from feasible measurements.
struct MinEntropy {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = true;
  double value() const { return lower; }
};

MinEntropy min_entropy_conditional(const std::vector<CqEnsemble>& per_theta,
                                   const std::vector<double>& theta_weights);

/// rho_{XBC Theta} after Alice measures A with F^theta, theta uniform. The
/// per-theta ensembles carry weights renormalized within each theta.
struct PostMeasurement {
  std::vector<CqEnsemble> bob;
  std::vector<CqEnsemble> charlie;
};

PostMeasurement post_measurement_state(const ComplexMatrix& rho_abc, const DimensionList& dims,
                                       const PovmFamily& alice);
PostMeasurement post_measurement_state(const ComplexMatrix& rho_abc, const DimensionList& dims,
                                       const Povm& f0, const Povm& f1);

struct UrReport {
  double c = 0.0;
  double pguess_b = 0.0;
  double pguess_c = 0.0;
  double sum = 0.0;
  double bound = 0.0;  // 1 + sqrt(c)
  double hmin_b = 0.0;
  double hmin_c = 0.0;
  double entropy_bound = 0.0;  // -2 log2((1 + sqrt c) / 2)
  bool satisfied = false;
};

UrReport check_uncertainty_relation(const ComplexMatrix& rho_abc, const DimensionList& dims,
                                    const Povm& f0, const Povm& f1);

/// -2 log2((1 + sqrt(c^n)) / 2).
double ur_bound_n(double c, std::size_t n);

}  // namespace monogamy
