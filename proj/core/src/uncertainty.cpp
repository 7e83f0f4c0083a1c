#include "monogamy/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "monogamy/errors.hpp"

namespace monogamy {

namespace {

constexpr double kZeroWeight = 1e-15;

}  // namespace

std::vector<ComplexMatrix> CqEnsemble::weighted() const {
  std::vector<ComplexMatrix> out;
  out.reserve(size());
  for (std::size_t x = 0; x < size(); ++x) out.push_back(weights[x] * conditionals[x]);
  return out;
}

void CqEnsemble::validate() const {
  if (weights.empty()) throw ValidationError("CqEnsemble: empty alphabet");
  if (weights.size() != conditionals.size() || (!alphabet.empty() && alphabet.size() != weights.size())) {
    throw ValidationError("CqEnsemble: alphabet, weights and conditionals differ in length");
  }
  double total = 0.0;
  for (double p : weights) {
    if (p < -1e-12) throw ValidationError("CqEnsemble: negative weight");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError("CqEnsemble: weights do not sum to 1");
  const auto d = conditionals[0].rows();
  for (const auto& c : conditionals) {
    if (c.rows() != d) throw DimensionError("CqEnsemble: conditionals differ in dimension");
    require_density(c, "CqEnsemble conditional");
  }
}

Povm helstrom_measurement(const ComplexMatrix& w0, const ComplexMatrix& w1) {
  const ComplexMatrix p0 = nonnegative_projector(w0 - w1);
  return {p0, ComplexMatrix::Identity(p0.rows(), p0.cols()) - p0};
}

Povm pretty_good_measurement(const std::vector<ComplexMatrix>& weighted) {
  if (weighted.empty()) throw DimensionError("pretty_good_measurement: no hypotheses");
  ComplexMatrix s = ComplexMatrix::Zero(weighted[0].rows(), weighted[0].cols());
  for (const auto& w : weighted) s += w;
  const ComplexMatrix inv = psd_inverse_sqrt(s);
  Povm out;
  out.reserve(weighted.size());
  for (const auto& w : weighted) {
    ComplexMatrix m = inv * w * inv;
    out.push_back(0.5 * (m + m.adjoint()));
  }
  out[0] += ComplexMatrix::Identity(s.rows(), s.cols()) - support_projector(s);
  return out;
}

double guessing_value(const std::vector<ComplexMatrix>& weighted, const Povm& povm) {
  double v = 0.0;
  for (std::size_t x = 0; x < weighted.size(); ++x) v += (weighted[x] * povm[x]).trace().real();
  return v;
}

GuessResult guessing_probability_binary(const CqEnsemble& e) {
  e.validate();
  if (e.size() != 2) throw DomainError("guessing_probability_binary: alphabet must have two symbols");
  const auto w = e.weighted();
  GuessResult r;
  r.value = 0.5 * (1.0 + trace_norm(w[0] - w[1]));
  r.povm = helstrom_measurement(w[0], w[1]);
  return r;
}

PgmResult pgm_guessing_lower_bound(const CqEnsemble& e) {
  e.validate();
  const auto w = e.weighted();
  PgmResult r;
  r.povm = pretty_good_measurement(w);
  r.value = guessing_value(w, r.povm);
  r.beaten_by_prior = r.value < *std::max_element(e.weights.begin(), e.weights.end()) - 1e-12;
  return r;
}

MinEntropy min_entropy_conditional(const std::vector<CqEnsemble>& per_theta,
                                   const std::vector<double>& theta_weights) {
  if (per_theta.empty() || per_theta.size() != theta_weights.size()) {
    throw DimensionError("min_entropy_conditional: one weight per theta required");
  }
  double lower_guess = 0.0;
  double upper_guess = 0.0;
  bool exact = true;
  for (std::size_t t = 0; t < per_theta.size(); ++t) {
    const auto& e = per_theta[t];
    if (e.size() == 2) {
      const double g = guessing_probability_binary(e).value;
      lower_guess += theta_weights[t] * g;
      upper_guess += theta_weights[t] * g;
    } else {
      exact = false;
      const double prior = *std::max_element(e.weights.begin(), e.weights.end());
      lower_guess += theta_weights[t] * std::max(pgm_guessing_lower_bound(e).value, prior);
      upper_guess += theta_weights[t];
    }
  }
  MinEntropy h;
  h.exact = exact;
  // A larger guessing probability means a smaller entropy.
  h.lower = -std::log2(std::min(upper_guess, 1.0));
  h.upper = -std::log2(lower_guess);
  if (exact) h.lower = h.upper;
  return h;
}

PostMeasurement post_measurement_state(const ComplexMatrix& rho_abc, const DimensionList& dims,
                                       const PovmFamily& alice) {
  if (dims.size() != 3) throw DimensionError("post_measurement_state: dims must be {d_A, d_B, d_C}");
  if (static_cast<std::size_t>(rho_abc.rows()) != dimension_product(dims)) {
    throw DimensionError("post_measurement_state: rho does not match dims");
  }
  require_density(rho_abc, "post_measurement_state");
  for (const auto& f : alice) {
    if (!is_povm(f, dims[0])) throw ValidationError("post_measurement_state: not a POVM on A");
  }
  const auto dbc = static_cast<Eigen::Index>(dims[1] * dims[2]);
  const ComplexMatrix id_bc = ComplexMatrix::Identity(dbc, dbc);
  const DimensionList bc_dims{dims[1], dims[2]};

  PostMeasurement out;
  for (const auto& povm : alice) {
    CqEnsemble b, c;
    for (std::size_t x = 0; x < povm.size(); ++x) {
      const ComplexMatrix bc = partial_trace(tensor(povm[x], id_bc) * rho_abc, dims, {1, 2});
      ComplexMatrix rb = partial_trace(bc, bc_dims, {0});
      ComplexMatrix rc = partial_trace(bc, bc_dims, {1});
      const double p = std::max(bc.trace().real(), 0.0);
      if (p > kZeroWeight) {
        rb = (0.5 * (rb + rb.adjoint()) / p).eval();
        rc = (0.5 * (rc + rc.adjoint()) / p).eval();
      } else {
        rb = ComplexMatrix::Identity(rb.rows(), rb.cols()) / static_cast<double>(rb.rows());
        rc = ComplexMatrix::Identity(rc.rows(), rc.cols()) / static_cast<double>(rc.rows());
      }
      const std::string label = std::to_string(x);
      b.alphabet.push_back(label);
      c.alphabet.push_back(label);
      b.weights.push_back(p);
      c.weights.push_back(p);
      b.conditionals.push_back(std::move(rb));
      c.conditionals.push_back(std::move(rc));
    }
    // Renormalize within theta; tr(F rho) sums to 1 up to rounding.
    const double total = std::accumulate(b.weights.begin(), b.weights.end(), 0.0);
    for (auto& p : b.weights) p /= total;
    c.weights = b.weights;
    out.bob.push_back(std::move(b));
    out.charlie.push_back(std::move(c));
  }
  return out;
}

PostMeasurement post_measurement_state(const ComplexMatrix& rho_abc, const DimensionList& dims,
                                       const Povm& f0, const Povm& f1) {
  return post_measurement_state(rho_abc, dims, PovmFamily{f0, f1});
}

UrReport check_uncertainty_relation(const ComplexMatrix& rho_abc, const DimensionList& dims,
                                    const Povm& f0, const Povm& f1) {
  if (f0.size() != 2 || f1.size() != 2) {
    throw DomainError("check_uncertainty_relation: binary-outcome POVMs required");
  }
  const auto post = post_measurement_state(rho_abc, dims, f0, f1);
  UrReport r;
  for (const auto& a : f0) {
    for (const auto& b : f1) r.c = std::max(r.c, overlap_of_pair(a, b));
  }
  for (std::size_t t = 0; t < 2; ++t) {
    r.pguess_b += 0.5 * guessing_probability_binary(post.bob[t]).value;
    r.pguess_c += 0.5 * guessing_probability_binary(post.charlie[t]).value;
  }
  r.sum = r.pguess_b + r.pguess_c;
  r.bound = 1.0 + std::sqrt(r.c);
  r.hmin_b = -std::log2(r.pguess_b);
  r.hmin_c = -std::log2(r.pguess_c);
  r.entropy_bound = ur_bound_n(r.c, 1);
  r.satisfied = r.sum <= r.bound + 1e-8 && r.hmin_b + r.hmin_c >= r.entropy_bound - 1e-8;
  return r;
}

double ur_bound_n(double c, std::size_t n) {
  if (!(c > 0.0 && c <= 1.0)) throw DomainError("ur_bound_n: c must lie in (0, 1]");
  if (n == 0) throw DomainError("ur_bound_n: n must be positive");
  return -2.0 * std::log2((1.0 + std::sqrt(std::pow(c, static_cast<double>(n)))) / 2.0);
}

}  // namespace monogamy
