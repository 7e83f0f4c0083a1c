#include "monogamy/qkd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "monogamy/bounds.hpp"
#include "monogamy/errors.hpp"
#include "monogamy/parallel.hpp"
#include "monogamy/random.hpp"

namespace monogamy {

namespace {

constexpr std::uint64_t kTrialStream = 0xe0d;
constexpr std::uint64_t kMaxClassicalN = 1000000;
constexpr std::uint64_t kMaxQuantumN = 5;

double sampling_term(double epsilon, std::uint64_t t) {
  return 5.0 * std::exp(-2.0 * epsilon * epsilon * static_cast<double>(t));
}

// Everything in the exponent except ell.
double budget_without_ell(std::uint64_t n, std::uint64_t t, std::uint64_t s, double gamma, double epsilon) {
  const double nd = static_cast<double>(n);
  return log2_inv_beta0() * nd - binary_entropy(gamma + epsilon) * nd - static_cast<double>(t) -
         static_cast<double>(s) + 2.0;
}

double delta_at(std::uint64_t n, std::uint64_t t, std::uint64_t s, std::uint64_t ell, double gamma, double epsilon) {
  return security_delta(QkdParams{n, t, s, ell, gamma, epsilon}).delta;
}

double relative_distance(const BitString& a, const BitString& b) {
  if (a.empty()) return 0.0;
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] ^ b[i]) & 1U;
  return static_cast<double>(d) / static_cast<double>(a.size());
}

BitString random_bits(std::size_t n, Rng& rng) {
  BitString out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng() & 1U);
  return out;
}

std::uint64_t bits_to_index(const BitString& bits) {
  std::uint64_t v = 0;
  for (auto b : bits) v = (v << 1) | b;
  return v;
}

BitString index_to_bits(std::uint64_t v, std::size_t n) {
  BitString out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>((v >> (n - 1 - i)) & 1U);
  return out;
}

struct Measured {
  BitString x, y;
};

Measured run_device(const NoisyChannel& dev, std::size_t n, Rng& rng, const BitString&) {
  if (dev.flip_prob < 0.0 || dev.flip_prob > 1.0) throw DomainError("simulate_eqkd: flip probability outside [0, 1]");
  if (n > kMaxClassicalN) throw CapacityError("simulate_eqkd: n exceeds 10^6 for the noisy-channel device");
  std::bernoulli_distribution flip(dev.flip_prob);
  Measured m{random_bits(n, rng), {}};
  m.y = m.x;
  for (auto& b : m.y) b ^= static_cast<std::uint8_t>(flip(rng));
  return m;
}

Measured run_device(const QuantumDevice& dev, std::size_t n, Rng& rng, const BitString& theta) {
  if (n > kMaxQuantumN) throw CapacityError("simulate_eqkd: n exceeds 5 for the quantum device");
  const auto game = game_power(bb84_game(), n);
  dev.strategy.validate(game);
  const auto& dims = dev.strategy.dims;
  const ComplexMatrix rho_ab = partial_trace(dev.strategy.rho_abc, dims, {0, 1});
  const auto th = static_cast<std::size_t>(bits_to_index(theta));
  const std::size_t outcomes = game.outcome_count();
  std::vector<double> joint(outcomes * outcomes, 0.0);
  for (std::size_t x = 0; x < outcomes; ++x) {
    for (std::size_t y = 0; y < outcomes; ++y) {
      const ComplexMatrix op = tensor(game.povms[th][x], dev.strategy.bob[th][y]);
      joint[x * outcomes + y] = std::max(0.0, (op * rho_ab).trace().real());
    }
  }
  std::discrete_distribution<std::size_t> pick(joint.begin(), joint.end());
  const std::size_t k = pick(rng);
  return {index_to_bits(k / outcomes, n), index_to_bits(k % outcomes, n)};
}

BitString gather(const BitString& bits, const std::vector<std::size_t>& idx) {
  BitString out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(bits[i]);
  return out;
}

}  // namespace

void QkdParams::validate() const {
  if (n == 0) throw DomainError("qkd: n must be positive");
  if (t == 0 || t >= n) throw DomainError("qkd: need 0 < t < n");
  if (!(gamma >= 0.0 && gamma < 0.5)) throw DomainError("qkd: gamma must lie in [0, 1/2)");
  if (!(epsilon > 0.0)) throw DomainError("qkd: epsilon must be positive");
  if (!(gamma + epsilon < 0.5)) throw DomainError("qkd: gamma + epsilon must be below 1/2");
}

std::uint64_t auto_syndrome_length(std::uint64_t n, std::uint64_t t, double gamma, double epsilon) {
  QkdParams{n, t, 0, 0, gamma, epsilon}.validate();
  return static_cast<std::uint64_t>(std::ceil(static_cast<double>(n - t) * binary_entropy(gamma + epsilon)));
}

QkdSecurityReport security_delta(const QkdParams& p) {
  p.validate();
  QkdSecurityReport r;
  r.sampling_term = sampling_term(p.epsilon, p.t);
  r.exponent_budget = budget_without_ell(p.n, p.t, p.s, p.gamma, p.epsilon) - static_cast<double>(p.ell);
  r.log2_pa_term = -0.5 * r.exponent_budget;
  r.pa_term = std::exp2(r.log2_pa_term);
  r.delta = r.sampling_term + r.pa_term;
  r.vacuous = r.delta >= 1.0;
  return r;
}

std::string to_string(KeyLengthStatus s) {
  switch (s) {
    case KeyLengthStatus::Feasible: return "feasible";
    case KeyLengthStatus::NoExtractableKey: return "no-extractable-key";
    case KeyLengthStatus::Infeasible: return "infeasible";
  }
  return "unknown";
}

KeyLengthResult max_key_length(std::uint64_t n, std::uint64_t t, std::uint64_t s, double gamma,
                               double epsilon, double delta_target) {
  QkdParams{n, t, s, 0, gamma, epsilon}.validate();
  if (!(delta_target > 0.0)) throw DomainError("max_key_length: delta target must be positive");
  KeyLengthResult r;
  r.sampling_term = sampling_term(epsilon, t);
  if (delta_target <= r.sampling_term) {
    r.status = KeyLengthStatus::Infeasible;
    return r;
  }
  const double bound = budget_without_ell(n, t, s, gamma, epsilon) + 2.0 * std::log2(delta_target - r.sampling_term);
  if (bound < 1.0) {
    r.status = KeyLengthStatus::NoExtractableKey;
    return r;
  }
  auto ell = static_cast<std::uint64_t>(std::floor(bound));
  while (ell > 0 && delta_at(n, t, s, ell, gamma, epsilon) > delta_target) --ell;
  while (delta_at(n, t, s, ell + 1, gamma, epsilon) <= delta_target) ++ell;
  r.ell = ell;
  r.status = ell == 0 ? KeyLengthStatus::NoExtractableKey : KeyLengthStatus::Feasible;
  return r;
}

double noise_threshold() {
  const double target = log2_inv_beta0();
  double lo = 0.0, hi = 0.5;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (2.0 * binary_entropy(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

AsymptoticRate asymptotic_rate(std::uint64_t n, double gamma, double delta_target) {
  if (n < 8) throw DomainError("asymptotic_rate: n too small");
  if (!(delta_target > 0.0 && delta_target < 1.0)) throw DomainError("asymptotic_rate: target must lie in (0, 1)");
  AsymptoticRate r;
  r.n = n;
  const double nd = static_cast<double>(n);
  r.t = static_cast<std::uint64_t>(std::floor(std::cbrt(nd * nd) + 1e-9));
  r.epsilon = std::sqrt(std::log(10.0 / delta_target) / (2.0 * static_cast<double>(r.t)));
  QkdParams{n, r.t, 0, 0, gamma, r.epsilon}.validate();
  const double h = binary_entropy(gamma + r.epsilon);
  r.s = nd * h;
  const double samp = sampling_term(r.epsilon, r.t);
  const double ell = log2_inv_beta0() * nd - h * nd - static_cast<double>(r.t) - r.s + 2.0 +
                     2.0 * std::log2(delta_target - samp);
  r.rate = ell / nd;
  r.limit = log2_inv_beta0() - 2.0 * h;
  r.gap = r.limit - r.rate;
  return r;
}

bool abort_decision(const BitString& x_sample, const BitString& y_sample, double gamma) {
  if (x_sample.size() != y_sample.size()) throw DimensionError("abort_decision: sample lengths differ");
  return relative_distance(x_sample, y_sample) > gamma;
}

ProtocolTranscript simulate_eqkd(const QkdParams& p, const DeviceModel& device, std::uint64_t seed) {
  p.validate();
  if (p.ell > p.n - p.t) throw DomainError("simulate_eqkd: ell exceeds the unsampled length");
  const auto n = static_cast<std::size_t>(p.n);
  ProtocolTranscript tr;
  tr.seed = seed;
  Rng rng = make_rng(seed);
  tr.theta = random_bits(n, rng);
  auto measured = std::visit([&](const auto& dev) { return run_device(dev, n, rng, tr.theta); }, device);
  if (measured.x.size() != n || measured.y.size() != n) throw DimensionError("simulate_eqkd: device output length mismatch");
  tr.x = std::move(measured.x);
  tr.y = std::move(measured.y);

  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::sample(all.begin(), all.end(), std::back_inserter(tr.sample), static_cast<std::ptrdiff_t>(p.t), rng);
  tr.x_sample = gather(tr.x, tr.sample);
  tr.y_sample = gather(tr.y, tr.sample);
  tr.sample_error_rate = relative_distance(tr.x_sample, tr.y_sample);
  tr.total_error_rate = relative_distance(tr.x, tr.y);
  tr.hoeffding_violation = tr.total_error_rate > tr.sample_error_rate + p.epsilon;
  tr.aborted = abort_decision(tr.x_sample, tr.y_sample, p.gamma);
  if (tr.aborted) return tr;

  std::vector<std::size_t> rest;
  rest.reserve(n - tr.sample.size());
  std::set_difference(all.begin(), all.end(), tr.sample.begin(), tr.sample.end(), std::back_inserter(rest));
  const BitString x_rest = gather(tr.x, rest);
  const BitString y_rest = gather(tr.y, rest);
  tr.code_seed = rng();
  tr.syndrome = syndrome_encode(x_rest, static_cast<std::size_t>(p.s), tr.code_seed);
  const BitString x_hat = syndrome_decode(y_rest, tr.syndrome, tr.code_seed);
  tr.decode_success = x_hat == x_rest;
  const std::size_t ell = static_cast<std::size_t>(p.ell);
  tr.hash_seed = random_bits(x_rest.size() + ell == 0 ? 0 : x_rest.size() + ell - 1, rng);
  tr.k = toeplitz_hash(tr.hash_seed, x_rest, ell);
  tr.k_hat = toeplitz_hash(tr.hash_seed, x_hat, ell);
  return tr;
}

EqkdTrialStats run_eqkd_trials(const QkdParams& p, const DeviceModel& device, std::size_t trials,
                               std::uint64_t seed) {
  if (trials == 0) throw DomainError("run_eqkd_trials: trials must be positive");
  struct Outcome {
    bool aborted = false, decoded = false, matched = false, violation = false;
  };
  std::vector<Outcome> outcomes(trials);
  parallel_for(trials, [&](std::size_t i) {
    const auto tr = simulate_eqkd(p, device, derive_seed(seed, kTrialStream, i));
    outcomes[i] = {tr.aborted, tr.decode_success, !tr.aborted && tr.k == tr.k_hat, tr.hoeffding_violation};
  });
  EqkdTrialStats st;
  st.trials = trials;
  std::size_t decoded = 0;
  for (const auto& o : outcomes) {
    st.aborts += o.aborted;
    st.hoeffding_violations += o.violation;
    if (o.aborted) continue;
    ++st.completed;
    if (!o.decoded) {
      ++st.decode_failures;
      continue;
    }
    ++decoded;
    st.key_matches += o.matched;
  }
  st.abort_rate = static_cast<double>(st.aborts) / static_cast<double>(trials);
  st.key_match_rate = decoded == 0 ? 0.0 : static_cast<double>(st.key_matches) / static_cast<double>(decoded);
  st.hoeffding_rate = static_cast<double>(st.hoeffding_violations) / static_cast<double>(trials);
  st.hoeffding_bound = std::exp(-2.0 * p.epsilon * p.epsilon * static_cast<double>(p.t));
  return st;
}

ComplexMatrix cq_matrix(const CqEnsemble& e) {
  const auto d = static_cast<Eigen::Index>(e.dim());
  const auto k = static_cast<Eigen::Index>(e.size());
  ComplexMatrix out = ComplexMatrix::Zero(k * d, k * d);
  for (Eigen::Index x = 0; x < k; ++x) {
    out.block(x * d, x * d, d, d) = e.weights[static_cast<std::size_t>(x)] * e.conditionals[static_cast<std::size_t>(x)];
  }
  return out;
}

namespace {

// Pr[L] * D(rho_XB|L, tau (x) rho_B|L), zero when Pr[L] = 0.
double conditioned_distance(const CqEnsemble& e, const std::vector<bool>& predicate, const ComplexMatrix& tau,
                            double& probability) {
  const auto d = static_cast<Eigen::Index>(e.dim());
  const auto k = static_cast<Eigen::Index>(e.size());
  probability = 0.0;
  ComplexMatrix joint = ComplexMatrix::Zero(k * d, k * d);
  ComplexMatrix marginal = ComplexMatrix::Zero(d, d);
  for (std::size_t x = 0; x < e.size(); ++x) {
    if (!predicate[x]) continue;
    probability += e.weights[x];
    const auto i = static_cast<Eigen::Index>(x);
    joint.block(i * d, i * d, d, d) = e.weights[x] * e.conditionals[x];
    marginal += e.weights[x] * e.conditionals[x];
  }
  if (probability <= 0.0) return 0.0;
  joint /= probability;
  marginal /= probability;
  return probability * 0.5 * trace_norm(joint - tensor(tau, marginal));
}

}  // namespace

SecdefGap secdef_gap(const CqEnsemble& rho, const CqEnsemble& rho_tilde, const std::vector<bool>& predicate,
                     const ComplexMatrix& tau_x) {
  rho.validate();
  rho_tilde.validate();
  if (rho.size() != rho_tilde.size() || rho.dim() != rho_tilde.dim()) {
    throw DimensionError("secdef_gap: CQ states over different alphabets or systems");
  }
  if (predicate.size() != rho.size()) throw DimensionError("secdef_gap: predicate length differs from the alphabet");
  if (static_cast<std::size_t>(tau_x.rows()) != rho.size()) throw DimensionError("secdef_gap: tau_X has the wrong dimension");
  require_density(tau_x, "secdef_gap tau_X");

  SecdefGap g;
  for (std::size_t x = 0; x < rho.size(); ++x) {
    g.distance += 0.5 * trace_norm(rho.weights[x] * rho.conditionals[x] - rho_tilde.weights[x] * rho_tilde.conditionals[x]);
  }
  g.lhs = conditioned_distance(rho, predicate, tau_x, g.pr_rho);
  g.rhs = 5.0 * g.distance + conditioned_distance(rho_tilde, predicate, tau_x, g.pr_tilde);
  return g;
}

SecdefGap secdef_gap(const CqEnsemble& rho, const CqEnsemble& rho_tilde, const std::vector<bool>& predicate) {
  const auto k = static_cast<Eigen::Index>(rho.size());
  return secdef_gap(rho, rho_tilde, predicate, ComplexMatrix::Identity(k, k) / static_cast<double>(k));
}

}  // namespace monogamy
