#include "monogamy/seesaw.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include "monogamy/errors.hpp"
#include "monogamy/parallel.hpp"
#include "monogamy/random.hpp"
#include "monogamy/uncertainty.hpp"

namespace monogamy {

namespace {

constexpr std::size_t kRefineIters = 60;
constexpr std::uint64_t kRestartStream = 0x5ee5a11;

// Iterative refinement toward a stationary point of sum_x tr(sigma_x M_x):
// M_x <- G^{-1/2} sigma_x M_x sigma_x G^{-1/2}, G = sum_y sigma_y M_y sigma_y.
Povm refine(const std::vector<ComplexMatrix>& sigma, Povm start) {
  Povm best = start;
  double best_value = guessing_value(sigma, best);
  Povm m = std::move(start);
  const auto d = sigma[0].rows();
  for (std::size_t it = 0; it < kRefineIters; ++it) {
    std::vector<ComplexMatrix> r(m.size());
    ComplexMatrix g = ComplexMatrix::Zero(d, d);
    for (std::size_t x = 0; x < m.size(); ++x) {
      r[x] = sigma[x] * m[x] * sigma[x];
      g += r[x];
    }
    g = (0.5 * (g + g.adjoint())).eval();
    const ComplexMatrix inv = psd_inverse_sqrt(g);
    for (std::size_t x = 0; x < m.size(); ++x) {
      ComplexMatrix next = inv * r[x] * inv;
      m[x] = 0.5 * (next + next.adjoint());
    }
    m[0] += ComplexMatrix::Identity(d, d) - support_projector(g);
    const double v = guessing_value(sigma, m);
    if (v > best_value) {
      best_value = v;
      best = m;
    }
  }
  return best;
}

// M_x <- S^{-1/2} M_x S^{-1/2} with S = sum_x M_x, after clipping negative parts.
Povm normalized(Povm m) {
  const auto d = m[0].rows();
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (auto& e : m) {
    const auto eig = hermitian_eigen(e);
    const RealVector clipped = eig.values.cwiseMax(0.0);
    e = eig.vectors * clipped.asDiagonal() * eig.vectors.adjoint();
    total += e;
  }
  const ComplexMatrix inv = psd_inverse_sqrt(0.5 * (total + total.adjoint()));
  for (auto& e : m) {
    ComplexMatrix next = inv * e * inv;
    e = 0.5 * (next + next.adjoint());
  }
  m[0] += ComplexMatrix::Identity(d, d) - support_projector(total);
  return m;
}

Povm argmax_scalar(const std::vector<ComplexMatrix>& sigma) {
  std::size_t best = 0;
  for (std::size_t x = 1; x < sigma.size(); ++x) {
    if (sigma[x](0, 0).real() > sigma[best](0, 0).real()) best = x;
  }
  Povm out(sigma.size(), ComplexMatrix::Zero(1, 1));
  out[best](0, 0) = 1.0;
  return out;
}

PovmFamily random_family(std::size_t dim, std::size_t theta_count, std::size_t outcome_count, Rng& rng) {
  PovmFamily f;
  f.reserve(theta_count);
  for (std::size_t t = 0; t < theta_count; ++t) f.push_back(random_projective_povm(dim, outcome_count, rng));
  return f;
}

// Integer k with k^n == d, if any.
std::optional<std::size_t> integer_root(std::size_t d, std::size_t n) {
  const auto guess = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(d), 1.0 / static_cast<double>(n))));
  for (std::size_t k = guess > 0 ? guess - 1 : 0; k <= guess + 1; ++k) {
    if (k == 0) continue;
    std::size_t p = 1;
    for (std::size_t i = 0; i < n && p <= d; ++i) p *= k;
    if (p == d) return k;
  }
  return std::nullopt;
}

bool better(const SeesawResult& a, const SeesawResult& b) { return a.value > b.value; }

}  // namespace

void SeesawConfig::validate() const {
  if (!(tol > 0.0)) throw DomainError("seesaw: tol must be positive");
  if (bob_dim == 0 || charlie_dim == 0) throw DomainError("seesaw: dimensions must be at least 1");
  if (max_iters == 0) throw DomainError("seesaw: max_iters must be positive");
  if (restarts == 0) throw DomainError("seesaw: restarts must be positive");
}

StateStep optimal_state_step(const MonogamyGame& game, const PovmFamily& bob,
                             const PovmFamily& charlie, std::size_t dim_b, std::size_t dim_c) {
  for (std::size_t t = 0; t < game.theta_count(); ++t) {
    if (!is_povm(bob.at(t), dim_b) || !is_povm(charlie.at(t), dim_c)) {
      throw ValidationError("optimal_state_step: guesser measurements are not POVMs");
    }
  }
  const auto eig = hermitian_eigen(game_operator(game, bob, charlie));
  const auto last = eig.values.size() - 1;
  const double top = eig.values[last];
  std::size_t pick = last;
  while (pick > 0 && eig.values[pick - 1] >= top - 1e-12) --pick;
  return {projector(eig.vectors.col(static_cast<Eigen::Index>(pick))), top};
}

std::vector<std::vector<ComplexMatrix>> conditional_operators(const MonogamyGame& game,
                                                              const Strategy& s, Party party) {
  const std::size_t da = s.dims.at(0), db = s.dims.at(1), dc = s.dims.at(2);
  const ComplexMatrix id_b = ComplexMatrix::Identity(static_cast<Eigen::Index>(db), static_cast<Eigen::Index>(db));
  const ComplexMatrix id_c = ComplexMatrix::Identity(static_cast<Eigen::Index>(dc), static_cast<Eigen::Index>(dc));
  const std::size_t keep = party == Party::Bob ? 1 : 2;
  std::vector<std::vector<ComplexMatrix>> sigma(game.theta_count());
  for (std::size_t t = 0; t < game.theta_count(); ++t) {
    for (std::size_t x = 0; x < game.outcome_count(); ++x) {
      const ComplexMatrix op = party == Party::Bob
                                   ? tensor(tensor(game.povms[t][x], id_b), s.charlie[t][x])
                                   : tensor(tensor(game.povms[t][x], s.bob[t][x]), id_c);
      ComplexMatrix reduced = partial_trace(op * s.rho_abc, {da, db, dc}, {keep});
      sigma[t].push_back(0.5 * (reduced + reduced.adjoint()));
    }
  }
  return sigma;
}

PovmFamily optimal_povm_step(const MonogamyGame& game, const Strategy& s, Party party) {
  require_density(s.rho_abc, "optimal_povm_step");
  const auto sigma = conditional_operators(game, s, party);
  const PovmFamily& current = party == Party::Bob ? s.bob : s.charlie;
  const std::size_t dim = party == Party::Bob ? s.dim_b() : s.dim_c();
  PovmFamily out;
  out.reserve(sigma.size());
  for (std::size_t t = 0; t < sigma.size(); ++t) {
    if (game.outcome_count() == 2) {
      out.push_back(helstrom_measurement(sigma[t][0], sigma[t][1]));
    } else if (dim == 1) {
      out.push_back(argmax_scalar(sigma[t]));
    } else {
      Povm best = current[t];
      double best_value = guessing_value(sigma[t], best);
      const Povm pgm = pretty_good_measurement(sigma[t]);
      for (const Povm& raw : {pgm, refine(sigma[t], pgm), refine(sigma[t], current[t])}) {
        const Povm candidate = normalized(raw);
        if (!is_povm(candidate, dim)) continue;
        const double v = guessing_value(sigma[t], candidate);
        if (v > best_value) {
          best_value = v;
          best = candidate;
        }
      }
      out.push_back(std::move(best));
    }
  }
  return out;
}

SeesawResult seesaw_from(const MonogamyGame& game, PovmFamily bob, PovmFamily charlie,
                         std::size_t dim_b, std::size_t dim_c, const SeesawConfig& cfg) {
  SeesawResult r;
  r.strategy.dims = {game.dim_a, dim_b, dim_c};
  r.strategy.bob = std::move(bob);
  r.strategy.charlie = std::move(charlie);
  double previous = -1.0;
  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    auto step = optimal_state_step(game, r.strategy.bob, r.strategy.charlie, dim_b, dim_c);
    r.strategy.rho_abc = std::move(step.rho);
    r.strategy.bob = optimal_povm_step(game, r.strategy, Party::Bob);
    r.strategy.charlie = optimal_povm_step(game, r.strategy, Party::Charlie);
    const double value = winning_probability(game, r.strategy).value;
    r.trajectory.push_back(value);
    r.iterations = it + 1;
    if (value - previous < cfg.tol) break;
    previous = value;
  }
  r.value = r.trajectory.back();
  return r;
}

SeesawResult seesaw(const MonogamyGame& game, const SeesawConfig& cfg) {
  game.validate();
  cfg.validate();
  const std::size_t k = game.theta_count(), x = game.outcome_count();
  if (game.dim_a * cfg.bob_dim * cfg.charlie_dim > 4096) {
    throw CapacityError("seesaw: joint dimension exceeds 4096");
  }

  std::vector<SeesawResult> runs(cfg.restarts);
  parallel_for(cfg.restarts, [&](std::size_t i) {
    Rng rng = make_rng(derive_seed(cfg.seed, kRestartStream, i));
    auto bob = random_family(cfg.bob_dim, k, x, rng);
    auto charlie = random_family(cfg.charlie_dim, k, x, rng);
    runs[i] = seesaw_from(game, std::move(bob), std::move(charlie), cfg.bob_dim, cfg.charlie_dim, cfg);
  });
  SeesawResult best = std::move(runs[0]);
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (better(runs[i], best)) best = std::move(runs[i]);
  }

  if (cfg.product_init && game.base && game.repetitions > 1) {
    const std::size_t n = game.repetitions;
    const auto kb = integer_root(cfg.bob_dim, n);
    const auto kc = integer_root(cfg.charlie_dim, n);
    if (kb && kc) {
      SeesawConfig single = cfg;
      single.bob_dim = *kb;
      single.charlie_dim = *kc;
      const auto base = seesaw(*game.base, single);
      const Strategy start = strategy_power(base.strategy, n, game.base->theta_count(),
                                            game.base->outcome_count());
      auto product = seesaw_from(game, start.bob, start.charlie, cfg.bob_dim, cfg.charlie_dim, cfg);
      if (better(product, best)) best = std::move(product);
    }
  }
  return best;
}

Strategy bb84_optimal_unentangled_strategy() {
  ComplexVector phi(2);
  phi << std::cos(std::numbers::pi / 8.0), std::sin(std::numbers::pi / 8.0);
  return pure_strategy(phi, {2, 1, 1}, constant_guess(2, 2, 0), constant_guess(2, 2, 0));
}

}  // namespace monogamy
