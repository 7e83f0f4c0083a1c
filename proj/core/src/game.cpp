#include "monogamy/game.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "monogamy/bounds.hpp"
#include "monogamy/errors.hpp"
#include "monogamy/parallel.hpp"

namespace monogamy {

namespace {

constexpr double kTermGuard = 1e6;
constexpr double kEntryGuard = 5e7;

void require_family(const PovmFamily& family, std::size_t theta_count, std::size_t outcome_count,
                    std::size_t dim, const std::string& who) {
  if (family.size() != theta_count) {
    throw ValidationError(who + ": expected " + std::to_string(theta_count) + " bases, got " +
                          std::to_string(family.size()));
  }
  for (std::size_t t = 0; t < theta_count; ++t) {
    if (family[t].size() != outcome_count) {
      throw ValidationError(who + ": basis " + std::to_string(t) + " has " +
                            std::to_string(family[t].size()) + " outcomes, expected " +
                            std::to_string(outcome_count));
    }
    if (!is_povm(family[t], dim)) {
      throw ValidationError(who + ": basis " + std::to_string(t) + " is not a POVM on dimension " +
                            std::to_string(dim));
    }
  }
}

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// Digits of `index` in base `radix`, most significant first.
std::vector<std::size_t> digits_of(std::size_t index, std::size_t radix, std::size_t n) {
  std::vector<std::size_t> d(n);
  for (std::size_t i = n; i-- > 0;) {
    d[i] = index % radix;
    index /= radix;
  }
  return d;
}

// tr(M rho) for a square M.
double trace_product(const ComplexMatrix& m, const ComplexMatrix& rho) {
  return (m.cwiseProduct(rho.transpose())).sum().real();
}

}  // namespace

void MonogamyGame::validate() const {
  if (dim_a == 0) throw ValidationError("game: dim_a must be positive");
  if (thetas.empty() || outcomes.empty()) throw ValidationError("game: empty label set");
  require_family(povms, thetas.size(), outcomes.size(), dim_a, "game");
}

void Strategy::validate(const MonogamyGame& game) const {
  if (dims.size() != 3) throw DimensionError("strategy: dims must be {d_A, d_B, d_C}");
  if (dims[0] != game.dim_a) throw DimensionError("strategy: d_A does not match the game");
  if (static_cast<std::size_t>(rho_abc.rows()) != dimension_product(dims)) {
    throw DimensionError("strategy: rho_abc dimension does not match dims");
  }
  require_density(rho_abc, "strategy rho_abc");
  require_family(bob, game.theta_count(), game.outcome_count(), dims[1], "strategy bob");
  require_family(charlie, game.theta_count(), game.outcome_count(), dims[2], "strategy charlie");
}

Strategy pure_strategy(const ComplexVector& psi, DimensionList dims, PovmFamily bob,
                       PovmFamily charlie) {
  return Strategy{projector(psi), std::move(dims), std::move(bob), std::move(charlie)};
}

PovmFamily constant_guess(std::size_t theta_count, std::size_t outcome_count, std::size_t answer) {
  if (answer >= outcome_count) throw DomainError("constant_guess: answer out of range");
  Povm povm(outcome_count, ComplexMatrix::Zero(1, 1));
  povm[answer](0, 0) = 1.0;
  return PovmFamily(theta_count, povm);
}

PovmFamily uniform_guess(std::size_t dim, std::size_t theta_count, std::size_t outcome_count) {
  const auto d = static_cast<Eigen::Index>(dim);
  const ComplexMatrix share = ComplexMatrix::Identity(d, d) / static_cast<double>(outcome_count);
  return PovmFamily(theta_count, Povm(outcome_count, share));
}

namespace {

PovmFamily family_power(const PovmFamily& family, std::size_t n, std::size_t theta_count,
                        std::size_t outcome_count) {
  const std::size_t thetas = ipow(theta_count, n);
  const std::size_t xs = ipow(outcome_count, n);
  PovmFamily out(thetas, Povm(xs));
  for (std::size_t t = 0; t < thetas; ++t) {
    const auto td = digits_of(t, theta_count, n);
    for (std::size_t x = 0; x < xs; ++x) {
      const auto xd = digits_of(x, outcome_count, n);
      ComplexMatrix acc = ComplexMatrix::Identity(1, 1);
      for (std::size_t i = 0; i < n; ++i) acc = tensor(acc, family[td[i]][xd[i]]);
      out[t][x] = std::move(acc);
    }
  }
  return out;
}

void guard_power(std::size_t theta_count, std::size_t outcome_count, std::size_t dim, std::size_t n) {
  const double terms = std::pow(static_cast<double>(theta_count * outcome_count), static_cast<double>(n));
  if (terms > kTermGuard) {
    throw CapacityError("game_power: |Theta|^n |X|^n = " + std::to_string(terms) + " exceeds 1e6");
  }
  const double entries = terms * std::pow(static_cast<double>(dim * dim), static_cast<double>(n));
  if (entries > kEntryGuard) {
    throw CapacityError("game_power: POVM storage of " + std::to_string(entries) +
                        " entries exceeds 5e7");
  }
}

}  // namespace

Strategy strategy_power(const Strategy& s, std::size_t n, std::size_t theta_count,
                        std::size_t outcome_count) {
  if (n == 0) throw DomainError("strategy_power: n must be positive");
  const std::size_t da = s.dims.at(0), db = s.dims.at(1), dc = s.dims.at(2);
  guard_power(theta_count, outcome_count, std::max({da, db, dc}), n);

  ComplexMatrix rho = ComplexMatrix::Identity(1, 1);
  DimensionList rounds;
  for (std::size_t i = 0; i < n; ++i) {
    rho = tensor(rho, s.rho_abc);
    rounds.insert(rounds.end(), {da, db, dc});
  }
  std::vector<std::size_t> order;
  for (std::size_t party = 0; party < 3; ++party) {
    for (std::size_t i = 0; i < n; ++i) order.push_back(3 * i + party);
  }
  Strategy out;
  out.rho_abc = permute_subsystems(rho, rounds, order);
  out.dims = {ipow(da, n), ipow(db, n), ipow(dc, n)};
  out.bob = family_power(s.bob, n, theta_count, outcome_count);
  out.charlie = family_power(s.charlie, n, theta_count, outcome_count);
  return out;
}

ComplexMatrix round_operator(const MonogamyGame& game, const PovmFamily& bob,
                             const PovmFamily& charlie, std::size_t theta) {
  const auto db = bob.at(theta).at(0).rows();
  const auto dc = charlie.at(theta).at(0).rows();
  const auto d = static_cast<Eigen::Index>(game.dim_a) * db * dc;
  ComplexMatrix pi = ComplexMatrix::Zero(d, d);
  for (std::size_t x = 0; x < game.outcome_count(); ++x) {
    pi += tensor(game.povms[theta][x], tensor(bob[theta][x], charlie[theta][x]));
  }
  return pi;
}

ComplexMatrix game_operator(const MonogamyGame& game, const PovmFamily& bob,
                            const PovmFamily& charlie) {
  std::vector<ComplexMatrix> rounds(game.theta_count());
  parallel_for(rounds.size(), [&](std::size_t t) { rounds[t] = round_operator(game, bob, charlie, t); });
  ComplexMatrix sum = ComplexMatrix::Zero(rounds[0].rows(), rounds[0].cols());
  for (const auto& r : rounds) sum += r;
  return sum / static_cast<double>(game.theta_count());
}

WinReport winning_probability(const MonogamyGame& game, const Strategy& s) {
  s.validate(game);
  WinReport report;
  report.per_theta.resize(game.theta_count());
  parallel_for(game.theta_count(), [&](std::size_t t) {
    report.per_theta[t] = trace_product(round_operator(game, s.bob, s.charlie, t), s.rho_abc);
  });
  for (double v : report.per_theta) report.value += v;
  report.value /= static_cast<double>(game.theta_count());
  return report;
}

QSet QSet::from_permutations(std::size_t outcome_count, std::vector<PermutationPair> pairs) {
  std::set<PermutationPair> seen;
  for (const auto& p : pairs) {
    if (!is_permutation(p.first, outcome_count) || !is_permutation(p.second, outcome_count)) {
      throw ValidationError("QSet: entry is not a bijection on the outcome set");
    }
    if (!seen.insert(p).second) throw ValidationError("QSet: duplicate permutation pair");
  }
  QSet q;
  q.outcome_count_ = outcome_count;
  q.pairs_ = std::move(pairs);
  return q;
}

QSet QSet::from_xor_shifts(std::size_t bits, std::vector<XorShift> shifts) {
  if (bits >= 64) throw CapacityError("QSet: XOR shifts support at most 63 bits");
  const std::uint64_t limit = std::uint64_t{1} << bits;
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (const auto& s : shifts) {
    if (s.bob >= limit || s.charlie >= limit) throw ValidationError("QSet: shift wider than the string");
    if (!seen.insert({s.bob, s.charlie}).second) throw ValidationError("QSet: duplicate shift pair");
  }
  QSet q;
  q.outcome_count_ = static_cast<std::size_t>(limit);
  q.pairs_ = std::move(shifts);
  return q;
}

std::size_t QSet::size() const {
  return std::visit([](const auto& v) { return v.size(); }, pairs_);
}

std::size_t QSet::bob(std::size_t q, std::size_t x) const {
  if (is_xor()) return x ^ static_cast<std::size_t>(xor_shifts()[q].bob);
  return std::get<std::vector<PermutationPair>>(pairs_)[q].first[x];
}

std::size_t QSet::charlie(std::size_t q, std::size_t x) const {
  if (is_xor()) return x ^ static_cast<std::size_t>(xor_shifts()[q].charlie);
  return std::get<std::vector<PermutationPair>>(pairs_)[q].second[x];
}

WinReport winning_probability_with_q(const MonogamyGame& game, const Strategy& s, const QSet& q) {
  s.validate(game);
  if (q.outcome_count() != game.outcome_count()) {
    throw DimensionError("winning_probability_with_q: Q-set acts on a different outcome set");
  }
  const auto db = static_cast<Eigen::Index>(s.dim_b());
  const auto dc = static_cast<Eigen::Index>(s.dim_c());
  WinReport report;
  report.per_theta.resize(game.theta_count());
  parallel_for(game.theta_count(), [&](std::size_t t) {
    double acc = 0.0;
    for (std::size_t x = 0; x < game.outcome_count(); ++x) {
      ComplexMatrix guesses = ComplexMatrix::Zero(db * dc, db * dc);
      for (std::size_t k = 0; k < q.size(); ++k) {
        guesses += tensor(s.bob[t][q.bob(k, x)], s.charlie[t][q.charlie(k, x)]);
      }
      acc += trace_product(tensor(game.povms[t][x], guesses), s.rho_abc);
    }
    report.per_theta[t] = acc;
  });
  for (double v : report.per_theta) report.value += v;
  report.value /= static_cast<double>(game.theta_count());
  return report;
}

MonogamyGame bb84_game() {
  MonogamyGame g;
  g.dim_a = 2;
  g.thetas = {"0", "1"};
  g.outcomes = {"0", "1"};
  const double r = 1.0 / std::sqrt(2.0);
  ComplexVector plus(2), minus(2);
  plus << r, r;
  minus << r, -r;
  g.povms = {{projector(basis_vector(2, 0)), projector(basis_vector(2, 1))},
             {projector(plus), projector(minus)}};
  return g;
}

MonogamyGame game_power(const MonogamyGame& game, std::size_t n) {
  if (n == 0) throw DomainError("game_power: n must be positive");
  if (n == 1) return game;
  guard_power(game.theta_count(), game.outcome_count(), game.dim_a, n);

  auto concat_labels = [n](const std::vector<std::string>& labels) {
    std::vector<std::string> out;
    const std::size_t count = ipow(labels.size(), n);
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      std::string s;
      for (auto d : digits_of(i, labels.size(), n)) s += labels[d];
      out.push_back(std::move(s));
    }
    return out;
  };

  MonogamyGame out;
  out.dim_a = ipow(game.dim_a, n);
  out.thetas = concat_labels(game.thetas);
  out.outcomes = concat_labels(game.outcomes);
  out.povms = family_power(game.povms, n, game.theta_count(), game.outcome_count());
  if (game.base) {
    out.base = game.base;
    out.repetitions = game.repetitions * n;
  } else {
    out.base = std::make_shared<const MonogamyGame>(game);
    out.repetitions = n;
  }
  return out;
}

double overlap(const MonogamyGame& game) {
  if (game.theta_count() < 2) throw DomainError("overlap: the game needs at least two bases");
  double best = 0.0;
  for (std::size_t t = 0; t < game.theta_count(); ++t) {
    for (std::size_t u = t + 1; u < game.theta_count(); ++u) {
      for (const auto& a : game.povms[t]) {
        for (const auto& b : game.povms[u]) best = std::max(best, overlap_of_pair(a, b));
      }
    }
  }
  if (best > 1.0 + 1e-9) throw Error("overlap: value above 1, POVM elements exceed the identity");
  return best;
}

std::vector<Permutation> xor_permutation_family(std::size_t n, std::size_t alphabet_size) {
  if (alphabet_size < 2) throw DomainError("xor_permutation_family: alphabet needs at least 2 symbols");
  if (std::pow(static_cast<double>(alphabet_size), 2.0 * static_cast<double>(n)) > 1e8) {
    throw CapacityError("xor_permutation_family: family too large to materialize");
  }
  const std::size_t count = ipow(alphabet_size, n);
  std::vector<std::vector<std::size_t>> digit_table(count);
  for (std::size_t i = 0; i < count; ++i) digit_table[i] = digits_of(i, alphabet_size, n);

  std::vector<Permutation> family(count, Permutation(count));
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t theta = 0; theta < count; ++theta) {
      std::size_t image = 0;
      for (std::size_t i = 0; i < n; ++i) {
        image = image * alphabet_size + (digit_table[theta][i] + digit_table[k][i]) % alphabet_size;
      }
      family[k][theta] = image;
    }
  }
  return family;
}

std::size_t hamming_distance(std::size_t a, std::size_t b, std::size_t n, std::size_t alphabet) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a % alphabet != b % alphabet) ++d;
    a /= alphabet;
    b /= alphabet;
  }
  return d;
}

namespace {

std::size_t weight_limit(std::size_t n, double gamma, const char* name) {
  if (!(gamma >= 0.0 && gamma <= 0.5)) throw DomainError(std::string(name) + " must lie in [0, 1/2]");
  return static_cast<std::size_t>(std::floor(gamma * static_cast<double>(n) + 1e-9));
}

std::vector<std::uint64_t> shifts_up_to(std::size_t n, std::size_t max_weight) {
  // Ball sizes are bounded by 2^{n h(gamma)}; cap the materialized set.
  double ball = 0.0;
  for (std::size_t w = 0; w <= std::min(max_weight, n); ++w) {
    ball += std::exp(std::lgamma(n + 1.0) - std::lgamma(w + 1.0) - std::lgamma(n - w + 1.0));
  }
  if (ball > kTermGuard) throw CapacityError("Q-set: Hamming ball too large to materialize");
  std::vector<std::uint64_t> out;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::size_t w = 0; w <= std::min(max_weight, n); ++w) {
    // Gosper's hack: all n-bit words of weight w in increasing order.
    std::uint64_t k = (std::uint64_t{1} << w) - 1;
    while (k < limit) {
      out.push_back(k);
      if (k == 0) break;
      const std::uint64_t c = k & (~k + 1);
      const std::uint64_t r = k + c;
      k = (((r ^ k) >> 2) / c) | r;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void check_count_bound(std::size_t count, std::size_t n, double entropy_sum) {
  const double bound = std::exp2(static_cast<double>(n) * entropy_sum);
  if (static_cast<double>(count) > bound * (1.0 + 1e-12)) {
    throw Error("Q-set cardinality exceeds the 2^{n h} count bound");
  }
}

}  // namespace

QSet hamming_q_set(std::size_t n, double gamma, double gamma_prime) {
  if (n == 0 || n >= 31) throw CapacityError("hamming_q_set: n must lie in [1, 30]");
  const auto wb = weight_limit(n, gamma, "gamma");
  const auto wc = weight_limit(n, gamma_prime, "gamma_prime");
  const auto bob = shifts_up_to(n, wb);
  const auto charlie = shifts_up_to(n, wc);
  if (static_cast<double>(bob.size()) * static_cast<double>(charlie.size()) > kTermGuard) {
    throw CapacityError("hamming_q_set: more than 1e6 pairs");
  }
  std::vector<QSet::XorShift> shifts;
  shifts.reserve(bob.size() * charlie.size());
  for (auto kb : bob) {
    for (auto kc : charlie) shifts.push_back({kb, kc});
  }
  check_count_bound(shifts.size(), n, binary_entropy(gamma) + binary_entropy(gamma_prime));
  return QSet::from_xor_shifts(n, std::move(shifts));
}

QSet same_string_q_set(std::size_t n, double gamma) {
  if (n == 0 || n >= 31) throw CapacityError("same_string_q_set: n must lie in [1, 30]");
  const auto w = weight_limit(n, gamma, "gamma");
  std::vector<QSet::XorShift> shifts;
  for (auto k : shifts_up_to(n, w)) shifts.push_back({k, k});
  check_count_bound(shifts.size(), n, binary_entropy(gamma));
  return QSet::from_xor_shifts(n, std::move(shifts));
}

}  // namespace monogamy
