#pragma once

// Monogamy-of-entanglement games: Alice holds H_A and measures it with one of
// |Theta| POVMs chosen uniformly at random; Bob and Charlie, who prepared the
// state, must both name her outcome.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "monogamy/linalg.hpp"

namespace monogamy {

using Povm = std::vector<ComplexMatrix>;
// Indexed [theta][outcome].
using PovmFamily = std::vector<Povm>;

struct MonogamyGame {
  std::size_t dim_a = 0;
  std::vector<std::string> thetas;
  std::vector<std::string> outcomes;
  PovmFamily povms;

  // Filled in by game_power: the single-round game and the repetition count.
  std::shared_ptr<const MonogamyGame> base;
  std::size_t repetitions = 1;

  std::size_t theta_count() const { return thetas.size(); }
  std::size_t outcome_count() const { return outcomes.size(); }

  /// Throws ValidationError unless every family is a POVM on H_A with
  /// |outcomes| elements.
  void validate() const;
};

/// A strategy: rho on H_A (x) H_B (x) H_C plus per-basis POVMs for Bob and
/// Charlie. Mixed states are accepted; nothing is purified implicitly.
struct Strategy {
  ComplexMatrix rho_abc;
  DimensionList dims;  // {d_A, d_B, d_C}
  PovmFamily bob;
  PovmFamily charlie;

  std::size_t dim_b() const { return dims.at(1); }
  std::size_t dim_c() const { return dims.at(2); }

  void validate(const MonogamyGame& game) const;
};

Strategy pure_strategy(const ComplexVector& psi, DimensionList dims, PovmFamily bob,
                       PovmFamily charlie);

/// A one-dimensional guesser that always answers `answer`.
PovmFamily constant_guess(std::size_t theta_count, std::size_t outcome_count, std::size_t answer);
/// Every outcome gets 1/|X| on a space of dimension `dim`.
PovmFamily uniform_guess(std::size_t dim, std::size_t theta_count, std::size_t outcome_count);

/// The n-fold product of a single-round strategy, reordered so the state
/// lives on A_1..A_n (x) B_1..B_n (x) C_1..C_n. Labels follow game_power.
Strategy strategy_power(const Strategy& s, std::size_t n, std::size_t theta_count,
                        std::size_t outcome_count);

/// Pi^theta = sum_x F_x^theta (x) P_x^theta (x) Q_x^theta.
ComplexMatrix round_operator(const MonogamyGame& game, const PovmFamily& bob,
                             const PovmFamily& charlie, std::size_t theta);

/// (1/|Theta|) sum_theta Pi^theta.
ComplexMatrix game_operator(const MonogamyGame& game, const PovmFamily& bob,
                            const PovmFamily& charlie);

struct WinReport {
  double value = 0.0;
  std::vector<double> per_theta;  // tr(Pi^theta rho), in label order
};

WinReport winning_probability(const MonogamyGame& game, const Strategy& s);

/// Displacement pairs (pi_B, pi_C) on the outcome set: the players win when
/// Bob answers pi_B(x) and Charlie pi_C(x) for some pair. XOR families are
/// stored compactly as shift pairs.
class QSet {
 public:
  struct XorShift {
    std::uint64_t bob = 0;
    std::uint64_t charlie = 0;
    bool operator==(const XorShift&) const = default;
  };
  using PermutationPair = std::pair<Permutation, Permutation>;

  /// Throws ValidationError on non-bijections or duplicate pairs.
  static QSet from_permutations(std::size_t outcome_count, std::vector<PermutationPair> pairs);
  static QSet from_xor_shifts(std::size_t bits, std::vector<XorShift> shifts);

  std::size_t size() const;
  std::size_t outcome_count() const { return outcome_count_; }
  bool is_xor() const { return std::holds_alternative<std::vector<XorShift>>(pairs_); }
  const std::vector<XorShift>& xor_shifts() const { return std::get<std::vector<XorShift>>(pairs_); }

  std::size_t bob(std::size_t q, std::size_t x) const;
  std::size_t charlie(std::size_t q, std::size_t x) const;

 private:
  std::size_t outcome_count_ = 0;
  std::variant<std::vector<PermutationPair>, std::vector<XorShift>> pairs_;
};

WinReport winning_probability_with_q(const MonogamyGame& game, const Strategy& s, const QSet& q);

/// Qubit game with the computational and Hadamard bases.
MonogamyGame bb84_game();

/// G^{xn}: POVM elements F_{x1}^{t1} (x) ... (x) F_{xn}^{tn}, labels are
/// concatenations, first round leftmost. Guarded at |Theta|^n |X|^n <= 1e6
/// terms and 5e7 stored matrix entries.
MonogamyGame game_power(const MonogamyGame& game, std::size_t n);

/// Max over theta != theta' and x, x' of ||sqrt F_x^theta sqrt F_x'^theta'||^2.
double overlap(const MonogamyGame& game);

/// The |Theta|^n coordinatewise shifts theta -> theta + k (mod |Theta|) on
/// Theta^n, with strings indexed first-coordinate-most-significant.
std::vector<Permutation> xor_permutation_family(std::size_t n, std::size_t alphabet_size);

/// Number of coordinates where two base-`alphabet` strings of length n differ.
std::size_t hamming_distance(std::size_t a, std::size_t b, std::size_t n, std::size_t alphabet);

/// All (x ^ k, x ^ k') with wt(k) <= gamma n, wt(k') <= gamma' n.
QSet hamming_q_set(std::size_t n, double gamma, double gamma_prime);

/// All (x ^ k, x ^ k) with wt(k) <= gamma n.
QSet same_string_q_set(std::size_t n, double gamma);

}  // namespace monogamy
