#pragma once

// Alternating maximization over (state, Bob, Charlie). Every value reported
// is attained by a valid strategy, so it is a lower bound on the game value.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "monogamy/game.hpp"

namespace monogamy {

struct SeesawConfig {
  std::size_t max_iters = 200;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::size_t bob_dim = 1;
  std::size_t charlie_dim = 1;
  std::size_t restarts = 20;
  // For games built by game_power: also seesaw the single-round game and
  // start one run from its n-fold product.
  bool product_init = true;

  void validate() const;
};

struct SeesawResult {
  Strategy strategy;
  double value = 0.0;
  std::size_t iterations = 0;
  std::vector<double> trajectory;
};

struct StateStep {
  ComplexMatrix rho;
  double value = 0.0;
};

/// Top eigenvector of (1/|Theta|) sum_theta Pi^theta. Among degenerate top
/// eigenvalues the lowest index in the eigensolver's ascending output wins.
StateStep optimal_state_step(const MonogamyGame& game, const PovmFamily& bob,
                             const PovmFamily& charlie, std::size_t dim_b, std::size_t dim_c);

enum class Party { Bob, Charlie };

/// sigma_x^theta for `party` with the other party's POVMs fixed, i.e. the
/// partial trace of (F_x^theta (x) 1 (x) Q_x^theta) rho onto that party.
std::vector<std::vector<ComplexMatrix>> conditional_operators(const MonogamyGame& game,
                                                              const Strategy& s, Party party);

/// Best response of one party. Exact for two outcomes (Helstrom) and for a
/// one-dimensional party; otherwise the better of the current POVM, the
/// pretty-good measurement and its iterative refinement.
PovmFamily optimal_povm_step(const MonogamyGame& game, const Strategy& s, Party party);

/// One seesaw run from the given POVMs.
SeesawResult seesaw_from(const MonogamyGame& game, PovmFamily bob, PovmFamily charlie,
                         std::size_t dim_b, std::size_t dim_c, const SeesawConfig& cfg);

/// Best of cfg.restarts seeded runs (plus the product start when enabled).
/// Ties go to the lowest restart index.
SeesawResult seesaw(const MonogamyGame& game, const SeesawConfig& cfg);

/// |phi> = cos(pi/8)|0> + sin(pi/8)|1>, both guessers answer 0.
Strategy bb84_optimal_unentangled_strategy();

}  // namespace monogamy
