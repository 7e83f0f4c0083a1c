#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "expected.hpp"
#include "monogamy/errors.hpp"
#include "monogamy/seesaw.hpp"
#include "monogamy/uncertainty.hpp"

using namespace monogamy;

namespace {

void expect_monotone(const std::vector<double>& trajectory) {
  for (std::size_t i = 1; i < trajectory.size(); ++i) EXPECT_GE(trajectory[i], trajectory[i - 1] - 1e-10);
}

MonogamyGame single_basis_game() {
  MonogamyGame g;
  g.dim_a = 2;
  g.thetas = {"0"};
  g.outcomes = {"0", "1"};
  g.povms = {bb84_game().povms[0]};
  return g;
}

}  // namespace

TEST(Seesaw, StateStepWithConstantGuessers) {
  const auto g = bb84_game();
  const auto step = optimal_state_step(g, constant_guess(2, 2, 0), constant_guess(2, 2, 0), 1, 1);
  EXPECT_NEAR(step.value, expected::kBeta0, 1e-12);
  ComplexVector phi(2);
  phi << std::cos(std::numbers::pi / 8.0), std::sin(std::numbers::pi / 8.0);
  EXPECT_NEAR((phi.adjoint() * step.rho * phi)(0, 0).real(), 1.0, 1e-12);
}

TEST(Seesaw, StateStepWithUniformGuessers) {
  const auto g = bb84_game();
  const auto op = game_operator(g, uniform_guess(2, 2, 2), uniform_guess(2, 2, 2));
  EXPECT_LE(schatten_inf_norm(op), 1.0 + 1e-12);
  const auto step = optimal_state_step(g, uniform_guess(2, 2, 2), uniform_guess(2, 2, 2), 2, 2);
  EXPECT_NEAR(step.value, 0.25, 1e-12);
  EXPECT_TRUE(is_density(step.rho));
}

TEST(Seesaw, StateStepRejectsBadPovms) {
  auto bad = constant_guess(2, 2, 0);
  bad[0][1](0, 0) = 0.5;
  EXPECT_THROW(optimal_state_step(bb84_game(), bad, constant_guess(2, 2, 0), 1, 1), ValidationError);
}

TEST(Seesaw, HelstromOnOrthogonalAndEqualStates) {
  ComplexMatrix s0 = ComplexMatrix::Zero(2, 2), s1 = ComplexMatrix::Zero(2, 2);
  s0(0, 0) = 0.5;
  s1(1, 1) = 0.5;
  const auto p = helstrom_measurement(s0, s1);
  EXPECT_NEAR(p[0](0, 0).real(), 1.0, 1e-12);
  EXPECT_NEAR(p[1](1, 1).real(), 1.0, 1e-12);
  EXPECT_NEAR(guessing_value({s0, s1}, p), 1.0, 1e-12);
  const auto same = helstrom_measurement(s0, s0);
  EXPECT_LT((same[0] - ComplexMatrix::Identity(2, 2)).norm(), 1e-12);
  EXPECT_LT(same[1].norm(), 1e-12);
}

TEST(Seesaw, BobStepAgainstOptimalState) {
  const auto g = bb84_game();
  const auto s = bb84_optimal_unentangled_strategy();
  const auto bob = optimal_povm_step(g, s, Party::Bob);
  for (const auto& povm : bob) {
    EXPECT_NEAR(povm[0](0, 0).real(), 1.0, 1e-12);
    EXPECT_NEAR(povm[1](0, 0).real(), 0.0, 1e-12);
  }
  Strategy next = s;
  next.bob = bob;
  EXPECT_NEAR(winning_probability(g, next).value, expected::kBeta0, 1e-12);
}

TEST(Seesaw, Bb84SingleRound) {
  SeesawConfig cfg;
  cfg.seed = 7;
  const auto r = seesaw(bb84_game(), cfg);
  EXPECT_NEAR(r.value, expected::kBeta0, 1e-6);
  EXPECT_LE(r.value, expected::kBeta0 + 1e-9);
  expect_monotone(r.trajectory);
  EXPECT_NO_THROW(r.strategy.validate(bb84_game()));
}

TEST(Seesaw, EntanglementDoesNotHelp) {
  SeesawConfig cfg;
  cfg.seed = 11;
  cfg.bob_dim = cfg.charlie_dim = 2;
  const auto r = seesaw(bb84_game(), cfg);
  EXPECT_LE(r.value, expected::kBeta0 + 1e-6);
  EXPECT_GE(r.value, expected::kBeta0 - 1e-6);
  expect_monotone(r.trajectory);
}

TEST(Seesaw, Bb84TwoRoundsClassicalGuessers) {
  SeesawConfig cfg;
  cfg.seed = 3;
  const auto g2 = game_power(bb84_game(), 2);
  const auto r = seesaw(g2, cfg);
  EXPECT_NEAR(r.value, expected::kBeta0Sq, 1e-6);
  EXPECT_LE(r.value, expected::kBeta0Sq + 1e-9);
}

TEST(Seesaw, FreeFormOnlyStaysBelowBound) {
  SeesawConfig cfg;
  cfg.seed = 5;
  cfg.restarts = 4;
  cfg.product_init = false;
  const auto g2 = game_power(bb84_game(), 2);
  const auto r = seesaw(g2, cfg);
  EXPECT_LE(r.value, expected::kBeta0Sq + 1e-9);
  expect_monotone(r.trajectory);
}

TEST(Seesaw, SingleBasisGameIsWon) {
  SeesawConfig cfg;
  cfg.restarts = 3;
  EXPECT_NEAR(seesaw(single_basis_game(), cfg).value, 1.0, 1e-9);
}

TEST(Seesaw, SameSeedSameResult) {
  SeesawConfig cfg;
  cfg.seed = 99;
  cfg.restarts = 5;
  cfg.bob_dim = 2;
  const auto a = seesaw(bb84_game(), cfg);
  setenv("MONOGAMY_THREADS", "3", 1);
  const auto b = seesaw(bb84_game(), cfg);
  unsetenv("MONOGAMY_THREADS");
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.trajectory, b.trajectory);
}

TEST(Seesaw, ConfigValidation) {
  SeesawConfig cfg;
  cfg.tol = 0.0;
  EXPECT_THROW(seesaw(bb84_game(), cfg), DomainError);
  cfg = {};
  cfg.bob_dim = 0;
  EXPECT_THROW(seesaw(bb84_game(), cfg), DomainError);
  cfg = {};
  cfg.bob_dim = cfg.charlie_dim = 64;
  EXPECT_THROW(seesaw(bb84_game(), cfg), CapacityError);
}
