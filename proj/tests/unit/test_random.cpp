#include <gtest/gtest.h>

#include <cstdlib>

#include "monogamy/linalg.hpp"
#include "monogamy/parallel.hpp"
#include "monogamy/random.hpp"

using namespace monogamy;

TEST(Random, SameSeedSameDraws) {
  Rng a = make_rng(42), b = make_rng(42);
  EXPECT_EQ((random_density(3, a) - random_density(3, b)).norm(), 0.0);
}

TEST(Random, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(1, 0, 0), derive_seed(1, 0, 1));
  EXPECT_NE(derive_seed(1, 0, 0), derive_seed(1, 1, 0));
  EXPECT_NE(derive_seed(1, 0, 0), derive_seed(2, 0, 0));
  EXPECT_EQ(derive_seed(9, 3, 4), derive_seed(9, 3, 4));
}

TEST(Random, HaarUnitaryIsUnitary) {
  Rng rng = make_rng(1);
  const ComplexMatrix u = haar_unitary(5, rng);
  EXPECT_LT((u.adjoint() * u - ComplexMatrix::Identity(5, 5)).norm(), 1e-12);
}

TEST(Random, GeneratedObjectsAreValid) {
  Rng rng = make_rng(2);
  for (int i = 0; i < 50; ++i) {
    EXPECT_TRUE(is_density(random_density(4, rng)));
    EXPECT_TRUE(is_density(random_density(4, rng, 1)));
    EXPECT_TRUE(is_psd(random_psd(3, rng)));
    const auto p = random_projective_povm(4, 3, rng);
    EXPECT_TRUE(is_povm(p, 4));
    for (const auto& e : p) EXPECT_LT((e * e - e).norm(), 1e-10);
    EXPECT_TRUE(is_povm(random_binary_povm(3, rng), 3));
  }
}

TEST(Random, ParallelForIsIndexDeterministic) {
  std::vector<double> one(257), many(257);
  setenv("MONOGAMY_THREADS", "1", 1);
  parallel_for(one.size(), [&](std::size_t i) {
    Rng rng = make_rng(derive_seed(5, 0, i));
    one[i] = random_density(2, rng)(0, 0).real();
  });
  setenv("MONOGAMY_THREADS", "4", 1);
  EXPECT_EQ(worker_count(), 4u);
  parallel_for(many.size(), [&](std::size_t i) {
    Rng rng = make_rng(derive_seed(5, 0, i));
    many[i] = random_density(2, rng)(0, 0).real();
  });
  unsetenv("MONOGAMY_THREADS");
  EXPECT_EQ(one, many);
}

TEST(Random, ParallelForRethrows) {
  EXPECT_THROW(parallel_for(8, [](std::size_t i) {
                 if (i == 5) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}
