#pragma once

// Seeded randomness. Every stochastic routine takes a 64-bit seed; derived
// streams come from derive_seed so results do not depend on how work is
// split across threads.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "monogamy/linalg.hpp"

namespace monogamy {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Counter-based derivation: a fixed function of (base, stream, index).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index = 0);

inline Rng make_rng(std::uint64_t seed) { return Rng(mix64(seed)); }

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix haar_unitary(std::size_t dim, Rng& rng);
ComplexVector random_pure_state(std::size_t dim, Rng& rng);
/// Random density matrix G G^dagger / tr, G of size dim x rank.
ComplexMatrix random_density(std::size_t dim, Rng& rng, std::size_t rank = 0);
/// Random PSD matrix with random scale; rank 0 means full rank.
ComplexMatrix random_psd(std::size_t dim, Rng& rng, std::size_t rank = 0);
/// Projective measurement: the columns of a Haar unitary, each assigned to a
/// uniformly random outcome. Outcomes that receive no vector are zero.
std::vector<ComplexMatrix> random_projective_povm(std::size_t dim, std::size_t outcomes, Rng& rng);
/// Two-outcome POVM {E, 1 - E} with E = U diag(u) U^dagger, u_i ~ U[0, 1].
std::vector<ComplexMatrix> random_binary_povm(std::size_t dim, Rng& rng);

}  // namespace monogamy
