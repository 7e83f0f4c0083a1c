#include "monogamy/random.hpp"

#include <cmath>

namespace monogamy {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
  return mix64(mix64(mix64(base) ^ (stream * 0xd1b54a32d192ed03ULL)) ^ index);
}

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix haar_unitary(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

ComplexVector random_pure_state(std::size_t dim, Rng& rng) {
  ComplexVector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

ComplexMatrix random_density(std::size_t dim, Rng& rng, std::size_t rank) {
  const ComplexMatrix g = ginibre(dim, rank == 0 ? dim : rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

ComplexMatrix random_psd(std::size_t dim, Rng& rng, std::size_t rank) {
  std::uniform_real_distribution<double> scale(0.1, 3.0);
  ComplexMatrix a = random_density(dim, rng, rank) * scale(rng);
  return 0.5 * (a + a.adjoint());
}

std::vector<ComplexMatrix> random_projective_povm(std::size_t dim, std::size_t outcomes, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(dim);
  std::vector<ComplexMatrix> povm(outcomes, ComplexMatrix::Zero(d, d));
  const ComplexMatrix u = haar_unitary(dim, rng);
  std::uniform_int_distribution<std::size_t> pick(0, outcomes - 1);
  for (Eigen::Index i = 0; i < d; ++i) {
    const ComplexVector v = u.col(i);
    povm[pick(rng)] += v * v.adjoint();
  }
  return povm;
}

std::vector<ComplexMatrix> random_binary_povm(std::size_t dim, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(dim);
  const ComplexMatrix u = haar_unitary(dim, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RealVector weights(d);
  for (Eigen::Index i = 0; i < d; ++i) weights[i] = unit(rng);
  ComplexMatrix e = u * weights.cast<Complex>().asDiagonal() * u.adjoint();
  e = (0.5 * (e + e.adjoint())).eval();
  return {e, ComplexMatrix::Identity(d, d) - e};
}

}  // namespace monogamy
