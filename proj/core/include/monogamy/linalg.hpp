#pragma once

// Dense complex linear algebra shared by every other module: Hermitian
// eigendecomposition, Schatten norms, PSD square roots, Kronecker products,
// partial traces and the operator-norm inequalities used to bound game
// values.
//
// Conventions: row-major thinking, 0-based indices, tensor factor 0 is the
// leftmost (most significant) factor. Matrices are Eigen values and are
// treated as immutable once built; every function here is pure.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace monogamy {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Subsystem dimensions of a tensor-product space, leftmost factor first.
using DimensionList = std::vector<std::size_t>;

// A permutation of {0, ..., N-1} stored as its image list.
using Permutation = std::vector<std::size_t>;

namespace tol {
// Max absolute entry deviation accepted by is_hermitian.
inline constexpr double kHermitian = 1e-10;
// Most negative eigenvalue accepted by is_psd / psd_sqrt.
inline constexpr double kPsdFloor = 1e-8;
// Trace and POVM-completeness slack.
inline constexpr double kTrace = 1e-8;
// Relative slack for equality assertions.
inline constexpr double kEquality = 1e-8;
}  // namespace tol

std::size_t dimension_product(const DimensionList& dims);

bool is_square(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tolerance = tol::kHermitian);
bool is_psd(const ComplexMatrix& m, double floor = tol::kPsdFloor);
bool is_density(const ComplexMatrix& m);
bool is_povm(std::span<const ComplexMatrix> elements, std::size_t dim);

void require_square(const ComplexMatrix& m, const char* what);
void require_density(const ComplexMatrix& m, const char* what);

/// Eigenvalues in ascending order with matching orthonormal eigenvectors
/// (columns). The input is symmetrized as (M + M^dagger)/2 first.
struct HermitianEigen {
  RealVector values;
  ComplexMatrix vectors;
};
HermitianEigen hermitian_eigen(const ComplexMatrix& m);

/// Singular values in descending order, taken as square roots of the
/// eigenvalues of M^dagger M after clipping negatives to zero.
RealVector singular_values(const ComplexMatrix& m);

/// Largest singular value. Throws DimensionError for non-square input.
double schatten_inf_norm(const ComplexMatrix& m);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

/// Hermitian PSD square root with eigenvalues clipped at zero. Throws
/// NotPsdError when an eigenvalue is below -kPsdFloor.
ComplexMatrix psd_sqrt(const ComplexMatrix& a);

/// Moore-Penrose inverse square root restricted to eigenvalues above
/// `cutoff`; the kernel maps to zero.
ComplexMatrix psd_inverse_sqrt(const ComplexMatrix& a, double cutoff = 1e-12);

/// Projector onto the support (eigenvalues above `cutoff`) of a PSD matrix.
ComplexMatrix support_projector(const ComplexMatrix& a, double cutoff = 1e-12);

/// Projector onto the eigenspace of a Hermitian matrix with eigenvalues
/// >= -`zero_band`; the (numerically) zero eigenspace is included.
ComplexMatrix nonnegative_projector(const ComplexMatrix& h, double zero_band = 1e-12);

/// Half the trace norm of rho - sigma. Both inputs must be density matrices
/// of the same dimension.
double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// Kronecker product A (x) B.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor(const ComplexVector& a, const ComplexVector& b);
ComplexMatrix tensor_all(std::span<const ComplexMatrix> factors);

/// Traces out every factor whose index is not in `keep`. The kept factors
/// stay in their original order; an empty `keep` yields the 1x1 matrix
/// [tr M].
ComplexMatrix partial_trace(const ComplexMatrix& m, const DimensionList& dims,
                            const std::vector<std::size_t>& keep);

/// Reorders tensor factors: factor i of the result is factor order[i] of
/// the input.
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const DimensionList& dims,
                                 const std::vector<std::size_t>& order);

/// |v><v| / <v|v>.
ComplexMatrix projector(const ComplexVector& v);
ComplexVector basis_vector(std::size_t dim, std::size_t index);

/// ||sqrt(A) sqrt(B)||^2 for PSD A and B.
double overlap_of_pair(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_permutation(const Permutation& p, std::size_t n);
/// True when every pair of distinct permutations disagrees at every point.
bool mutually_orthogonal(std::span<const Permutation> perms, std::size_t n);
/// The N cyclic shifts i -> i + k (mod N), k = 0..N-1.
std::vector<Permutation> cyclic_shifts(std::size_t n);

/// Both sides of the sum bound
///   || sum_i A_i || <= sum_k max_i || sqrt(A_i) sqrt(A_{pi_k(i)}) ||
/// for PSD A_1..A_N and N mutually orthogonal permutations of [N].
struct SumBound {
  double lhs = 0.0;
  double rhs = 0.0;
};
SumBound kittaneh_sum_bound(std::span<const ComplexMatrix> operators,
                            std::span<const Permutation> perms);

}  // namespace monogamy
