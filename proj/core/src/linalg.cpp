#include "monogamy/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "monogamy/errors.hpp"

namespace monogamy {

std::size_t dimension_product(const DimensionList& dims) {
  std::size_t p = 1;
  for (auto d : dims) {
    if (d == 0) throw DimensionError("dimension list contains a zero factor");
    p *= d;
  }
  return p;
}

bool is_square(const ComplexMatrix& m) { return m.rows() == m.cols() && m.rows() > 0; }

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
  if (!is_square(m)) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

bool is_psd(const ComplexMatrix& m, double floor) {
  if (!is_hermitian(m)) return false;
  return hermitian_eigen(m).values.minCoeff() >= -floor;
}

bool is_density(const ComplexMatrix& m) {
  return is_psd(m) && std::abs(m.trace() - Complex(1.0, 0.0)) <= tol::kTrace;
}

bool is_povm(std::span<const ComplexMatrix> elements, std::size_t dim) {
  if (elements.empty()) return false;
  const auto d = static_cast<Eigen::Index>(dim);
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& e : elements) {
    if (e.rows() != d || e.cols() != d || !is_psd(e)) return false;
    sum += e;
  }
  return (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() <= tol::kTrace;
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (!is_square(m)) {
    throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_density(const ComplexMatrix& m, const char* what) {
  require_square(m, what);
  if (!is_density(m)) throw ValidationError(std::string(what) + ": not a density matrix");
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
  require_square(m, "hermitian_eigen");
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw Error("hermitian_eigen: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector singular_values(const ComplexMatrix& m) {
  const ComplexMatrix gram = m.adjoint() * m;
  RealVector ev = hermitian_eigen(gram).values;
  RealVector sv(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    sv[ev.size() - 1 - i] = std::sqrt(std::max(ev[i], 0.0));
  }
  return sv;
}

double schatten_inf_norm(const ComplexMatrix& m) {
  require_square(m, "schatten_inf_norm");
  // Hermitian input: the norm is the largest |eigenvalue|, which avoids the
  // precision loss of squaring.
  if (is_hermitian(m, 0.0)) return hermitian_eigen(m).values.cwiseAbs().maxCoeff();
  return singular_values(m)[0];
}

double trace_norm(const ComplexMatrix& m) {
  require_square(m, "trace_norm");
  if (is_hermitian(m, 0.0)) return hermitian_eigen(m).values.cwiseAbs().sum();
  return singular_values(m).sum();
}

namespace {

ComplexMatrix spectral_map(const HermitianEigen& eig, const RealVector& mapped) {
  return eig.vectors * mapped.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
  require_square(a, "psd_sqrt");
  if (!is_hermitian(a)) throw NotPsdError("psd_sqrt: input is not Hermitian");
  const auto eig = hermitian_eigen(a);
  if (eig.values.minCoeff() < -tol::kPsdFloor) {
    throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(eig.values.minCoeff()) +
                      " below the PSD floor");
  }
  RealVector root = eig.values.cwiseMax(0.0).cwiseSqrt();
  return spectral_map(eig, root);
}

ComplexMatrix psd_inverse_sqrt(const ComplexMatrix& a, double cutoff) {
  const auto eig = hermitian_eigen(a);
  RealVector inv(eig.values.size());
  for (Eigen::Index i = 0; i < inv.size(); ++i) {
    inv[i] = eig.values[i] > cutoff ? 1.0 / std::sqrt(eig.values[i]) : 0.0;
  }
  return spectral_map(eig, inv);
}

ComplexMatrix support_projector(const ComplexMatrix& a, double cutoff) {
  const auto eig = hermitian_eigen(a);
  RealVector ind = (eig.values.array() > cutoff).cast<double>();
  return spectral_map(eig, ind);
}

ComplexMatrix nonnegative_projector(const ComplexMatrix& h, double zero_band) {
  const auto eig = hermitian_eigen(h);
  RealVector ind = (eig.values.array() >= -zero_band).cast<double>();
  return spectral_map(eig, ind);
}

double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw DimensionError("trace_distance: dimension mismatch");
  }
  require_density(rho, "trace_distance");
  require_density(sigma, "trace_distance");
  return 0.5 * trace_norm(rho - sigma);
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector tensor(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

ComplexMatrix tensor_all(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = tensor(out, f);
  return out;
}

namespace {

std::vector<std::size_t> strides_of(const DimensionList& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) strides[k - 1] = strides[k] * dims[k];
  return strides;
}

// Offsets of every multi-index over the listed factors, enumerated with the
// first listed factor most significant.
std::vector<std::size_t> offsets_over(const DimensionList& dims,
                                      const std::vector<std::size_t>& strides,
                                      const std::vector<std::size_t>& factors) {
  std::vector<std::size_t> offsets{0};
  for (auto f : factors) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * dims[f]);
    for (auto base : offsets) {
      for (std::size_t digit = 0; digit < dims[f]; ++digit) next.push_back(base + digit * strides[f]);
    }
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, const DimensionList& dims,
                            const std::vector<std::size_t>& keep) {
  require_square(m, "partial_trace");
  if (static_cast<std::size_t>(m.rows()) != dimension_product(dims)) {
    throw DimensionError("partial_trace: matrix dimension " + std::to_string(m.rows()) +
                         " does not match the product of the factor dimensions");
  }
  std::vector<std::size_t> kept(keep);
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (!kept.empty() && kept.back() >= dims.size()) {
    throw DimensionError("partial_trace: keep index out of range");
  }
  std::vector<std::size_t> traced;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (!std::binary_search(kept.begin(), kept.end(), k)) traced.push_back(k);
  }

  const auto strides = strides_of(dims);
  const auto out_off = offsets_over(dims, strides, kept);
  const auto tr_off = offsets_over(dims, strides, traced);
  const auto n = static_cast<Eigen::Index>(out_off.size());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Complex acc{0.0, 0.0};
      for (auto t : tr_off) {
        acc += m(static_cast<Eigen::Index>(out_off[i] + t), static_cast<Eigen::Index>(out_off[j] + t));
      }
      out(i, j) = acc;
    }
  }
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const DimensionList& dims,
                                 const std::vector<std::size_t>& order) {
  require_square(m, "permute_subsystems");
  if (static_cast<std::size_t>(m.rows()) != dimension_product(dims)) {
    throw DimensionError("permute_subsystems: dimension mismatch");
  }
  if (!is_permutation(order, dims.size())) {
    throw DimensionError("permute_subsystems: order is not a permutation of the factors");
  }
  // Enumerating input offsets in the new factor order yields, at position
  // p, the input index that lands on output index p.
  const auto strides = strides_of(dims);
  const auto source = offsets_over(dims, strides, order);
  const auto n = static_cast<Eigen::Index>(source.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = m(static_cast<Eigen::Index>(source[i]), static_cast<Eigen::Index>(source[j]));
    }
  }
  return out;
}

ComplexMatrix projector(const ComplexVector& v) {
  const double norm2 = v.squaredNorm();
  if (norm2 == 0.0) throw DomainError("projector: zero vector");
  return v * v.adjoint() / norm2;
}

ComplexVector basis_vector(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis_vector: index out of range");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return v;
}

double overlap_of_pair(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("overlap_of_pair: dimension mismatch");
  // ||sqrt(A) sqrt(B)||^2 = lambda_max(sqrt(B) A sqrt(B)); projectors are their own roots.
  const auto root = [](const ComplexMatrix& m) -> ComplexMatrix {
    if (is_hermitian(m) && (m * m - m).norm() <= tol::kHermitian) return m;
    return psd_sqrt(m);
  };
  const ComplexMatrix rb = root(b);
  const ComplexMatrix m = rb * a * rb;
  const auto eig = hermitian_eigen(m);
  const ComplexVector v = eig.vectors.col(eig.values.size() - 1);
  const double rayleigh = (v.adjoint() * m * v)(0, 0).real() / v.squaredNorm();
  return std::max(0.0, rayleigh);
}

bool is_permutation(const Permutation& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (auto v : p) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool mutually_orthogonal(std::span<const Permutation> perms, std::size_t n) {
  for (const auto& p : perms) {
    if (!is_permutation(p, n)) return false;
  }
  for (std::size_t a = 0; a < perms.size(); ++a) {
    for (std::size_t b = a + 1; b < perms.size(); ++b) {
      for (std::size_t i = 0; i < n; ++i) {
        if (perms[a][i] == perms[b][i]) return false;
      }
    }
  }
  return true;
}

std::vector<Permutation> cyclic_shifts(std::size_t n) {
  std::vector<Permutation> out(n, Permutation(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) out[k][i] = (i + k) % n;
  }
  return out;
}

SumBound kittaneh_sum_bound(std::span<const ComplexMatrix> operators,
                            std::span<const Permutation> perms) {
  const std::size_t n = operators.size();
  if (n == 0) throw DimensionError("kittaneh_sum_bound: empty operator list");
  if (perms.size() != n || !mutually_orthogonal(perms, n)) {
    throw ValidationError("kittaneh_sum_bound: need N mutually orthogonal permutations of [N]");
  }
  const auto dim = operators[0].rows();
  std::vector<ComplexMatrix> roots;
  roots.reserve(n);
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const auto& a : operators) {
    if (a.rows() != dim || a.cols() != dim) throw DimensionError("kittaneh_sum_bound: dimension mismatch");
    if (!is_psd(a)) throw NotPsdError("kittaneh_sum_bound: operator is not PSD");
    roots.push_back(psd_sqrt(a));
    sum += a;
  }
  SumBound out;
  out.lhs = schatten_inf_norm(sum);
  for (const auto& perm : perms) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, schatten_inf_norm(roots[i] * roots[perm[i]]));
    }
    out.rhs += worst;
  }
  return out;
}

}  // namespace monogamy
