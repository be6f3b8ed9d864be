#pragma once

// Dense linear-algebra primitives shared by every other corrsep module.
//
// Tensor-product convention: subsystem 0 is the slowest-varying factor, so a
// state on dims {dA, dB} is stored in the same order as kron(rhoA, rhoB).

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace corrsep {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// Subsystem (or tensor mode) dimensions, slowest-varying first.
using Dims = std::vector<int>;

/// Singular values below this fraction of the largest count as zero.
inline constexpr double kRankTolerance = 1e-12;

struct SvdResult {
  ComplexMatrix U;
  RealVector s;  // descending
  ComplexMatrix V;
};

struct RealSvdResult {
  RealMatrix U;
  RealVector s;  // descending
  RealMatrix V;
};

/// Thin SVD, M = U * diag(s) * V^dagger. Throws NumericalFailure when the
/// input has non-finite entries or the solver reports failure.
SvdResult svd(const ComplexMatrix& m);
RealSvdResult svd(const RealMatrix& m);

RealVector singular_values(const ComplexMatrix& m);
RealVector singular_values(const RealMatrix& m);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);
double trace_norm(const RealMatrix& m);

/// Largest singular value.
double spectral_norm(const RealMatrix& m);

/// Number of singular values above kRankTolerance * s.max().
Eigen::Index numerical_rank(const RealVector& s);

struct HermitianEigen {
  RealVector values;  // ascending
  ComplexMatrix vectors;
};

HermitianEigen eigh(const ComplexMatrix& h);
double min_eigenvalue(const ComplexMatrix& h);

/// max |M - M^dagger|
double hermiticity_defect(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(std::span<const ComplexMatrix> factors);
RealVector kron(const RealVector& a, const RealVector& b);

int product(const Dims& dims);

/// Reduced matrix on the subsystems listed in `keep` (any order; the result
/// keeps them in ascending order).
ComplexMatrix partial_trace(const ComplexMatrix& rho, const Dims& dims,
                            std::vector<int> keep);

/// Transpose on a single tensor factor.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, const Dims& dims,
                                int subsystem);

/// Reorders tensor factors: factor k of the result is factor perm[k] of the
/// input.
ComplexMatrix permute_subsystems(const ComplexMatrix& rho, const Dims& dims,
                                 const std::vector<int>& perm);

/// H^{-1/2} for Hermitian positive-definite H. Eigenvalues at or below
/// `floor` raise RankDeficient.
ComplexMatrix inverse_sqrt_psd(const ComplexMatrix& h, double floor = 1e-14);

/// Real N-way array stored in lexicographic index order (last index fastest).
class RealTensor {
 public:
  RealTensor() = default;
  explicit RealTensor(Dims dims);
  RealTensor(Dims dims, std::vector<double> data);

  /// Order-2 tensor viewing a matrix.
  static RealTensor from_matrix(const RealMatrix& m);

  const Dims& dims() const { return dims_; }
  int order() const { return static_cast<int>(dims_.size()); }
  std::size_t size() const { return data_.size(); }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  double& operator[](std::size_t flat) { return data_[flat]; }
  double operator[](std::size_t flat) const { return data_[flat]; }

  double& at(std::span<const int> index);
  double at(std::span<const int> index) const;

  std::size_t flat_index(std::span<const int> index) const;
  void multi_index(std::size_t flat, std::span<int> out) const;

  double frobenius_norm() const;
  double inner(const RealTensor& other) const;

  /// The order-2 case as a matrix.
  RealMatrix as_matrix() const;

 private:
  Dims dims_;
  std::vector<double> data_;
};

/// Mode-n matricization: a dims[n] x (size / dims[n]) matrix whose rows are
/// mode-n fibers. Columns run over the remaining modes in their original
/// order, last mode fastest. `mode` is zero-based.
RealMatrix unfold(const RealTensor& t, int mode);

/// Inverse of unfold for the given full dims.
RealTensor refold(const RealMatrix& m, const Dims& dims, int mode);

}  // namespace corrsep
