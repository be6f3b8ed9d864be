#pragma once

#include <vector>

#include "corrsep/linalg.hpp"
#include "corrsep/operator_bases.hpp"
#include "corrsep/states.hpp"

namespace corrsep {

/// Coefficients r_i = Tr(rho G_i), i > 0, of a single-party state in a
/// canonical basis.
struct BlochVector {
  int dim = 0;
  RealVector r;

  /// identity/d + sum_i r_i G_i
  ComplexMatrix reconstruct(const OperatorBasis& basis) const;
};

/// Per-party non-negative scaling of the identity-direction (index 0) slice.
class ScalingVector {
 public:
  ScalingVector() = default;
  explicit ScalingVector(std::vector<double> xs);  // throws on negative/non-finite

  static ScalingVector ones(int parties) {
    return ScalingVector(std::vector<double>(static_cast<std::size_t>(parties), 1.0));
  }

  const std::vector<double>& values() const { return xs_; }
  std::size_t size() const { return xs_.size(); }
  double operator[](std::size_t k) const { return xs_[k]; }

 private:
  std::vector<double> xs_;
};

/// C_{a1...aN} = Tr(rho G1_{a1} x ... x GN_{aN}). The scaling is kept
/// symbolically so grid scans can reuse one set of expectation values.
class CorrelationTensor {
 public:
  CorrelationTensor(Dims party_dims, RealTensor raw, std::vector<BasisKind> kinds,
                    ScalingVector scaling);

  const Dims& party_dims() const { return party_dims_; }
  const Dims& entry_dims() const { return raw_.dims(); }
  int parties() const { return static_cast<int>(party_dims_.size()); }
  const std::vector<BasisKind>& basis_kinds() const { return kinds_; }
  const ScalingVector& scaling() const { return scaling_; }

  /// Unscaled expectation values.
  const RealTensor& raw() const { return raw_; }

  /// Expectation values with the scaling applied.
  RealTensor entries() const;

  /// Bipartite case as a d_A^2 x d_B^2 matrix, scaling applied.
  RealMatrix matrix() const;

  /// Copy with scaling multiplied by xs (component-wise).
  CorrelationTensor scaled(const ScalingVector& xs) const;

  /// Copy with scaling replaced by xs.
  CorrelationTensor with_scaling(const ScalingVector& xs) const;

 private:
  Dims party_dims_;
  RealTensor raw_;
  std::vector<BasisKind> kinds_;
  ScalingVector scaling_;
};

/// Throws InvalidArgument if the basis is not canonical and
/// DimensionMismatch if dims disagree.
BlochVector bloch_vector(const DensityMatrix& rho, const OperatorBasis& basis);

/// One basis per party; throws DimensionMismatch on count or size mismatch.
CorrelationTensor correlation_tensor(const DensityMatrix& rho,
                                     const std::vector<OperatorBasis>& bases);

/// Correlation tensor in the canonical basis of every party.
CorrelationTensor canonical_correlation(const DensityMatrix& rho);

/// Free-function form of CorrelationTensor::scaled; throws DimensionMismatch
/// when the lengths differ.
CorrelationTensor scale(const CorrelationTensor& c, const ScalingVector& xs);

/// Multiplies the index-0 slice of every mode k by xs[k].
RealTensor apply_scaling(const RealTensor& t, const ScalingVector& xs);

}  // namespace corrsep
