#include "corrsep/correlation.hpp"

#include <cmath>
#include <string>

#include "corrsep/error.hpp"

namespace corrsep {
namespace {

// Tr_first[(G x I) M] for M acting on C^d x C^rest.
ComplexMatrix contract_first(const ComplexMatrix& m, const ComplexMatrix& g, int rest) {
  const int d = static_cast<int>(g.rows());
  ComplexMatrix out = ComplexMatrix::Zero(rest, rest);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Complex coeff = g(i, j);
      if (coeff == Complex(0.0, 0.0)) continue;
      out.noalias() += coeff * m.block(j * rest, i * rest, rest, rest);
    }
  }
  return out;
}

}  // namespace

ComplexMatrix BlochVector::reconstruct(const OperatorBasis& basis) const {
  ComplexMatrix out = ComplexMatrix::Identity(dim, dim) / double(dim);
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    out += r(i) * basis.elements[static_cast<std::size_t>(i + 1)];
  }
  return out;
}

ScalingVector::ScalingVector(std::vector<double> xs) : xs_(std::move(xs)) {
  for (double x : xs_) {
    if (!std::isfinite(x) || x < 0.0) {
      throw Error(ErrorCode::InvalidArgument,
                  "scaling parameters must be finite and >= 0, got " + std::to_string(x));
    }
  }
}

CorrelationTensor::CorrelationTensor(Dims party_dims, RealTensor raw,
                                     std::vector<BasisKind> kinds, ScalingVector scaling)
    : party_dims_(std::move(party_dims)),
      raw_(std::move(raw)),
      kinds_(std::move(kinds)),
      scaling_(std::move(scaling)) {
  const std::size_t n = party_dims_.size();
  if (raw_.dims().size() != n || kinds_.size() != n || scaling_.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "CorrelationTensor: party count disagrees across fields");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (raw_.dims()[k] != party_dims_[k] * party_dims_[k]) {
      throw Error(ErrorCode::DimensionMismatch,
                  "CorrelationTensor: mode size must be d^2 for every party");
    }
  }
}

RealTensor CorrelationTensor::entries() const { return apply_scaling(raw_, scaling_); }

RealMatrix CorrelationTensor::matrix() const {
  if (parties() != 2) {
    throw Error(ErrorCode::DimensionMismatch,
                "CorrelationTensor::matrix: only defined for two parties");
  }
  return entries().as_matrix();
}

CorrelationTensor CorrelationTensor::scaled(const ScalingVector& xs) const {
  if (xs.size() != scaling_.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "scale: expected " + std::to_string(scaling_.size()) +
                    " parameters, got " + std::to_string(xs.size()));
  }
  std::vector<double> combined = scaling_.values();
  for (std::size_t k = 0; k < combined.size(); ++k) combined[k] *= xs[k];
  return with_scaling(ScalingVector(std::move(combined)));
}

CorrelationTensor CorrelationTensor::with_scaling(const ScalingVector& xs) const {
  if (xs.size() != scaling_.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "scale: expected " + std::to_string(scaling_.size()) +
                    " parameters, got " + std::to_string(xs.size()));
  }
  return CorrelationTensor(party_dims_, raw_, kinds_, xs);
}

RealTensor apply_scaling(const RealTensor& t, const ScalingVector& xs) {
  if (xs.size() != static_cast<std::size_t>(t.order())) {
    throw Error(ErrorCode::DimensionMismatch, "apply_scaling: parameter count mismatch");
  }
  RealTensor out = t;
  std::vector<int> index(static_cast<std::size_t>(t.order()));
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    out.multi_index(flat, index);
    double factor = 1.0;
    for (std::size_t k = 0; k < index.size(); ++k) {
      if (index[k] == 0) factor *= xs[k];
    }
    out[flat] *= factor;
  }
  return out;
}

BlochVector bloch_vector(const DensityMatrix& rho, const OperatorBasis& basis) {
  if (basis.kind != BasisKind::Canonical) {
    throw Error(ErrorCode::InvalidArgument, "bloch_vector: basis must be canonical");
  }
  if (rho.parties() != 1 || rho.size() != basis.dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "bloch_vector: expected a single-party state of dimension " +
                    std::to_string(basis.dim));
  }
  BlochVector out;
  out.dim = basis.dim;
  out.r.resize(basis.dim * basis.dim - 1);
  for (int i = 1; i < basis.dim * basis.dim; ++i) {
    out.r(i - 1) = (rho.matrix() * basis.elements[static_cast<std::size_t>(i)]).trace().real();
  }
  return out;
}

CorrelationTensor correlation_tensor(const DensityMatrix& rho,
                                     const std::vector<OperatorBasis>& bases) {
  const Dims& dims = rho.dims();
  if (bases.size() != dims.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "correlation_tensor: " + std::to_string(bases.size()) + " bases for " +
                    std::to_string(dims.size()) + " parties");
  }
  Dims entry_dims;
  std::vector<BasisKind> kinds;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (bases[k].dim != dims[k] ||
        bases[k].elements.size() != static_cast<std::size_t>(dims[k] * dims[k])) {
      throw Error(ErrorCode::DimensionMismatch,
                  "correlation_tensor: basis " + std::to_string(k) +
                      " does not match subsystem dimension " + std::to_string(dims[k]));
    }
    entry_dims.push_back(dims[k] * dims[k]);
    kinds.push_back(bases[k].kind);
  }

  // Contract one party at a time, slowest first; the list stays in
  // lexicographic order of the basis indices consumed so far.
  std::vector<ComplexMatrix> partial{rho.matrix()};
  int rest = rho.size();
  for (std::size_t k = 0; k < dims.size(); ++k) {
    rest /= dims[k];
    std::vector<ComplexMatrix> next;
    next.reserve(partial.size() * bases[k].elements.size());
    for (const ComplexMatrix& m : partial) {
      for (const ComplexMatrix& g : bases[k].elements) {
        next.push_back(contract_first(m, g, rest));
      }
    }
    partial = std::move(next);
  }

  std::vector<double> values;
  values.reserve(partial.size());
  for (const ComplexMatrix& m : partial) values.push_back(m(0, 0).real());
  const int parties = static_cast<int>(dims.size());
  return CorrelationTensor(dims, RealTensor(std::move(entry_dims), std::move(values)),
                           std::move(kinds), ScalingVector::ones(parties));
}

CorrelationTensor canonical_correlation(const DensityMatrix& rho) {
  std::vector<OperatorBasis> bases;
  for (int d : rho.dims()) bases.push_back(canonical_basis(d));
  return correlation_tensor(rho, bases);
}

CorrelationTensor scale(const CorrelationTensor& c, const ScalingVector& xs) {
  return c.scaled(xs);
}

}  // namespace corrsep
