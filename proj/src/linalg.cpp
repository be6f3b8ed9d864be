#include "corrsep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "corrsep/error.hpp"

namespace corrsep {
namespace {

template <typename Matrix>
void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::NumericalFailure,
                std::string(what) + ": matrix has non-finite entries");
  }
}

template <typename Result, typename Matrix>
Result thin_svd(const Matrix& m) {
  require_finite(m, "svd");
  Result out;
  if (m.size() == 0) {
    out.U = Matrix::Zero(m.rows(), 0);
    out.V = Matrix::Zero(m.cols(), 0);
    out.s = RealVector::Zero(0);
    return out;
  }
  Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "svd: solver did not converge");
  }
  out.U = solver.matrixU();
  out.s = solver.singularValues();
  out.V = solver.matrixV();
  return out;
}

// Digit decomposition of a flat tensor-product index, slowest factor first.
std::vector<int> strides_of(const Dims& dims) {
  std::vector<int> strides(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) {
    strides[k] = strides[k + 1] * dims[k + 1];
  }
  return strides;
}

void check_square_dims(const ComplexMatrix& rho, const Dims& dims,
                       const char* what) {
  if (dims.empty()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": empty subsystem list");
  }
  for (int d : dims) {
    if (d < 1) {
      throw Error(ErrorCode::DimensionMismatch,
                  std::string(what) + ": subsystem dimension must be >= 1");
    }
  }
  const int total = product(dims);
  if (rho.rows() != total || rho.cols() != total) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": matrix is " + std::to_string(rho.rows()) +
                    "x" + std::to_string(rho.cols()) +
                    " but subsystem dims multiply to " + std::to_string(total));
  }
}

}  // namespace

SvdResult svd(const ComplexMatrix& m) { return thin_svd<SvdResult>(m); }
RealSvdResult svd(const RealMatrix& m) { return thin_svd<RealSvdResult>(m); }

RealVector singular_values(const ComplexMatrix& m) {
  require_finite(m, "singular_values");
  if (m.size() == 0) return RealVector::Zero(0);
  Eigen::JacobiSVD<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "svd: solver did not converge");
  }
  return solver.singularValues();
}

RealVector singular_values(const RealMatrix& m) {
  require_finite(m, "singular_values");
  if (m.size() == 0) return RealVector::Zero(0);
  Eigen::JacobiSVD<RealMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "svd: solver did not converge");
  }
  return solver.singularValues();
}

double trace_norm(const ComplexMatrix& m) { return singular_values(m).sum(); }
double trace_norm(const RealMatrix& m) { return singular_values(m).sum(); }

double spectral_norm(const RealMatrix& m) {
  const RealVector s = singular_values(m);
  return s.size() == 0 ? 0.0 : s(0);
}

Eigen::Index numerical_rank(const RealVector& s) {
  if (s.size() == 0) return 0;
  const double cutoff = kRankTolerance * s.maxCoeff();
  return (s.array() > cutoff).count();
}

HermitianEigen eigh(const ComplexMatrix& h) {
  require_finite(h, "eigh");
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "eigh: solver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const ComplexMatrix& h) {
  require_finite(h, "min_eigenvalue");
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "eigh: solver did not converge");
  }
  return solver.eigenvalues()(0);
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix kron(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) return ComplexMatrix::Identity(1, 1);
  ComplexMatrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

RealVector kron(const RealVector& a, const RealVector& b) {
  RealVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

int product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<int>());
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const Dims& dims,
                            std::vector<int> keep) {
  check_square_dims(rho, dims, "partial_trace");
  const int n = static_cast<int>(dims.size());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (int k : keep) {
    if (k < 0 || k >= n) {
      throw Error(ErrorCode::DimensionMismatch,
                  "partial_trace: subsystem index " + std::to_string(k) +
                      " out of range");
    }
  }
  std::vector<bool> kept(n, false);
  for (int k : keep) kept[k] = true;

  const int total = product(dims);
  const std::vector<int> strides = strides_of(dims);
  // Split every flat index into its kept part and its traced part.
  std::vector<int> kept_index(total), traced_index(total);
  for (int i = 0; i < total; ++i) {
    int kept_flat = 0, traced_flat = 0;
    for (int k = 0; k < n; ++k) {
      const int digit = (i / strides[k]) % dims[k];
      if (kept[k]) {
        kept_flat = kept_flat * dims[k] + digit;
      } else {
        traced_flat = traced_flat * dims[k] + digit;
      }
    }
    kept_index[i] = kept_flat;
    traced_index[i] = traced_flat;
  }

  int kept_dim = 1;
  for (int k : keep) kept_dim *= dims[k];
  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  for (int i = 0; i < total; ++i) {
    for (int j = 0; j < total; ++j) {
      if (traced_index[i] == traced_index[j]) {
        out(kept_index[i], kept_index[j]) += rho(i, j);
      }
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const Dims& dims,
                                int subsystem) {
  check_square_dims(rho, dims, "partial_transpose");
  if (subsystem < 0 || subsystem >= static_cast<int>(dims.size())) {
    throw Error(ErrorCode::DimensionMismatch,
                "partial_transpose: subsystem index out of range");
  }
  const int total = product(dims);
  const int stride = strides_of(dims)[subsystem];
  const int d = dims[subsystem];
  ComplexMatrix out(total, total);
  for (int i = 0; i < total; ++i) {
    const int di = (i / stride) % d;
    for (int j = 0; j < total; ++j) {
      const int dj = (j / stride) % d;
      const int ni = i + (dj - di) * stride;
      const int nj = j + (di - dj) * stride;
      out(ni, nj) = rho(i, j);
    }
  }
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& rho, const Dims& dims,
                                 const std::vector<int>& perm) {
  check_square_dims(rho, dims, "permute_subsystems");
  const int n = static_cast<int>(dims.size());
  if (static_cast<int>(perm.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "permute_subsystems: permutation length differs from dims");
  }
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]) {
      throw Error(ErrorCode::InvalidArgument,
                  "permute_subsystems: not a permutation");
    }
    seen[p] = true;
  }
  Dims new_dims(n);
  for (int k = 0; k < n; ++k) new_dims[k] = dims[perm[k]];
  const std::vector<int> old_strides = strides_of(dims);
  const std::vector<int> new_strides = strides_of(new_dims);

  const int total = product(dims);
  std::vector<int> map(total);  // old flat index -> new flat index
  for (int i = 0; i < total; ++i) {
    int target = 0;
    for (int k = 0; k < n; ++k) {
      const int digit = (i / old_strides[perm[k]]) % dims[perm[k]];
      target += digit * new_strides[k];
    }
    map[i] = target;
  }
  ComplexMatrix out(total, total);
  for (int i = 0; i < total; ++i) {
    for (int j = 0; j < total; ++j) out(map[i], map[j]) = rho(i, j);
  }
  return out;
}

ComplexMatrix inverse_sqrt_psd(const ComplexMatrix& h, double floor) {
  const HermitianEigen eig = eigh(h);
  if (eig.values.size() > 0 && eig.values(0) <= floor) {
    throw Error(ErrorCode::RankDeficient,
                "inverse_sqrt_psd: eigenvalue " + std::to_string(eig.values(0)) +
                    " at or below floor");
  }
  const RealVector inv = eig.values.array().rsqrt();
  return eig.vectors * inv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

// ---------------------------------------------------------------------------
// RealTensor

RealTensor::RealTensor(Dims dims) : dims_(std::move(dims)) {
  for (int d : dims_) {
    if (d < 1) {
      throw Error(ErrorCode::DimensionMismatch,
                  "RealTensor: mode dimension must be >= 1");
    }
  }
  data_.assign(static_cast<std::size_t>(product(dims_)), 0.0);
}

RealTensor::RealTensor(Dims dims, std::vector<double> data)
    : RealTensor(std::move(dims)) {
  if (data.size() != data_.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "RealTensor: entry count " + std::to_string(data.size()) +
                    " differs from product of dims " +
                    std::to_string(data_.size()));
  }
  data_ = std::move(data);
}

RealTensor RealTensor::from_matrix(const RealMatrix& m) {
  RealTensor t({static_cast<int>(m.rows()), static_cast<int>(m.cols())});
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      t.data_[static_cast<std::size_t>(i * m.cols() + j)] = m(i, j);
    }
  }
  return t;
}

std::size_t RealTensor::flat_index(std::span<const int> index) const {
  if (index.size() != dims_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "RealTensor: index order mismatch");
  }
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (index[k] < 0 || index[k] >= dims_[k]) {
      throw Error(ErrorCode::DimensionMismatch, "RealTensor: index out of range");
    }
    flat = flat * static_cast<std::size_t>(dims_[k]) +
           static_cast<std::size_t>(index[k]);
  }
  return flat;
}

void RealTensor::multi_index(std::size_t flat, std::span<int> out) const {
  for (int k = order() - 1; k >= 0; --k) {
    out[k] = static_cast<int>(flat % static_cast<std::size_t>(dims_[k]));
    flat /= static_cast<std::size_t>(dims_[k]);
  }
}

double& RealTensor::at(std::span<const int> index) {
  return data_[flat_index(index)];
}

double RealTensor::at(std::span<const int> index) const {
  return data_[flat_index(index)];
}

double RealTensor::frobenius_norm() const {
  double sum = 0.0;
  for (double v : data_) sum += v * v;
  return std::sqrt(sum);
}

double RealTensor::inner(const RealTensor& other) const {
  if (other.dims_ != dims_) {
    throw Error(ErrorCode::DimensionMismatch, "RealTensor::inner: dims differ");
  }
  return std::inner_product(data_.begin(), data_.end(), other.data_.begin(), 0.0);
}

RealMatrix RealTensor::as_matrix() const {
  if (order() != 2) {
    throw Error(ErrorCode::DimensionMismatch,
                "RealTensor::as_matrix: tensor is not order 2");
  }
  RealMatrix m(dims_[0], dims_[1]);
  for (int i = 0; i < dims_[0]; ++i) {
    for (int j = 0; j < dims_[1]; ++j) {
      m(i, j) = data_[static_cast<std::size_t>(i * dims_[1] + j)];
    }
  }
  return m;
}

namespace {

void check_mode(const Dims& dims, int mode) {
  if (mode < 0 || mode >= static_cast<int>(dims.size())) {
    throw Error(ErrorCode::DimensionMismatch,
                "unfold: mode " + std::to_string(mode) + " out of range for order " +
                    std::to_string(dims.size()));
  }
}

// Column index of a full multi-index inside the mode-n unfolding.
std::size_t unfold_column(std::span<const int> index, const Dims& dims, int mode) {
  std::size_t col = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (static_cast<int>(k) == mode) continue;
    col = col * static_cast<std::size_t>(dims[k]) + static_cast<std::size_t>(index[k]);
  }
  return col;
}

}  // namespace

RealMatrix unfold(const RealTensor& t, int mode) {
  check_mode(t.dims(), mode);
  const int rows = t.dims()[mode];
  const auto cols = static_cast<Eigen::Index>(t.size() / static_cast<std::size_t>(rows));
  RealMatrix m(rows, cols);
  std::vector<int> index(t.dims().size());
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    t.multi_index(flat, index);
    m(index[mode], static_cast<Eigen::Index>(unfold_column(index, t.dims(), mode))) =
        t[flat];
  }
  return m;
}

RealTensor refold(const RealMatrix& m, const Dims& dims, int mode) {
  check_mode(dims, mode);
  RealTensor t(dims);
  if (m.rows() != dims[mode] ||
      static_cast<std::size_t>(m.size()) != t.size()) {
    throw Error(ErrorCode::DimensionMismatch, "refold: matrix shape does not match dims");
  }
  std::vector<int> index(dims.size());
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    t.multi_index(flat, index);
    t[flat] = m(index[mode], static_cast<Eigen::Index>(unfold_column(index, dims, mode)));
  }
  return t;
}

}  // namespace corrsep
