#include "corrsep/states.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "corrsep/error.hpp"

namespace corrsep {
namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

ComplexMatrix swap_printed_layout(const ComplexMatrix& printed, int d_slow, int d_fast) {
  return permute_subsystems(printed, {d_slow, d_fast}, {1, 0});
}

ComplexVector gaussian_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

ComplexMatrix random_local_state(int d, LocalStateKind kind, std::mt19937_64& rng) {
  if (kind == LocalStateKind::Any) {
    std::bernoulli_distribution coin(0.5);
    kind = coin(rng) ? LocalStateKind::Pure : LocalStateKind::Mixed;
  }
  if (kind == LocalStateKind::Pure) {
    ComplexVector v = gaussian_vector(d, rng);
    v.normalize();
    return projector(v);
  }
  // Partial trace of a Haar-random pure state on d x d: G G^dagger / Tr.
  ComplexMatrix g(d, d);
  for (int j = 0; j < d; ++j) g.col(j) = gaussian_vector(d, rng);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

void check_dims(const Dims& dims, const char* what) {
  if (dims.empty()) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + ": no subsystems");
  }
  for (int d : dims) {
    if (d < 1) {
      throw Error(ErrorCode::InvalidArgument,
                  std::string(what) + ": subsystem dimension must be >= 1");
    }
  }
}

}  // namespace

std::string density_matrix_violation(const Dims& dims, const ComplexMatrix& mat,
                                     const StateTolerances& tol) {
  if (dims.empty()) return "no subsystem dimensions";
  for (int d : dims) {
    if (d < 1) return "subsystem dimension must be >= 1";
  }
  const int total = product(dims);
  if (mat.rows() != total || mat.cols() != total) {
    return "matrix is " + std::to_string(mat.rows()) + "x" + std::to_string(mat.cols()) +
           " but dims multiply to " + std::to_string(total);
  }
  if (!mat.allFinite()) return "matrix has non-finite entries";
  const double herm = hermiticity_defect(mat);
  if (herm > tol.hermiticity) {
    return "not Hermitian (defect " + format_double(herm) + ")";
  }
  const double trace = mat.trace().real();
  if (std::abs(trace - 1.0) > tol.trace) {
    return "trace is " + format_double(trace) + ", expected 1";
  }
  const double lmin = min_eigenvalue(mat);
  if (lmin < tol.min_eigenvalue) {
    return "not positive semidefinite (min eigenvalue " + format_double(lmin) + ")";
  }
  return {};
}

DensityMatrix::DensityMatrix(Dims dims, ComplexMatrix mat, const StateTolerances& tol)
    : dims_(std::move(dims)), mat_(std::move(mat)) {
  const std::string violation = density_matrix_violation(dims_, mat_, tol);
  if (!violation.empty()) {
    const bool shape = dims_.empty() || mat_.rows() != product(dims_) ||
                       mat_.cols() != product(dims_);
    throw Error(shape ? ErrorCode::DimensionMismatch : ErrorCode::Domain,
                "density matrix: " + violation);
  }
}

DensityMatrix DensityMatrix::reduced(std::vector<int> keep) const {
  ComplexMatrix r = partial_trace(mat_, dims_, keep);
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  Dims kept;
  for (int k : keep) kept.push_back(dims_[k]);
  // Inherits the parent's tolerance implicitly: partial traces of a valid
  // state are valid up to rounding.
  return DensityMatrix(std::move(kept), std::move(r),
                       StateTolerances{1e-9, 1e-3, -1e-6});
}

double DensityMatrix::purity() const { return (mat_ * mat_).trace().real(); }

DensityMatrix maximally_mixed(const Dims& dims) {
  check_dims(dims, "maximally_mixed");
  const int n = product(dims);
  return DensityMatrix(dims, ComplexMatrix::Identity(n, n) / double(n));
}

DensityMatrix swap_parties(const DensityMatrix& rho) {
  if (rho.parties() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "swap_parties: state is not bipartite");
  }
  const Dims& d = rho.dims();
  return DensityMatrix({d[1], d[0]}, permute_subsystems(rho.matrix(), d, {1, 0}),
                       StateTolerances{1e-9, 1e-3, -1.0});
}

DensityMatrix mix_with_white_noise(const DensityMatrix& rho, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "mix_with_white_noise: p must lie in [0, 1], got " + format_double(p));
  }
  const int n = rho.size();
  ComplexMatrix mixed =
      p * rho.matrix() + (1.0 - p) * ComplexMatrix::Identity(n, n) / double(n);
  // Mixing cannot create trace or positivity violations beyond those already
  // accepted for rho.
  return DensityMatrix(rho.dims(), std::move(mixed), StateTolerances{1e-9, 1e-3, -1.0});
}

DensityMatrix rudolph_state(double r, double s, double t) {
  ComplexMatrix printed = ComplexMatrix::Zero(4, 4);
  printed(0, 0) = 1.0 + r;
  printed(0, 3) = t;
  printed(2, 2) = s - r;
  printed(3, 0) = t;
  printed(3, 3) = 1.0 - s;
  printed *= 0.5;
  const double lmin = min_eigenvalue(printed);
  if (lmin < -1e-9) {
    throw Error(ErrorCode::Domain,
                "rudolph_state: (r, s, t) = (" + format_double(r) + ", " +
                    format_double(s) + ", " + format_double(t) +
                    ") is not positive semidefinite (eigenvalue " +
                    format_double(lmin) + ")");
  }
  return DensityMatrix({2, 2}, swap_printed_layout(printed, 2, 2));
}

RealMatrix chessboard_vectors(const ChessboardParams& q) {
  RealMatrix v(4, 9);
  v << q.m, 0, q.s, 0, q.n, 0, 0, 0, 0,
       0, q.a, 0, q.b, 0, q.c, 0, 0, 0,
       q.n, 0, 0, 0, -q.m, 0, q.t, 0, 0,
       0, q.b, 0, -q.a, 0, 0, 0, q.d, 0;
  return v;
}

DensityMatrix chessboard_state(const ChessboardParams& params) {
  const RealMatrix v = chessboard_vectors(params);
  if (v.cwiseAbs().maxCoeff() == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "chessboard_state: all vectors vanish");
  }
  const RealMatrix sum = v.transpose() * v;
  const ComplexMatrix printed = sum.cast<Complex>() / sum.trace();
  return DensityMatrix({3, 3}, swap_printed_layout(printed, 3, 3));
}

RealMatrix upb_vectors(UpbKind kind) {
  RealMatrix out(5, 9);
  if (kind == UpbKind::Tiles) {
    const double h = 1.0 / std::sqrt(2.0);
    const RealVector e0 = RealVector::Unit(3, 0);
    const RealVector e1 = RealVector::Unit(3, 1);
    const RealVector e2 = RealVector::Unit(3, 2);
    const RealVector all = RealVector::Ones(3) / std::sqrt(3.0);
    out.row(0) = kron(e0, RealVector(h * (e0 - e1))).transpose();
    out.row(1) = kron(e2, RealVector(h * (e1 - e2))).transpose();
    out.row(2) = kron(RealVector(h * (e0 - e1)), e2).transpose();
    out.row(3) = kron(RealVector(h * (e1 - e2)), e0).transpose();
    out.row(4) = kron(all, all).transpose();
    return out;
  }
  // Pentagon pyramid: apex height chosen so that non-adjacent legs are
  // orthogonal.
  const double h = 0.5 * std::sqrt(1.0 + std::sqrt(5.0));
  std::vector<RealVector> legs;
  for (int j = 0; j < 5; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / 5.0;
    RealVector v(3);
    v << std::cos(phi), std::sin(phi), h;
    legs.push_back(v.normalized());
  }
  for (int j = 0; j < 5; ++j) {
    out.row(j) = kron(legs[j], legs[(2 * j) % 5]).transpose();
  }
  return out;
}

DensityMatrix upb_state(UpbKind kind) {
  const RealMatrix v = upb_vectors(kind);
  const RealMatrix rho = (RealMatrix::Identity(9, 9) - v.transpose() * v) / 4.0;
  return DensityMatrix({3, 3}, rho.cast<Complex>());
}

DensityMatrix bell_state() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix({2, 2}, projector(v));
}

DensityMatrix ghz_state(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "ghz_state: need n >= 2");
  const int dim = 1 << n;
  ComplexVector v = ComplexVector::Zero(dim);
  v(0) = v(dim - 1) = 1.0 / std::sqrt(2.0);
  return DensityMatrix(Dims(static_cast<std::size_t>(n), 2), projector(v));
}

DensityMatrix w_state(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "w_state: need n >= 2");
  const int dim = 1 << n;
  ComplexVector v = ComplexVector::Zero(dim);
  for (int k = 0; k < n; ++k) v(1 << k) = 1.0 / std::sqrt(double(n));
  return DensityMatrix(Dims(static_cast<std::size_t>(n), 2), projector(v));
}

DensityMatrix random_product_state(const Dims& dims, std::uint64_t seed,
                                   LocalStateKind kind) {
  check_dims(dims, "random_product_state");
  std::mt19937_64 rng(seed);
  ComplexMatrix rho = ComplexMatrix::Identity(1, 1);
  for (int d : dims) rho = kron(rho, random_local_state(d, kind, rng));
  return DensityMatrix(dims, std::move(rho));
}

DensityMatrix random_separable_state(const Dims& dims, int terms, std::uint64_t seed) {
  check_dims(dims, "random_separable_state");
  if (terms < 1) {
    throw Error(ErrorCode::InvalidArgument, "random_separable_state: terms must be >= 1");
  }
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> gamma1(1.0);
  std::vector<double> weights(static_cast<std::size_t>(terms));
  double total = 0.0;
  for (double& w : weights) {
    w = gamma1(rng);
    total += w;
  }
  const int n = product(dims);
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (double w : weights) {
    ComplexMatrix term = ComplexMatrix::Identity(1, 1);
    for (int d : dims) term = kron(term, random_local_state(d, LocalStateKind::Any, rng));
    rho += (w / total) * term;
  }
  return DensityMatrix(dims, std::move(rho));
}

DensityMatrix random_pure_state(const Dims& dims, std::uint64_t seed) {
  check_dims(dims, "random_pure_state");
  std::mt19937_64 rng(seed);
  ComplexVector v = gaussian_vector(product(dims), rng);
  v.normalize();
  return DensityMatrix(dims, projector(v));
}

ComplexMatrix haar_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ComplexMatrix g(n, n);
  for (int j = 0; j < n; ++j) g.col(j) = gaussian_vector(n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex diag = r(j, j);
    if (std::abs(diag) > 0) q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

StateFamily noisy_family(DensityMatrix rho, std::string label) {
  return {[rho = std::move(rho)](double p) { return mix_with_white_noise(rho, p); },
          std::move(label)};
}

}  // namespace corrsep
