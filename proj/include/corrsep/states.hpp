#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "corrsep/linalg.hpp"

namespace corrsep {

/// Acceptance limits applied when a DensityMatrix is constructed.
struct StateTolerances {
  double hermiticity = 1e-10;
  double trace = 1e-10;
  double min_eigenvalue = -1e-9;

  /// Looser limits for matrices printed with four decimals.
  static StateTolerances rounded() { return {1e-10, 1e-3, -5e-4}; }
};

/// Hermitian, unit-trace, positive semidefinite matrix over a list of
/// subsystem dimensions (subsystem 0 slowest-varying).
class DensityMatrix {
 public:
  /// Validates against `tol`; throws Domain on violation and
  /// DimensionMismatch when dims do not match the matrix.
  DensityMatrix(Dims dims, ComplexMatrix mat, const StateTolerances& tol = {});

  const Dims& dims() const { return dims_; }
  const ComplexMatrix& matrix() const { return mat_; }
  int parties() const { return static_cast<int>(dims_.size()); }
  int size() const { return static_cast<int>(mat_.rows()); }

  /// Reduced state of the listed subsystems.
  DensityMatrix reduced(std::vector<int> keep) const;

  double purity() const;

 private:
  Dims dims_;
  ComplexMatrix mat_;
};

/// Checks the DensityMatrix invariants without throwing. Empty string on
/// success, otherwise a description of the first violation.
std::string density_matrix_violation(const Dims& dims, const ComplexMatrix& mat,
                                     const StateTolerances& tol = {});

DensityMatrix maximally_mixed(const Dims& dims);

/// Exchanges the two parties of a bipartite state.
DensityMatrix swap_parties(const DensityMatrix& rho);

/// p * rho + (1 - p) * identity / D. Throws InvalidArgument unless 0 <= p <= 1.
DensityMatrix mix_with_white_noise(const DensityMatrix& rho, double p);

/// Two-qubit family
///   1/2 [[1+r, 0, 0, t], [0, 0, 0, 0], [0, 0, s-r, 0], [t, 0, 0, 1-s]]
/// whose rows are labelled with the second qubit as the slow index, i.e. the
/// returned state (stored with party 0 slow) is the swap of the printed
/// matrix. With this labelling the canonical correlation matrix is
///   1/2 [[1, 0, 0, r], [0, t, 0, 0], [0, 0, -t, 0], [s, 0, 0, 1+r-s]].
/// Throws Domain (naming the offending eigenvalue) if the matrix is not PSD.
DensityMatrix rudolph_state(double r, double s, double t);

struct ChessboardParams {
  double a = 0, b = 0, c = 0, d = 0, m = 0, n = 0, s = 0, t = 0;

  /// Parameters of the PPT entangled example detected at (x, y) = (5.8, 5.9).
  static ChessboardParams reference() {
    return {0.3346, -0.1090, -0.6456, 0.8560, 0.4690, -0.3161, -1.0178, -0.6085};
  }
};

/// Noise level used with ChessboardParams::reference().
inline constexpr double kChessboardReferenceNoise = 0.8062;

/// Normalized sum of projectors onto the four chessboard vectors
///   V1 = (m,0,s; 0,n,0; 0,0,0)    V2 = (0,a,0; b,0,c; 0,0,0)
///   V3 = (n,0,0; 0,-m,0; t,0,0)   V4 = (0,b,0; -a,0,0; 0,d,0)
/// (real parameters). As with rudolph_state, the printed 9x9 layout has the
/// second qutrit as the slow index; the returned state is its party swap.
/// Throws InvalidArgument if every vector vanishes.
DensityMatrix chessboard_state(const ChessboardParams& params);

/// The chessboard vectors in the printed layout (rows are V1..V4).
RealMatrix chessboard_vectors(const ChessboardParams& params);

enum class UpbKind { Pyramid, Tiles };

/// Five product vectors of the requested unextendible product basis on 3x3.
/// Rows are the vectors (real), ordered as kron(a, b).
RealMatrix upb_vectors(UpbKind kind);

/// (identity_9 - sum_j |psi_j><psi_j|) / 4.
DensityMatrix upb_state(UpbKind kind);

DensityMatrix bell_state();
/// (|0...0> + |1...1>)/sqrt(2) on n qubits, n >= 2.
DensityMatrix ghz_state(int n);
/// Equal superposition of single-excitation kets on n qubits, n >= 2.
DensityMatrix w_state(int n);

/// Haar-random pure states, or mixed states drawn as partial traces of
/// Haar-random pure states on d x d.
enum class LocalStateKind { Pure, Mixed, Any };

/// Product state with independent random local factors. The generator is
/// std::mt19937_64 seeded with `seed`, Gaussian entries via
/// std::normal_distribution; only statistical properties are guaranteed
/// across platforms.
DensityMatrix random_product_state(const Dims& dims, std::uint64_t seed,
                                   LocalStateKind kind = LocalStateKind::Any);

/// Mixture of `terms` random product states with flat-Dirichlet weights.
DensityMatrix random_separable_state(const Dims& dims, int terms,
                                     std::uint64_t seed);

/// Haar-random pure state on the full space (generally entangled).
DensityMatrix random_pure_state(const Dims& dims, std::uint64_t seed);

/// Haar-random unitary of size n.
ComplexMatrix haar_unitary(int n, std::uint64_t seed);

/// One-parameter family p -> DensityMatrix, p in [0, 1].
struct StateFamily {
  std::function<DensityMatrix(double)> generator;
  std::string label;
};

/// p -> p * rho + (1 - p) * white noise.
StateFamily noisy_family(DensityMatrix rho, std::string label);

}  // namespace corrsep
