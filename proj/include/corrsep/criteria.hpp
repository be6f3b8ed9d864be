#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "corrsep/correlation.hpp"
#include "corrsep/operator_bases.hpp"
#include "corrsep/states.hpp"
#include "corrsep/tensor_norms.hpp"

namespace corrsep {

enum class CriterionKind {
  Family,
  DeVicente,
  Ccnr,
  Esic,
  Fei,
  Ppt,
  MultipartiteKyFan,
  MultipartiteNuclearLb,
  FilteredDv,
};

std::string to_string(CriterionKind kind);

/// Outcome of one separability test. For norm criteria gap = rhs - lhs; for
/// PPT lhs is the smallest eigenvalue of the partial transpose and gap = lhs.
/// A negative gap (below -tolerance) certifies entanglement.
struct CriterionReport {
  CriterionKind criterion = CriterionKind::Family;
  std::vector<double> params;
  double lhs = 0;
  double rhs = 0;
  double gap = 0;
  bool detected = false;
};

struct CriterionOptions {
  double detection_tolerance = 1e-10;
  double ppt_tolerance = 1e-9;
};

/// sqrt((d - 1 + x^2) / d)
double bound_factor(int d, double x);

struct BoundFactors {
  std::vector<double> factors;
  double product = 1;
};

BoundFactors bound_factors(const Dims& dims, const ScalingVector& xs);

/// ||D_x C D_y||_tr against N_A(x) N_B(y) for a bipartite state.
CriterionReport family_gap(const DensityMatrix& rho, double x, double y,
                           const CriterionOptions& opts = {});

/// Same, reusing a canonical bipartite correlation tensor (its stored scaling
/// is replaced by (x, y)).
CriterionReport family_gap(const CorrelationTensor& canonical, double x, double y,
                           const CriterionOptions& opts = {});

enum class NamedCriterion { DeVicente, Ccnr, Esic, Fei };

std::string to_string(NamedCriterion name);

/// Scaling point of a named criterion: dV (0,0), CCNR (1,1),
/// Fei (sqrt(2/dA), sqrt(2/dB)), ESIC (sqrt(dA+1), sqrt(dB+1)).
std::pair<double, double> named_point(NamedCriterion name, int dA, int dB);

CriterionReport named_criterion(const DensityMatrix& rho, NamedCriterion name,
                                const CriterionOptions& opts = {});

struct EsicResult {
  CriterionReport report;  // lhs = ||P||_tr, rhs = 2 / sqrt(dA(dA+1) dB(dB+1))
  RealMatrix overlaps;     // P_ab = Tr(rho Pi^A_a x Pi^B_b)
  double scaled_overlap_norm = 0;  // sqrt(dA(dA+1) dB(dB+1)) ||P||_tr
  double acb_norm = 0;             // ||A C B||_tr, C in the SIC-derived bases
  double canonical_norm = 0;       // ||D C^can D||_tr at the ESIC point
  double acb_residual = 0;         // max |sqrt(...) P - A C B|
};

/// ESIC test straight from the SIC overlap matrix, together with its
/// rewriting as A C B in the orthonormal SIC-derived bases of the given sign.
EsicResult esic_direct(const DensityMatrix& rho, const SicPovm& sic_a, const SicPovm& sic_b,
                       SicSign sign = SicSign::Minus, const CriterionOptions& opts = {});

/// Smallest eigenvalue of the partial transpose on `subsystem` (default:
/// last party). Detected when below -ppt_tolerance.
CriterionReport ppt_check(const DensityMatrix& rho, int subsystem = -1,
                          const CriterionOptions& opts = {});

struct OptimizerConfig {
  int grid_points = 25;  // log-spaced points per axis, plus 0
  double grid_min = 1e-2;
  double grid_max = 1e5;
  bool refine = true;
  int max_refine_iterations = 400;
};

struct XYOptimum {
  double x = 0;
  double y = 0;
  double gap = 0;
};

/// Grid search over {0} U logspace(grid_min, grid_max) squared, followed by
/// Nelder-Mead refinement in (log x, log y) from the best grid point.
XYOptimum optimize_xy(const DensityMatrix& rho, const OptimizerConfig& config = {});

/// Maps a state to a criterion report; used by threshold scans.
using CriterionEvaluator = std::function<CriterionReport(const DensityMatrix&)>;

/// What to evaluate: a named point, an explicit (x, y), PPT, or the
/// filtered dV test.
struct CriterionSpec {
  enum class Type { Named, Point, Ppt, FilteredDv };
  Type type = Type::Named;
  NamedCriterion name = NamedCriterion::Ccnr;
  double x = 1;
  double y = 1;

  static CriterionSpec named(NamedCriterion n) { return {Type::Named, n, 1, 1}; }
  static CriterionSpec point(double x, double y) {
    return {Type::Point, NamedCriterion::Ccnr, x, y};
  }
  static CriterionSpec ppt() { return {Type::Ppt, NamedCriterion::Ccnr, 1, 1}; }
  static CriterionSpec filtered_dv() { return {Type::FilteredDv, NamedCriterion::Ccnr, 1, 1}; }

  std::string label() const;
};

CriterionEvaluator make_evaluator(const CriterionSpec& spec, const CriterionOptions& opts = {});

struct ThresholdOptions {
  double tolerance = 1e-4;
};

struct ThresholdResult {
  bool detected = false;  // false: no detection anywhere in [0, 1]
  double p_star = 1;      // smallest p found detected (upper bracket end)
  double p_lower = 1;     // largest p found undetected
  int evaluations = 0;
};

/// Bisection for the smallest detected noise level. Requires p = 0 to be
/// undetected (Domain error otherwise); returns detected = false when p = 1
/// is not detected.
ThresholdResult threshold_scan(const StateFamily& family, const CriterionEvaluator& criterion,
                               const ThresholdOptions& opts = {});

enum class MultipartiteMethod { KyFan, NuclearLowerBound };

/// rhs = prod_k N_k(x_k); lhs = Ky-Fan unfolding norm or the certified
/// nuclear-norm lower bound of the scaled canonical correlation tensor.
CriterionReport multipartite_gap(const DensityMatrix& rho, const ScalingVector& xs,
                                 MultipartiteMethod method, const CriterionOptions& opts = {});

CriterionReport multipartite_gap(const CorrelationTensor& canonical, const ScalingVector& xs,
                                 MultipartiteMethod method, const CriterionOptions& opts = {});

struct CenteredIdentityReport {
  double max_bloch_norm = 0;
  std::vector<double> xs;
  std::vector<double> gaps;               // f(x, x)
  double decomposition_residual = 0;      // max |lhs(x,x) - x^2/sqrt(dA dB) - lhs(0,0)|
  double gap_spread = 0;                  // max f - min f (only meaningful for dA == dB)
  bool equal_dims = false;
};

/// For states with vanishing local Bloch vectors: checks
///   ||D_x C D_y||_tr = xy / sqrt(dA dB) + ||D_0 C D_0||_tr
/// on (x, x) for each x, and records f(x, x). Throws Domain when either Bloch
/// vector exceeds `bloch_tolerance` in norm.
CenteredIdentityReport dv_centered_identity_check(const DensityMatrix& rho,
                                                  const std::vector<double>& xs = {0, 0.5, 1, 2, 7},
                                                  double bloch_tolerance = 1e-8);

}  // namespace corrsep
