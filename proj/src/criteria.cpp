#include "corrsep/criteria.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "corrsep/error.hpp"
#include "corrsep/filtering.hpp"

namespace corrsep {
namespace {

void require_bipartite(const Dims& dims, const char* what) {
  if (dims.size() != 2) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": state is not bipartite");
  }
}

void require_canonical(const CorrelationTensor& c, const char* what) {
  for (BasisKind k : c.basis_kinds()) {
    if (k != BasisKind::Canonical) {
      throw Error(ErrorCode::InvalidArgument,
                  std::string(what) + ": correlation tensor is not in the canonical basis");
    }
  }
}

CriterionReport finish(CriterionKind kind, std::vector<double> params, double lhs, double rhs,
                       double tolerance) {
  CriterionReport r;
  r.criterion = kind;
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = rhs - lhs;
  r.detected = r.gap < -tolerance;
  return r;
}

CriterionKind kind_of(NamedCriterion name) {
  switch (name) {
    case NamedCriterion::DeVicente: return CriterionKind::DeVicente;
    case NamedCriterion::Ccnr: return CriterionKind::Ccnr;
    case NamedCriterion::Esic: return CriterionKind::Esic;
    case NamedCriterion::Fei: return CriterionKind::Fei;
  }
  return CriterionKind::Family;
}

// Nelder-Mead on a 2-d function. Plain textbook coefficients.
std::array<double, 3> nelder_mead(const std::function<double(double, double)>& f, double u0,
                                  double v0, double step, int max_iterations) {
  std::array<std::array<double, 3>, 3> s{{{u0, v0, 0}, {u0 + step, v0, 0}, {u0, v0 + step, 0}}};
  for (auto& p : s) p[2] = f(p[0], p[1]);
  auto order = [&] {
    std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a[2] < b[2]; });
  };
  for (int it = 0; it < max_iterations; ++it) {
    order();
    const double spread = s[2][2] - s[0][2];
    const double size = std::max(std::hypot(s[1][0] - s[0][0], s[1][1] - s[0][1]),
                                 std::hypot(s[2][0] - s[0][0], s[2][1] - s[0][1]));
    if (spread < 1e-15 && size < 1e-8) break;
    const double cu = 0.5 * (s[0][0] + s[1][0]);
    const double cv = 0.5 * (s[0][1] + s[1][1]);
    auto at = [&](double t) {
      const double u = cu + t * (s[2][0] - cu);
      const double v = cv + t * (s[2][1] - cv);
      return std::array<double, 3>{u, v, f(u, v)};
    };
    const auto r = at(-1.0);
    if (r[2] < s[0][2]) {
      const auto e = at(-2.0);
      s[2] = e[2] < r[2] ? e : r;
    } else if (r[2] < s[1][2]) {
      s[2] = r;
    } else {
      const auto c = r[2] < s[2][2] ? at(-0.5) : at(0.5);
      if (c[2] < std::min(r[2], s[2][2])) {
        s[2] = c;
      } else {
        for (int k = 1; k < 3; ++k) {
          s[k][0] = 0.5 * (s[0][0] + s[k][0]);
          s[k][1] = 0.5 * (s[0][1] + s[k][1]);
          s[k][2] = f(s[k][0], s[k][1]);
        }
      }
    }
  }
  order();
  return s[0];
}

}  // namespace

std::string to_string(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::Family: return "family";
    case CriterionKind::DeVicente: return "dv";
    case CriterionKind::Ccnr: return "ccnr";
    case CriterionKind::Esic: return "esic";
    case CriterionKind::Fei: return "fei";
    case CriterionKind::Ppt: return "ppt";
    case CriterionKind::MultipartiteKyFan: return "multipartite-kyfan";
    case CriterionKind::MultipartiteNuclearLb: return "multipartite-nuclear-lb";
    case CriterionKind::FilteredDv: return "filtered-dv";
  }
  return "family";
}

std::string to_string(NamedCriterion name) { return to_string(kind_of(name)); }

double bound_factor(int d, double x) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "bound_factor: dimension must be positive");
  if (!(x >= 0) || !std::isfinite(x)) {
    throw Error(ErrorCode::InvalidArgument, "bound_factor: x must be finite and non-negative");
  }
  return std::sqrt((d - 1.0 + x * x) / d);
}

BoundFactors bound_factors(const Dims& dims, const ScalingVector& xs) {
  if (dims.size() != xs.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "bound_factors: " + std::to_string(xs.size()) + " scalings for " +
                    std::to_string(dims.size()) + " parties");
  }
  BoundFactors out;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    out.factors.push_back(bound_factor(dims[k], xs[k]));
    out.product *= out.factors.back();
  }
  return out;
}

CriterionReport family_gap(const CorrelationTensor& canonical, double x, double y,
                           const CriterionOptions& opts) {
  require_bipartite(canonical.party_dims(), "family_gap");
  require_canonical(canonical, "family_gap");
  const ScalingVector xs({x, y});
  const RealMatrix m = canonical.with_scaling(xs).matrix();
  const double rhs = bound_factors(canonical.party_dims(), xs).product;
  return finish(CriterionKind::Family, {x, y}, trace_norm(m), rhs, opts.detection_tolerance);
}

CriterionReport family_gap(const DensityMatrix& rho, double x, double y,
                           const CriterionOptions& opts) {
  require_bipartite(rho.dims(), "family_gap");
  return family_gap(canonical_correlation(rho), x, y, opts);
}

std::pair<double, double> named_point(NamedCriterion name, int dA, int dB) {
  switch (name) {
    case NamedCriterion::DeVicente: return {0.0, 0.0};
    case NamedCriterion::Ccnr: return {1.0, 1.0};
    case NamedCriterion::Fei: return {std::sqrt(2.0 / dA), std::sqrt(2.0 / dB)};
    case NamedCriterion::Esic: return {std::sqrt(dA + 1.0), std::sqrt(dB + 1.0)};
  }
  return {1.0, 1.0};
}

CriterionReport named_criterion(const DensityMatrix& rho, NamedCriterion name,
                                const CriterionOptions& opts) {
  require_bipartite(rho.dims(), "named_criterion");
  const auto [x, y] = named_point(name, rho.dims()[0], rho.dims()[1]);
  CriterionReport r = family_gap(rho, x, y, opts);
  r.criterion = kind_of(name);
  return r;
}

EsicResult esic_direct(const DensityMatrix& rho, const SicPovm& sic_a, const SicPovm& sic_b,
                       SicSign sign, const CriterionOptions& opts) {
  require_bipartite(rho.dims(), "esic_direct");
  const int dA = rho.dims()[0];
  const int dB = rho.dims()[1];
  if (sic_a.dim != dA || sic_b.dim != dB) {
    throw Error(ErrorCode::DimensionMismatch, "esic_direct: SIC dimensions do not match the state");
  }

  // The effects are d^2 Hermitian matrices, so the generic contraction works.
  const OperatorBasis effects_a{dA, sic_a.effects, BasisKind::Custom};
  const OperatorBasis effects_b{dB, sic_b.effects, BasisKind::Custom};
  EsicResult out;
  out.overlaps = correlation_tensor(rho, {effects_a, effects_b}).matrix();

  const double sa = std::sqrt(dA * (dA + 1.0));
  const double sb = std::sqrt(dB * (dB + 1.0));
  const double lhs = trace_norm(out.overlaps);
  out.report = finish(CriterionKind::Esic, {std::sqrt(dA + 1.0), std::sqrt(dB + 1.0)}, lhs,
                      2.0 / (sa * sb), opts.detection_tolerance);
  out.scaled_overlap_norm = sa * sb * lhs;

  // sqrt(d(d+1)) Pi_a = G_a + c I and I = sigma/sqrt(d) sum_b G_b, so the
  // change of basis is 1 + a J with a = sigma c / sqrt(d).
  auto mixing = [sign](int d) {
    const double sigma = sign == SicSign::Minus ? 1.0 : -1.0;
    const double a = sigma * sic_basis_shift(d, sign) / std::sqrt(double(d));
    const int n = d * d;
    return RealMatrix(RealMatrix::Identity(n, n) + a * RealMatrix::Ones(n, n));
  };
  const RealMatrix c =
      correlation_tensor(rho, {sic_basis(sic_a, sign), sic_basis(sic_b, sign)}).matrix();
  const RealMatrix acb = mixing(dA) * c * mixing(dB);
  out.acb_norm = trace_norm(acb);
  out.acb_residual = (sa * sb * out.overlaps - acb).cwiseAbs().maxCoeff();

  const auto [x, y] = named_point(NamedCriterion::Esic, dA, dB);
  out.canonical_norm = family_gap(rho, x, y, opts).lhs;
  return out;
}

CriterionReport ppt_check(const DensityMatrix& rho, int subsystem, const CriterionOptions& opts) {
  const int n = rho.parties();
  const int sub = subsystem < 0 ? n - 1 : subsystem;
  if (sub >= n) {
    throw Error(ErrorCode::InvalidArgument,
                "ppt_check: subsystem " + std::to_string(subsystem) + " out of range");
  }
  CriterionReport r;
  r.criterion = CriterionKind::Ppt;
  r.params = {double(sub)};
  r.lhs = min_eigenvalue(partial_transpose(rho.matrix(), rho.dims(), sub));
  r.rhs = 0;
  r.gap = r.lhs;
  r.detected = r.lhs < -opts.ppt_tolerance;
  return r;
}

XYOptimum optimize_xy(const DensityMatrix& rho, const OptimizerConfig& config) {
  require_bipartite(rho.dims(), "optimize_xy");
  if (config.grid_points < 2 || !(config.grid_min > 0) || !(config.grid_max > config.grid_min)) {
    throw Error(ErrorCode::InvalidArgument, "optimize_xy: bad grid configuration");
  }
  const CorrelationTensor c = canonical_correlation(rho);
  auto gap = [&](double x, double y) { return family_gap(c, x, y).gap; };

  std::vector<double> axis{0.0};
  const double lo = std::log(config.grid_min);
  const double hi = std::log(config.grid_max);
  for (int k = 0; k < config.grid_points; ++k) {
    axis.push_back(std::exp(lo + (hi - lo) * k / (config.grid_points - 1)));
  }

  XYOptimum best{0, 0, std::numeric_limits<double>::infinity()};
  for (double x : axis) {
    for (double y : axis) {
      const double g = gap(x, y);
      if (g < best.gap) best = {x, y, g};
    }
  }
  if (!config.refine) return best;

  // Refine in log space; a zero coordinate starts from the smallest grid value.
  const double u0 = std::log(best.x > 0 ? best.x : config.grid_min);
  const double v0 = std::log(best.y > 0 ? best.y : config.grid_min);
  const auto p = nelder_mead(
      [&](double u, double v) {
        const double x = std::exp(std::min(u, hi));
        const double y = std::exp(std::min(v, hi));
        return gap(x, y);
      },
      u0, v0, 0.5, config.max_refine_iterations);
  if (p[2] < best.gap) {
    best = {std::exp(std::min(p[0], hi)), std::exp(std::min(p[1], hi)), p[2]};
  }
  return best;
}

std::string CriterionSpec::label() const {
  switch (type) {
    case Type::Named: return to_string(name);
    case Type::Point: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "family(%.6g,%.6g)", x, y);
      return buf;
    }
    case Type::Ppt: return "ppt";
    case Type::FilteredDv: return "filtered-dv";
  }
  return "unknown";
}

CriterionEvaluator make_evaluator(const CriterionSpec& spec, const CriterionOptions& opts) {
  switch (spec.type) {
    case CriterionSpec::Type::Named:
      return [spec, opts](const DensityMatrix& rho) {
        return named_criterion(rho, spec.name, opts);
      };
    case CriterionSpec::Type::Point:
      return [spec, opts](const DensityMatrix& rho) {
        return family_gap(rho, spec.x, spec.y, opts);
      };
    case CriterionSpec::Type::Ppt:
      return [opts](const DensityMatrix& rho) { return ppt_check(rho, -1, opts); };
    case CriterionSpec::Type::FilteredDv:
      return [opts](const DensityMatrix& rho) { return filtered_dv_gap(rho, {}, opts); };
  }
  throw Error(ErrorCode::InvalidArgument, "make_evaluator: unknown criterion type");
}

ThresholdResult threshold_scan(const StateFamily& family, const CriterionEvaluator& criterion,
                               const ThresholdOptions& opts) {
  if (!(opts.tolerance > 0)) {
    throw Error(ErrorCode::InvalidArgument, "threshold_scan: tolerance must be positive");
  }
  ThresholdResult out;
  auto detected_at = [&](double p) {
    ++out.evaluations;
    return criterion(family.generator(p)).detected;
  };
  if (detected_at(0.0)) {
    throw Error(ErrorCode::Domain,
                "threshold_scan: '" + family.label + "' is already detected at p = 0");
  }
  if (!detected_at(1.0)) {
    out.detected = false;
    out.p_star = 1.0;
    out.p_lower = 1.0;
    return out;
  }
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > opts.tolerance) {
    const double mid = 0.5 * (lo + hi);
    (detected_at(mid) ? hi : lo) = mid;
  }
  out.detected = true;
  out.p_star = hi;
  out.p_lower = lo;
  return out;
}

CriterionReport multipartite_gap(const CorrelationTensor& canonical, const ScalingVector& xs,
                                 MultipartiteMethod method, const CriterionOptions& opts) {
  require_canonical(canonical, "multipartite_gap");
  if (canonical.parties() < 2) {
    throw Error(ErrorCode::DimensionMismatch, "multipartite_gap: need at least two parties");
  }
  const double rhs = bound_factors(canonical.party_dims(), xs).product;
  const RealTensor t = canonical.with_scaling(xs).entries();
  const bool kf = method == MultipartiteMethod::KyFan;
  const double lhs = kf ? ky_fan_norm(t).value : tensor_nuclear_lower_bound(t).value;
  return finish(kf ? CriterionKind::MultipartiteKyFan : CriterionKind::MultipartiteNuclearLb,
                xs.values(), lhs, rhs, opts.detection_tolerance);
}

CriterionReport multipartite_gap(const DensityMatrix& rho, const ScalingVector& xs,
                                 MultipartiteMethod method, const CriterionOptions& opts) {
  if (xs.size() != static_cast<std::size_t>(rho.parties())) {
    throw Error(ErrorCode::DimensionMismatch,
                "multipartite_gap: " + std::to_string(xs.size()) + " scalings for " +
                    std::to_string(rho.parties()) + " parties");
  }
  return multipartite_gap(canonical_correlation(rho), xs, method, opts);
}

CenteredIdentityReport dv_centered_identity_check(const DensityMatrix& rho,
                                                  const std::vector<double>& xs,
                                                  double bloch_tolerance) {
  require_bipartite(rho.dims(), "dv_centered_identity_check");
  const int dA = rho.dims()[0];
  const int dB = rho.dims()[1];
  const CorrelationTensor c = canonical_correlation(rho);
  const RealMatrix& raw = c.raw().as_matrix();

  // r^A_i = Tr(rho G_i x 1) = sqrt(dB) C_{i0}, likewise for B.
  const double ra = std::sqrt(double(dB)) * raw.col(0).tail(raw.rows() - 1).norm();
  const double rb = std::sqrt(double(dA)) * raw.row(0).tail(raw.cols() - 1).norm();
  CenteredIdentityReport out;
  out.max_bloch_norm = std::max(ra, rb);
  if (out.max_bloch_norm > bloch_tolerance) {
    throw Error(ErrorCode::Domain, "dv_centered_identity_check: local Bloch vector norm " +
                                       std::to_string(out.max_bloch_norm) +
                                       " exceeds tolerance");
  }
  out.equal_dims = dA == dB;
  out.xs = xs;
  const double base = family_gap(c, 0.0, 0.0).lhs;
  for (double x : xs) {
    const CriterionReport r = family_gap(c, x, x);
    out.gaps.push_back(r.gap);
    out.decomposition_residual =
        std::max(out.decomposition_residual,
                 std::abs(r.lhs - x * x / std::sqrt(double(dA) * dB) - base));
  }
  if (!out.gaps.empty()) {
    const auto [mn, mx] = std::minmax_element(out.gaps.begin(), out.gaps.end());
    out.gap_spread = *mx - *mn;
  }
  return out;
}

}  // namespace corrsep
