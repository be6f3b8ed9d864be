#include "corrsep/filtering.hpp"

#include "corrsep/error.hpp"

namespace corrsep {
namespace {

void require_bipartite(const DensityMatrix& rho, const char* what) {
  if (rho.parties() != 2) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": state is not bipartite");
  }
}

double deviation_from_mixed(const ComplexMatrix& marginal) {
  const auto d = marginal.rows();
  return (marginal - ComplexMatrix::Identity(d, d) / double(d)).cwiseAbs().maxCoeff();
}

ComplexMatrix normalized_conjugation(const ComplexMatrix& rho, const ComplexMatrix& k) {
  ComplexMatrix out = k * rho * k.adjoint();
  out /= out.trace().real();
  return 0.5 * (out + out.adjoint());
}

ComplexMatrix whitening(const ComplexMatrix& marginal, double floor, const char* side) {
  try {
    return inverse_sqrt_psd(marginal, floor) / std::sqrt(double(marginal.rows()));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RankDeficient) throw;
    throw Error(ErrorCode::RankDeficient,
                std::string("local_filter_normal_form: marginal of party ") + side +
                    " is rank deficient");
  }
}

double condition_number(const ComplexMatrix& m) {
  const RealVector s = singular_values(m);
  return s(0) / s(s.size() - 1);
}

// Product of the two filters' condition numbers beyond which the iteration
// is treated as divergent.
constexpr double kMaxFilterCondition = 1e12;

const StateTolerances kFilteredTolerances{1e-9, 1e-9, -1e-9};

}  // namespace

double marginal_residual(const DensityMatrix& rho) {
  require_bipartite(rho, "marginal_residual");
  const ComplexMatrix a = partial_trace(rho.matrix(), rho.dims(), {0});
  const ComplexMatrix b = partial_trace(rho.matrix(), rho.dims(), {1});
  return std::max(deviation_from_mixed(a), deviation_from_mixed(b));
}

DensityMatrix apply_local_filter(const DensityMatrix& rho, const ComplexMatrix& A,
                                 const ComplexMatrix& B, const StateTolerances& tol) {
  require_bipartite(rho, "apply_local_filter");
  const Dims& d = rho.dims();
  if (A.rows() != d[0] || A.cols() != d[0] || B.rows() != d[1] || B.cols() != d[1]) {
    throw Error(ErrorCode::DimensionMismatch, "apply_local_filter: filter sizes do not match");
  }
  return DensityMatrix(d, normalized_conjugation(rho.matrix(), kron(A, B)), tol);
}

FilterResult local_filter_normal_form(const DensityMatrix& rho, const FilterOptions& opts) {
  require_bipartite(rho, "local_filter_normal_form");
  const int dA = rho.dims()[0];
  const int dB = rho.dims()[1];
  const ComplexMatrix idA = ComplexMatrix::Identity(dA, dA);
  const ComplexMatrix idB = ComplexMatrix::Identity(dB, dB);

  ComplexMatrix A = idA;
  ComplexMatrix B = idB;
  ComplexMatrix current = rho.matrix();

  auto residual_of = [&](const ComplexMatrix& m) {
    return std::max(deviation_from_mixed(partial_trace(m, rho.dims(), {0})),
                    deviation_from_mixed(partial_trace(m, rho.dims(), {1})));
  };

  // Up-front rank check so the error names the deficient side.
  whitening(partial_trace(current, rho.dims(), {0}), opts.eigenvalue_floor, "A");
  whitening(partial_trace(current, rho.dims(), {1}), opts.eigenvalue_floor, "B");

  double residual = residual_of(current);
  int iterations = 0;
  bool diverged = false;
  while (residual > opts.tolerance && iterations < opts.max_iterations) {
    // When no normal form exists the filters degenerate; stop before the
    // iterate loses precision and keep the last well-conditioned one.
    const ComplexMatrix prev = current;
    const ComplexMatrix prev_a = A;
    const ComplexMatrix prev_b = B;
    try {
      const ComplexMatrix a =
          whitening(partial_trace(current, rho.dims(), {0}), opts.eigenvalue_floor, "A");
      current = normalized_conjugation(current, kron(a, idB));
      A = a * A;

      const ComplexMatrix b =
          whitening(partial_trace(current, rho.dims(), {1}), opts.eigenvalue_floor, "B");
      current = normalized_conjugation(current, kron(idA, b));
      B = b * B;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RankDeficient) throw;
      diverged = true;
    }
    if (!diverged && (condition_number(A) * condition_number(B) > kMaxFilterCondition ||
                      min_eigenvalue(current) < kFilteredTolerances.min_eigenvalue)) {
      diverged = true;
    }
    if (diverged) {
      current = prev;
      A = prev_a;
      B = prev_b;
      break;
    }
    ++iterations;
    residual = residual_of(current);
  }

  const bool converged = !diverged && residual <= opts.tolerance;
  const std::string problem = density_matrix_violation(rho.dims(), current, kFilteredTolerances);
  if (!problem.empty()) {
    throw Error(ErrorCode::NotConverged,
                "local_filter_normal_form: filtered state lost validity after " +
                    std::to_string(iterations) + " iterations (" + problem + ")");
  }
  return FilterResult{A, B, DensityMatrix(rho.dims(), current, kFilteredTolerances), residual,
                      iterations, converged};
}

CriterionReport filtered_dv_gap(const DensityMatrix& rho, const FilterOptions& filter,
                                const CriterionOptions& opts) {
  const FilterResult result = local_filter_normal_form(rho, filter);
  if (!result.converged) {
    throw Error(ErrorCode::NotConverged,
                "filtered_dv_gap: local filtering did not converge after " +
                    std::to_string(result.iterations) + " iterations (residual " +
                    std::to_string(result.residual) + ")");
  }
  CriterionReport report = family_gap(result.filtered, 0.0, 0.0, opts);
  report.criterion = CriterionKind::FilteredDv;
  return report;
}

}  // namespace corrsep
