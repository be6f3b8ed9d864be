#pragma once

#include "corrsep/criteria.hpp"
#include "corrsep/states.hpp"

namespace corrsep {

struct FilterResult {
  ComplexMatrix A;  // acts on party 0
  ComplexMatrix B;  // acts on party 1
  DensityMatrix filtered;
  double residual = 0;  // max-abs deviation of either marginal from identity/d
  int iterations = 0;
  bool converged = false;
};

struct FilterOptions {
  double tolerance = 1e-10;
  int max_iterations = 10000;
  double eigenvalue_floor = 1e-14;
};

/// Brings a bipartite state to maximally mixed marginals by alternately
/// whitening each side: rho <- (rhoA^{-1/2}/sqrt(dA) x 1) rho (...)^dagger,
/// then the same on B. A and B accumulate the applied filters.
///
/// Throws RankDeficient naming the side whose marginal is singular. When
/// max_iterations is hit, or the filters degenerate because no normal form
/// exists, the last well-conditioned iterate is returned with
/// converged = false. Throws NotConverged if even that iterate is not a valid
/// density matrix.
FilterResult local_filter_normal_form(const DensityMatrix& rho, const FilterOptions& opts = {});

/// (A x B) rho (A x B)^dagger / trace.
DensityMatrix apply_local_filter(const DensityMatrix& rho, const ComplexMatrix& A,
                                 const ComplexMatrix& B,
                                 const StateTolerances& tol = {});

/// Largest max-abs deviation of the two marginals from identity/d.
double marginal_residual(const DensityMatrix& rho);

/// Filters to the normal form, then evaluates the (0,0) family member.
/// Throws NotConverged if filtering does not converge.
CriterionReport filtered_dv_gap(const DensityMatrix& rho, const FilterOptions& filter = {},
                                const CriterionOptions& opts = {});

}  // namespace corrsep
