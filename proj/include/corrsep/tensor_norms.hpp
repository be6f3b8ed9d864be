#pragma once

#include <cstdint>

#include "corrsep/linalg.hpp"

namespace corrsep {

struct KyFanNorm {
  double value = 0;
  int mode = 0;  // smallest mode index attaining the maximum
};

/// max_n ||unfold(T, n)||_tr
KyFanNorm ky_fan_norm(const RealTensor& t);

/// min_n ||unfold(M, n)||_inf. Every unit rank-one tensor unfolds to a
/// unit-spectral-norm matrix, so this bounds the tensor spectral norm from
/// above.
double tensor_spectral_upper_bound(const RealTensor& m);

struct RankOneTerm {
  std::vector<RealVector> factors;  // unit vectors, one per mode
  double value = 0;                 // T(x1, ..., xN)
};

struct PowerIterationOptions {
  int restarts = 8;
  int max_iterations = 500;
  double tolerance = 1e-13;
  std::uint64_t seed = 0x5eed;
};

/// Alternating (higher-order) power iteration for the best rank-one
/// approximation. The first start uses leading singular vectors of the
/// unfoldings; the rest are seeded random starts. Returns the best term.
RankOneTerm best_rank_one(const RealTensor& t, const PowerIterationOptions& opts = {});

struct NuclearBoundOptions {
  PowerIterationOptions power;
};

struct NuclearLowerBound {
  double value = 0;
  double ky_fan = 0;  // unfolding part (a) of the bound
  double spectral_lower = 0;  // |T(x1..xN)| of the best rank-one term
};

/// Certified lower bound on the tensor trace (nuclear) norm
///   sup_M |<M|T>| / ||M||_inf
/// taking the max over certificates: every unfolding's U V^T refolded, T
/// itself, and the best rank-one term, each divided by
/// tensor_spectral_upper_bound. For order 2 this is the exact nuclear norm.
NuclearLowerBound tensor_nuclear_lower_bound(const RealTensor& t,
                                             const NuclearBoundOptions& opts = {});

}  // namespace corrsep
