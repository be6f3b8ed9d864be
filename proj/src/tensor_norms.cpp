#include "corrsep/tensor_norms.hpp"

#include <cmath>
#include <random>

#include "corrsep/error.hpp"

namespace corrsep {
namespace {

void require_order(const RealTensor& t, int min_order, const char* what) {
  if (t.order() < min_order) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": tensor order must be >= " + std::to_string(min_order));
  }
}

// unfold(T, n) contracted with every factor except the n-th.
RealVector contract_all_but(const RealTensor& t, const std::vector<RealVector>& x, int n) {
  RealVector others = RealVector::Ones(1);
  for (int k = 0; k < t.order(); ++k) {
    if (k != n) others = kron(others, x[static_cast<std::size_t>(k)]);
  }
  return unfold(t, n) * others;
}

double power_iterate(const RealTensor& t, std::vector<RealVector>& x,
                     const PowerIterationOptions& opts) {
  double value = 0.0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    double latest = 0.0;
    for (int n = 0; n < t.order(); ++n) {
      RealVector v = contract_all_but(t, x, n);
      const double norm = v.norm();
      if (norm == 0.0) return 0.0;
      latest = norm;
      x[static_cast<std::size_t>(n)] = v / norm;
    }
    if (std::abs(latest - value) <= opts.tolerance * std::max(1.0, latest)) {
      value = latest;
      break;
    }
    value = latest;
  }
  // Recompute T(x1, ..., xN) exactly for the final factors.
  return x.back().dot(contract_all_but(t, x, t.order() - 1));
}

}  // namespace

KyFanNorm ky_fan_norm(const RealTensor& t) {
  require_order(t, 1, "ky_fan_norm");
  KyFanNorm best{-1.0, 0};
  for (int n = 0; n < t.order(); ++n) {
    const double value = trace_norm(unfold(t, n));
    if (value > best.value) best = {value, n};
  }
  return best;
}

double tensor_spectral_upper_bound(const RealTensor& m) {
  require_order(m, 1, "tensor_spectral_upper_bound");
  double best = std::numeric_limits<double>::infinity();
  for (int n = 0; n < m.order(); ++n) best = std::min(best, spectral_norm(unfold(m, n)));
  return best;
}

RankOneTerm best_rank_one(const RealTensor& t, const PowerIterationOptions& opts) {
  require_order(t, 1, "best_rank_one");
  const auto order = static_cast<std::size_t>(t.order());
  RankOneTerm best;
  best.value = -1.0;

  auto consider = [&](std::vector<RealVector> x) {
    const double value = power_iterate(t, x, opts);
    if (std::abs(value) > std::abs(best.value) || best.value < 0.0) {
      best.factors = std::move(x);
      best.value = value;
    }
  };

  std::vector<RealVector> start(order);
  for (std::size_t k = 0; k < order; ++k) {
    const RealSvdResult s = svd(unfold(t, static_cast<int>(k)));
    start[k] = s.U.col(0);
  }
  consider(start);

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int r = 0; r < opts.restarts; ++r) {
    std::vector<RealVector> x(order);
    for (std::size_t k = 0; k < order; ++k) {
      x[k].resize(t.dims()[k]);
      for (Eigen::Index i = 0; i < x[k].size(); ++i) x[k](i) = normal(rng);
      x[k].normalize();
    }
    consider(std::move(x));
  }
  if (best.value < 0.0) {
    best.value = std::abs(best.value);
    best.factors[0] = -best.factors[0];
  }
  return best;
}

NuclearLowerBound tensor_nuclear_lower_bound(const RealTensor& t,
                                             const NuclearBoundOptions& opts) {
  require_order(t, 2, "tensor_nuclear_lower_bound");
  NuclearLowerBound out;
  out.ky_fan = ky_fan_norm(t).value;
  out.value = out.ky_fan;

  auto certify = [&](const RealTensor& m) {
    const double upper = tensor_spectral_upper_bound(m);
    if (upper > 0.0) out.value = std::max(out.value, std::abs(m.inner(t)) / upper);
  };

  for (int n = 0; n < t.order(); ++n) {
    const RealSvdResult s = svd(unfold(t, n));
    const Eigen::Index rank = numerical_rank(s.s);
    if (rank == 0) continue;
    const RealMatrix isometry = s.U.leftCols(rank) * s.V.leftCols(rank).transpose();
    certify(refold(isometry, t.dims(), n));
  }
  certify(t);

  const RankOneTerm term = best_rank_one(t, opts.power);
  out.spectral_lower = std::abs(term.value);
  out.value = std::max(out.value, out.spectral_lower);
  return out;
}

}  // namespace corrsep
