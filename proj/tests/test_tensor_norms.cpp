#include <doctest.h>

#include <cmath>
#include <random>

#include "corrsep/tensor_norms.hpp"
#include "oracles.hpp"

using namespace corrsep;

namespace {

RealTensor random_tensor(const Dims& dims, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> n;
  RealTensor t(dims);
  for (std::size_t f = 0; f < t.size(); ++f) t[f] = n(gen);
  return t;
}

RealTensor outer(const RealVector& a, const RealVector& b, const RealVector& c) {
  RealTensor t({int(a.size()), int(b.size()), int(c.size())});
  std::size_t f = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = 0; j < b.size(); ++j)
      for (Eigen::Index k = 0; k < c.size(); ++k) t[f++] = a(i) * b(j) * c(k);
  return t;
}

}  // namespace

TEST_CASE("Ky-Fan norm of a matrix is its trace norm") {
  RealTensor t = random_tensor({5, 3}, 1);
  CHECK(std::abs(ky_fan_norm(t).value - oracle::trace_norm_via_dilation(t.as_matrix())) < 1e-12);
}

TEST_CASE("Ky-Fan norm picks the largest unfolding") {
  const RealTensor t = random_tensor({2, 3, 4}, 2);
  const KyFanNorm kf = ky_fan_norm(t);
  double best = 0;
  for (int m = 0; m < 3; ++m) best = std::max(best, trace_norm(unfold(t, m)));
  CHECK(kf.value == best);
  CHECK(trace_norm(unfold(t, kf.mode)) == best);
}

TEST_CASE("rank-one tensors: every norm is the product of factor norms") {
  RealVector a(3), b(2), c(4);
  a << 1, 2, -1;
  b << 0.5, 3;
  c << 1, 0, 1, 1;
  const RealTensor t = outer(a, b, c);
  const double expected = a.norm() * b.norm() * c.norm();
  CHECK(std::abs(ky_fan_norm(t).value - expected) < 1e-12);
  CHECK(std::abs(tensor_spectral_upper_bound(t) - expected) < 1e-12);
  CHECK(std::abs(best_rank_one(t).value - expected) < 1e-12);
  CHECK(std::abs(tensor_nuclear_lower_bound(t).value - expected) < 1e-12);
}

TEST_CASE("best rank-one value is bracketed by the spectral upper bound") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const RealTensor t = random_tensor({3, 3, 3}, 100 + seed);
    const RankOneTerm r = best_rank_one(t);
    for (const RealVector& f : r.factors) CHECK(std::abs(f.norm() - 1.0) < 1e-12);
    CHECK(std::abs(r.value) <= tensor_spectral_upper_bound(t) + 1e-12);
    // Contract the returned factors directly.
    double direct = 0;
    std::size_t f = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          direct += t[f++] * r.factors[0](i) * r.factors[1](j) * r.factors[2](k);
    CHECK(std::abs(direct - r.value) < 1e-12);
  }
}

TEST_CASE("nuclear lower bound dominates Ky-Fan and is below the l1 norm") {
  for (unsigned seed = 0; seed < 20; ++seed) {
    const RealTensor t = random_tensor({2, 3, 4}, 200 + seed);
    const NuclearLowerBound nb = tensor_nuclear_lower_bound(t);
    CHECK(nb.value >= nb.ky_fan);
    CHECK(nb.ky_fan == ky_fan_norm(t).value);
    // Sum of |entries| is the nuclear norm of the standard-basis expansion.
    double l1 = 0;
    for (std::size_t f = 0; f < t.size(); ++f) l1 += std::abs(t[f]);
    CHECK(nb.value <= l1 + 1e-12);
  }
}

TEST_CASE("nuclear lower bound is exact for matrices") {
  const RealTensor t = random_tensor({4, 6}, 7);
  CHECK(std::abs(tensor_nuclear_lower_bound(t).value - trace_norm(t.as_matrix())) < 1e-12);
}
