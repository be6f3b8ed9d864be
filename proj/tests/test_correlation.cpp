#include <doctest.h>

#include <cmath>

#include "corrsep/correlation.hpp"
#include "corrsep/error.hpp"
#include "oracles.hpp"

using namespace corrsep;

TEST_CASE("Bell correlation matrix is diag(1/2, 1/2, -1/2, 1/2)") {
  RealMatrix expected = RealMatrix::Zero(4, 4);
  expected.diagonal() << 0.5, 0.5, -0.5, 0.5;
  CHECK((canonical_correlation(bell_state()).matrix() - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("maximally mixed state has a single entry 1/sqrt(dA dB)") {
  const RealMatrix c = canonical_correlation(maximally_mixed({2, 3})).matrix();
  CHECK(std::abs(c(0, 0) - 1.0 / std::sqrt(6.0)) < 1e-15);
  CHECK(c.cwiseAbs().sum() - c(0, 0) < 1e-15);
}

TEST_CASE("correlation tensor reconstructs the state") {
  const Dims dims{2, 3, 2};
  const DensityMatrix rho = random_separable_state(dims, 3, 21);
  const CorrelationTensor c = canonical_correlation(rho);
  CHECK(c.entry_dims() == Dims{4, 9, 4});
  std::vector<OperatorBasis> bases{canonical_basis(2), canonical_basis(3), canonical_basis(2)};
  ComplexMatrix back = ComplexMatrix::Zero(12, 12);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 9; ++b)
      for (int g = 0; g < 4; ++g) {
        const std::array<int, 3> idx{a, b, g};
        const std::vector<ComplexMatrix> f{bases[0].elements[a], bases[1].elements[b],
                                           bases[2].elements[g]};
        back += c.raw().at(idx) * kron(f);
      }
  CHECK(oracle::max_abs(back - rho.matrix()) < 1e-14);
}

TEST_CASE("correlation entries are direct traces") {
  const DensityMatrix rho = random_pure_state({3, 2}, 5);
  const OperatorBasis ga = canonical_basis(3);
  const OperatorBasis gb = canonical_basis(2);
  const RealMatrix c = canonical_correlation(rho).matrix();
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 4; ++b) {
      const Complex direct = (rho.matrix() * kron(ga.elements[a], gb.elements[b])).trace();
      CHECK(std::abs(c(a, b) - direct.real()) < 1e-14);
      CHECK(std::abs(direct.imag()) < 1e-14);
    }
}

TEST_CASE("Bloch vector reconstructs a single-party state") {
  const DensityMatrix rho = random_separable_state({3}, 2, 8);
  const OperatorBasis g = canonical_basis(3);
  const BlochVector v = bloch_vector(rho, g);
  CHECK(v.r.size() == 8);
  CHECK(oracle::max_abs(v.reconstruct(g) - rho.matrix()) < 1e-14);
  CHECK_THROWS_AS(bloch_vector(rho, sic_basis(3, SicSign::Minus)), Error);
}

TEST_CASE("scaling multiplies the identity slices only") {
  const CorrelationTensor c = canonical_correlation(random_pure_state({2, 2, 2}, 3));
  const CorrelationTensor s = c.scaled(ScalingVector({2.0, 3.0, 5.0}));
  const RealTensor e = s.entries();
  for (std::size_t f = 0; f < e.size(); ++f) {
    std::array<int, 3> idx{};
    e.multi_index(f, idx);
    double factor = 1;
    if (idx[0] == 0) factor *= 2;
    if (idx[1] == 0) factor *= 3;
    if (idx[2] == 0) factor *= 5;
    CHECK(std::abs(e[f] - factor * c.raw()[f]) < 1e-15);
  }
  CHECK(s.scaled(ScalingVector({0.5, 1.0, 1.0})).scaling().values() ==
        std::vector<double>{1.0, 3.0, 5.0});
  CHECK_THROWS_AS(ScalingVector({1.0, -1.0}), Error);
  CHECK_THROWS_AS(scale(c, ScalingVector({1.0, 1.0})), Error);
}

TEST_CASE("GHZ(3) unfoldings are 4 x 16") {
  const CorrelationTensor c = canonical_correlation(ghz_state(3));
  for (int mode = 0; mode < 3; ++mode) {
    const RealMatrix u = unfold(c.raw(), mode);
    CHECK(u.rows() == 4);
    CHECK(u.cols() == 16);
  }
}

TEST_CASE("correlation_tensor checks basis count and sizes") {
  const DensityMatrix rho = bell_state();
  CHECK_THROWS_AS(correlation_tensor(rho, {canonical_basis(2)}), Error);
  CHECK_THROWS_AS(correlation_tensor(rho, {canonical_basis(2), canonical_basis(3)}), Error);
}
