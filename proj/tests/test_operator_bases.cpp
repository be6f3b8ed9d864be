#include <doctest.h>

#include <cmath>

#include "corrsep/error.hpp"
#include "corrsep/operator_bases.hpp"
#include "oracles.hpp"

using namespace corrsep;

TEST_CASE("canonical basis is orthonormal and Hermitian") {
  for (int d = 2; d <= 6; ++d) {
    const OperatorBasis b = canonical_basis(d);
    CHECK(b.elements.size() == static_cast<std::size_t>(d * d));
    const BasisValidation v = validate_basis(b);
    CHECK(v.structural_ok);
    CHECK(v.orthonormality_defect < 1e-14);
    CHECK(v.hermiticity_defect == 0.0);
    CHECK(oracle::max_abs(b.elements[0] - ComplexMatrix::Identity(d, d) / std::sqrt(double(d))) <
          1e-15);
    for (std::size_t k = 1; k < b.elements.size(); ++k) {
      CHECK(std::abs(b.elements[k].trace()) < 1e-15);
    }
  }
}

TEST_CASE("canonical qubit basis is the normalized Pauli triple") {
  const OperatorBasis b = canonical_basis(2);
  ComplexMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(oracle::max_abs(b.elements[1] - h * sx) < 1e-15);
  CHECK(oracle::max_abs(b.elements[2] - h * sy) < 1e-15);
  CHECK(oracle::max_abs(b.elements[3] - h * sz) < 1e-15);
}

TEST_CASE("canonical basis rejects d < 2") {
  CHECK_THROWS_AS(canonical_basis(1), Error);
  CHECK_THROWS_AS(canonical_basis(0), Error);
}

TEST_CASE("SIC effects have the symmetric overlap structure") {
  for (int d = 2; d <= 4; ++d) {
    const SicPovm sic = sic_povm(d);
    REQUIRE(sic.effects.size() == static_cast<std::size_t>(d * d));
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t a = 0; a < sic.effects.size(); ++a) {
      sum += sic.effects[a];
      CHECK(std::abs(sic.vectors[a].norm() - 1.0) < 1e-14);
      for (std::size_t b = 0; b < sic.effects.size(); ++b) {
        // |<psi_a|psi_b>|^2 = 1/(d+1) off the diagonal.
        const double overlap = std::norm(sic.vectors[a].dot(sic.vectors[b]));
        const double expected = a == b ? 1.0 : 1.0 / (d + 1.0);
        CHECK(std::abs(overlap - expected) < 1e-13);
      }
    }
    CHECK(oracle::max_abs(sum - ComplexMatrix::Identity(d, d)) < 1e-13);
  }
}

TEST_CASE("SIC is unavailable outside the embedded dimensions") {
  try {
    sic_povm(5);
    FAIL("expected Unsupported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsupported);
  }
}

TEST_CASE("SIC-derived bases are orthonormal with signed traces") {
  for (int d = 2; d <= 4; ++d) {
    for (SicSign sign : {SicSign::Minus, SicSign::Plus}) {
      const OperatorBasis b = sic_basis(d, sign);
      const BasisValidation v = validate_basis(b);
      CHECK(v.structural_ok);
      CHECK(v.orthonormality_defect < 1e-12);
      CHECK(v.hermiticity_defect < 1e-14);
      const double sigma = sign == SicSign::Minus ? 1.0 : -1.0;
      ComplexMatrix sum = ComplexMatrix::Zero(d, d);
      for (const ComplexMatrix& g : b.elements) {
        CHECK(std::abs(g.trace().real() - sigma / std::sqrt(double(d))) < 1e-13);
        sum += g;
      }
      CHECK(oracle::max_abs(sum - sigma * std::sqrt(double(d)) *
                                      ComplexMatrix::Identity(d, d)) < 1e-12);
    }
  }
}

TEST_CASE("validation reports structural problems") {
  OperatorBasis b = canonical_basis(3);
  b.elements.pop_back();
  const BasisValidation v = validate_basis(b);
  CHECK_FALSE(v.structural_ok);
  CHECK(v.message.find("expected 9") != std::string::npos);

  OperatorBasis skew = canonical_basis(2);
  skew.elements[1](0, 1) = 2.0;
  const BasisValidation w = validate_basis(skew);
  CHECK(w.structural_ok);
  CHECK(w.hermiticity_defect > 0.5);
  CHECK(w.orthonormality_defect > 0.5);
}
