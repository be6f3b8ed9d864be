#include "corrsep/operator_bases.hpp"

#include <cmath>
#include <numbers>

#include "corrsep/error.hpp"

namespace corrsep {
namespace {

constexpr Complex kI{0.0, 1.0};

// Weyl-Heisenberg covariant fiducial kets (unnormalized is fine; normalized
// below). d=2 points along (1,1,1)/sqrt(3) on the Bloch sphere, d=3 is the
// Hesse-configuration fiducial, d=4 was obtained by numerically solving the
// overlap equations and is good to ~1e-16.
ComplexVector fiducial(int d) {
  ComplexVector v(d);
  switch (d) {
    case 2: {
      const double c = 1.0 / std::sqrt(3.0);
      v << std::sqrt(0.5 * (1.0 + c)),
          std::polar(std::sqrt(0.5 * (1.0 - c)), std::numbers::pi / 4.0);
      break;
    }
    case 3:
      v << 0.0, 1.0, -1.0;
      break;
    case 4:
      v << Complex(0.4857122140912641, 0.0),
          Complex(-0.742695510362896, 0.10644596661905326),
          Complex(0.0, 0.2011885864868659),
          Complex(-0.25698329627163197, 0.3076345531059191);
      break;
    default:
      throw Error(ErrorCode::Unsupported,
                  "sic_povm: no embedded fiducial for dimension " +
                      std::to_string(d) + " (supported: 2, 3, 4)");
  }
  return v.normalized();
}

// X^a Z^b applied to v.
ComplexVector displace(const ComplexVector& v, int a, int b) {
  const int d = static_cast<int>(v.size());
  ComplexVector phased(d);
  for (int j = 0; j < d; ++j) {
    phased(j) = std::polar(1.0, 2.0 * std::numbers::pi * b * j / d) * v(j);
  }
  ComplexVector out(d);
  for (int j = 0; j < d; ++j) out((j + a) % d) = phased(j);
  return out;
}

}  // namespace

std::string to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::Canonical: return "canonical";
    case BasisKind::SicMinus: return "sic_minus";
    case BasisKind::SicPlus: return "sic_plus";
    case BasisKind::Custom: return "custom";
  }
  return "custom";
}

OperatorBasis canonical_basis(int d) {
  if (d < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "canonical_basis: dimension must be >= 2, got " + std::to_string(d));
  }
  OperatorBasis basis;
  basis.dim = d;
  basis.kind = BasisKind::Canonical;
  basis.elements.reserve(static_cast<std::size_t>(d * d));

  basis.elements.push_back(ComplexMatrix::Identity(d, d) / std::sqrt(double(d)));

  const double h = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(d, d);
      m(j, k) = h;
      m(k, j) = h;
      basis.elements.push_back(std::move(m));
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(d, d);
      m(j, k) = -kI * h;
      m(k, j) = kI * h;
      basis.elements.push_back(std::move(m));
    }
  }
  for (int l = 1; l < d; ++l) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(double(l) * (l + 1));
    for (int i = 0; i < l; ++i) m(i, i) = norm;
    m(l, l) = -double(l) * norm;
    basis.elements.push_back(std::move(m));
  }
  return basis;
}

SicPovm sic_povm(int d) {
  const ComplexVector psi = fiducial(d);
  SicPovm sic;
  sic.dim = d;
  sic.vectors.reserve(static_cast<std::size_t>(d * d));
  sic.effects.reserve(static_cast<std::size_t>(d * d));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      ComplexVector v = displace(psi, a, b);
      sic.effects.push_back(v * v.adjoint() / double(d));
      sic.vectors.push_back(std::move(v));
    }
  }
  return sic;
}

double sic_basis_shift(int d, SicSign sign) {
  const double root = std::sqrt(double(d) + 1.0);
  const double numerator = sign == SicSign::Minus ? root - 1.0 : root + 1.0;
  return numerator / std::pow(double(d), 1.5);
}

OperatorBasis sic_basis(int d, SicSign sign) { return sic_basis(sic_povm(d), sign); }

OperatorBasis sic_basis(const SicPovm& sic, SicSign sign) {
  const int d = sic.dim;
  const double scale = std::sqrt(double(d) * (d + 1));
  const double shift = sic_basis_shift(d, sign);
  OperatorBasis basis;
  basis.dim = d;
  basis.kind = sign == SicSign::Minus ? BasisKind::SicMinus : BasisKind::SicPlus;
  basis.elements.reserve(sic.effects.size());
  for (const ComplexMatrix& pi : sic.effects) {
    basis.elements.push_back(scale * pi - shift * ComplexMatrix::Identity(d, d));
  }
  return basis;
}

ComplexMatrix gram_matrix(const OperatorBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.elements.size());
  ComplexMatrix g(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) {
      g(m, k) = (basis.elements[m].adjoint() * basis.elements[k]).trace();
    }
  }
  return g;
}

BasisValidation validate_basis(const OperatorBasis& basis) {
  BasisValidation report;
  const int d = basis.dim;
  if (d < 1) {
    report.message = "dimension must be positive";
    return report;
  }
  if (basis.elements.size() != static_cast<std::size_t>(d * d)) {
    report.message = "expected " + std::to_string(d * d) + " elements, got " +
                     std::to_string(basis.elements.size());
    return report;
  }
  for (const ComplexMatrix& g : basis.elements) {
    if (g.rows() != d || g.cols() != d) {
      report.message = "element is not " + std::to_string(d) + "x" + std::to_string(d);
      return report;
    }
  }
  report.structural_ok = true;
  for (const ComplexMatrix& g : basis.elements) {
    report.hermiticity_defect = std::max(report.hermiticity_defect, hermiticity_defect(g));
  }
  const ComplexMatrix g = gram_matrix(basis);
  const auto n = g.rows();
  report.orthonormality_defect =
      (g - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  report.message = "ok";
  return report;
}

}  // namespace corrsep
