#include "corrsep/witnesses.hpp"

#include <cmath>

#include "corrsep/error.hpp"

namespace corrsep {
namespace {

RealMatrix scaling_diag(int d, double x) {
  RealMatrix m = RealMatrix::Identity(d * d, d * d);
  m(0, 0) = x;
  return m;
}

double identity_weight(int dA, int dB, double x, double y) {
  return std::sqrt((dA - 1.0 + x * x) * (dB - 1.0 + y * y));
}

}  // namespace

Witness witness_from_coefficients(int dA, int dB, double x, double y, RealMatrix coeffs,
                                  RealMatrix isometry) {
  if (coeffs.rows() != dA * dA || coeffs.cols() != dB * dB || isometry.rows() != coeffs.rows() ||
      isometry.cols() != coeffs.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "witness: coefficient shapes do not match dims");
  }
  if (!(x >= 0) || !(y >= 0)) {
    throw Error(ErrorCode::InvalidArgument, "witness: x and y must be non-negative");
  }
  const OperatorBasis ga = canonical_basis(dA);
  const OperatorBasis gb = canonical_basis(dB);
  ComplexMatrix op = ComplexMatrix::Zero(dA * dB, dA * dB);
  for (int a = 0; a < dA * dA; ++a) {
    for (int b = 0; b < dB * dB; ++b) {
      if (coeffs(a, b) != 0.0) op += coeffs(a, b) * kron(ga.elements[a], gb.elements[b]);
    }
  }
  op = 0.5 * (op + op.adjoint()).eval();
  return Witness{dA, dB, x, y, std::move(coeffs), std::move(isometry), std::move(op)};
}

Witness build_witness(const DensityMatrix& rho, double x, double y) {
  if (rho.parties() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "build_witness: state is not bipartite");
  }
  const int dA = rho.dims()[0];
  const int dB = rho.dims()[1];
  const RealMatrix m =
      canonical_correlation(rho).with_scaling(ScalingVector({x, y})).matrix();
  const RealSvdResult f = svd(m);
  RealMatrix o = -f.U * f.V.transpose();
  RealMatrix w = scaling_diag(dA, x) * o * scaling_diag(dB, y);
  w(0, 0) += identity_weight(dA, dB, x, y);
  return witness_from_coefficients(dA, dB, x, y, std::move(w), std::move(o));
}

double witness_expectation(const Witness& w, const DensityMatrix& sigma) {
  if (sigma.parties() != 2 || sigma.dims()[0] != w.dA || sigma.dims()[1] != w.dB) {
    throw Error(ErrorCode::DimensionMismatch, "witness_expectation: state dims do not match");
  }
  return (w.op * sigma.matrix()).trace().real();
}

double isometry_defect(const Witness& w) {
  const RealMatrix& o = w.isometry;
  const RealMatrix g = o.rows() >= o.cols() ? RealMatrix(o.transpose() * o)
                                            : RealMatrix(o * o.transpose());
  return (g - RealMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

IdentityBlocks identity_blocks(const Witness& w) {
  return {w.coeffs.row(0).transpose() / std::sqrt(double(w.dA)),
          w.coeffs.col(0) / std::sqrt(double(w.dB))};
}

double block_rule_defect(const Witness& w) {
  const RealMatrix& o = w.isometry;
  const IdentityBlocks blocks = identity_blocks(w);
  double defect = std::abs(w.coeffs(0, 0) - identity_weight(w.dA, w.dB, w.x, w.y) -
                           w.x * w.y * o(0, 0));
  for (Eigen::Index b = 1; b < o.cols(); ++b) {
    defect = std::max(defect, std::abs(blocks.identity_a(b) -
                                       w.x / std::sqrt(double(w.dA)) * o(0, b)));
  }
  for (Eigen::Index a = 1; a < o.rows(); ++a) {
    defect = std::max(defect, std::abs(blocks.identity_b(a) -
                                       w.y / std::sqrt(double(w.dB)) * o(a, 0)));
  }
  if (o.rows() > 1 && o.cols() > 1) {
    defect = std::max(defect, (w.coeffs.bottomRightCorner(o.rows() - 1, o.cols() - 1) -
                               o.bottomRightCorner(o.rows() - 1, o.cols() - 1))
                                  .cwiseAbs()
                                  .maxCoeff());
  }
  return defect;
}

}  // namespace corrsep
