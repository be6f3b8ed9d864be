#pragma once

#include "corrsep/criteria.hpp"
#include "corrsep/states.hpp"

namespace corrsep {

/// W = sum_ab w_ab G^A_a x G^B_b over canonical bases, with
///   w = D_x O D_y + sqrt((dA-1+x^2)(dB-1+y^2)) e_00 e_00^T.
struct Witness {
  int dA = 0;
  int dB = 0;
  double x = 0;
  double y = 0;
  RealMatrix coeffs;     // dA^2 x dB^2
  RealMatrix isometry;   // O, dA^2 x dB^2
  ComplexMatrix op;      // dA dB x dA dB
};

/// O = -U V^T from the SVD of D_x C^can D_y, so <O|D_x C D_y> = -||D_x C D_y||_tr
/// and Tr(W rho) equals family_gap(rho, x, y).gap.
Witness build_witness(const DensityMatrix& rho, double x, double y);

/// Assembles a witness from explicit coefficients and isometry; the operator
/// is rebuilt from the coefficients.
Witness witness_from_coefficients(int dA, int dB, double x, double y, RealMatrix coeffs,
                                  RealMatrix isometry);

/// Tr(W sigma). Throws DimensionMismatch on size mismatch.
double witness_expectation(const Witness& w, const DensityMatrix& sigma);

/// max |O^T O - 1| or |O O^T - 1|, whichever side is square-sized by the
/// smaller dimension.
double isometry_defect(const Witness& w);

/// Coefficients of 1_A x G^B_b (row) and G^A_a x 1_B (column):
/// w_{0b}/sqrt(dA) and w_{a0}/sqrt(dB).
struct IdentityBlocks {
  RealVector identity_a;  // length dB^2, entry 0 is the 1 x 1 coefficient
  RealVector identity_b;  // length dA^2
};

IdentityBlocks identity_blocks(const Witness& w);

/// Max deviation of the stored coefficients from the block rules
///   w_00 = sqrt((dA-1+x^2)(dB-1+y^2)) + xy O_00,
///   coefficient of 1 x G_b = (x/sqrt(dA)) O_0b,
///   coefficient of G_a x 1 = (y/sqrt(dB)) O_a0,
///   w_ab = O_ab for a, b > 0.
double block_rule_defect(const Witness& w);

}  // namespace corrsep
