#pragma once

#include <string>
#include <vector>

#include "corrsep/linalg.hpp"

namespace corrsep {

enum class BasisKind { Canonical, SicMinus, SicPlus, Custom };

enum class SicSign { Minus, Plus };

std::string to_string(BasisKind kind);

/// Ordered set of d^2 Hermitian d x d matrices, orthonormal under
/// <X|Y> = Tr(X^dagger Y).
struct OperatorBasis {
  int dim = 0;
  std::vector<ComplexMatrix> elements;
  BasisKind kind = BasisKind::Custom;
};

/// d^2 rank-one effects Pi_i = |psi_i><psi_i| / d summing to the identity.
struct SicPovm {
  int dim = 0;
  std::vector<ComplexVector> vectors;  // unit kets psi_i
  std::vector<ComplexMatrix> effects;
};

/// Generalized Gell-Mann basis, normalized. Element 0 is identity/sqrt(d),
/// followed by the symmetric off-diagonal elements, the antisymmetric
/// off-diagonal elements (both over pairs j<k in lexicographic order), and
/// the d-1 traceless diagonal elements. Throws InvalidArgument for d < 2.
OperatorBasis canonical_basis(int d);

/// Weyl-Heisenberg covariant SIC-POVM built from an embedded fiducial.
/// Supported for d in {2, 3, 4}; other dimensions raise Unsupported.
SicPovm sic_povm(int d);

/// Orthonormal basis G_a = sqrt(d(d+1)) Pi_a - c I built from a SIC, with
/// c = (sqrt(d+1) - 1)/d^{3/2} for Minus and (sqrt(d+1) + 1)/d^{3/2} for Plus.
/// Minus gives Tr G_a = +1/sqrt(d) and sum_a G_a = +sqrt(d) I; Plus flips
/// both signs.
OperatorBasis sic_basis(int d, SicSign sign);

/// Same construction from an explicit SIC-POVM.
OperatorBasis sic_basis(const SicPovm& sic, SicSign sign);

/// The shift added to sqrt(d(d+1)) Pi_a in sic_basis.
double sic_basis_shift(int d, SicSign sign);

struct BasisValidation {
  bool structural_ok = false;      // d >= 1, d^2 square elements of size d
  double orthonormality_defect = 0;  // max |<G_m|G_n> - delta_mn|
  double hermiticity_defect = 0;     // max over elements of max |G - G^dagger|
  std::string message;
};

BasisValidation validate_basis(const OperatorBasis& basis);

/// Gram matrix <G_m|G_n>.
ComplexMatrix gram_matrix(const OperatorBasis& basis);

}  // namespace corrsep
