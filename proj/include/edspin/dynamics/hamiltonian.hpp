#pragma once

#include <Eigen/Sparse>

#include "edspin/common/units.hpp"
#include "edspin/dynamics/fields.hpp"
#include "edspin/field/spinor_field.hpp"

namespace edspin::dynamics {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

enum class HamiltonianPart {
  // H0 = (1/2m)(hbar/i d - q/c A)^2 - (hbar q / 2mc) B.sigma.
  kFree,
  // H0 + V + kappa_m B.sigma + kappa_e E.sigma.
  kFull,
};

// Coefficient b of the pointwise 2x2 term b.sigma: (kappa_m - hbar q/2mc) B + kappa_e E, with
// the kappa terms dropped for kFree.
std::vector<Vec3> spin_coupling(const field::Lattice& lattice, const ExternalFields& ext,
                                const Units& units, HamiltonianPart part,
                                field::DerivativeScheme scheme = field::DerivativeScheme::kCentral);

// H Psi with derivatives by `scheme`. The vector terms act by left multiplication of the
// spinor, i.e. as b.sigma on the amplitude pair. (d A + A d) is written out so the discrete
// operator stays Hermitian.
field::SpinorField apply_hamiltonian(const field::SpinorField& psi, const ExternalFields& ext,
                                     const Units& units,
                                     HamiltonianPart part = HamiltonianPart::kFull,
                                     field::DerivativeScheme scheme = field::DerivativeScheme::kCentral);

// The same operator with central differences as a sparse matrix on stacked vectors
// [psi+(0..N-1), psi-(0..N-1)].
SparseMatrix hamiltonian_matrix(const field::Lattice& lattice, const ExternalFields& ext,
                                const Units& units, HamiltonianPart part = HamiltonianPart::kFull);

// <Psi|H|Psi>.
double energy(const field::SpinorField& psi, const ExternalFields& ext, const Units& units,
              field::DerivativeScheme scheme = field::DerivativeScheme::kCentral);

}  // namespace edspin::dynamics
