#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "edspin/common/complex.hpp"
#include "edspin/common/units.hpp"
#include "edspin/field/spinor_field.hpp"

namespace edspin::geometry {

// Stacked amplitude vector [psi+(0..N-1), psi-(0..N-1)] used by kernels and flows.
Eigen::VectorXcd stack(const field::SpinorField& f);
field::SpinorField unstack(const field::Lattice& lattice, const Eigen::VectorXcd& v);

// Slots per lattice point x, stored at 4x..4x+3: (psi+, i hbar psi+*, psi-, i hbar psi-*).
// Slots 1 and 3 carry action x amplitude units.
struct SlotVector {
  field::Lattice lattice;
  double hbar = 1.0;
  std::vector<Complex> slots;

  static SlotVector from_amplitudes(const field::Lattice& lattice, const std::vector<Complex>& up,
                                    const std::vector<Complex>& down, double hbar);
  std::size_t points() const { return slots.size() / 4; }
  Complex up(std::size_t x) const { return slots[4 * x]; }
  Complex down(std::size_t x) const { return slots[4 * x + 2]; }
  // max |slot_{2k+1} - i hbar conj(slot_{2k})|.
  double consistency_defect() const;
};

struct PhaseSpacePoint : SlotVector {
  static PhaseSpacePoint from_field(const field::SpinorField& f, const Units& units = {});
  field::SpinorField to_field() const;
};

struct TangentVector : SlotVector {
  // The tangent with amplitude differentials (d psi+/d lambda, d psi-/d lambda).
  static TangentVector from_differentials(const field::SpinorField& d, const Units& units = {});
  field::SpinorField differentials() const;
};

// Tangent gauge-fixed predicates at base point psi: tangency sum w d rho/d lambda and the
// gauge quantity <s . d zeta/d lambda> = -2 Im <psi|V>.
struct TgfFlags {
  double tangency = 0.0;
  double gauge = 0.0;
  bool holds(double tolerance) const;
};
TgfFlags tgf_flags(const PhaseSpacePoint& at, const TangentVector& v);
// Removes the normalization and global-phase components of v at a normalized point.
TangentVector tgf_project(const PhaseSpacePoint& at, const TangentVector& v);

// Omega[V,U] = sum w (V1 U2 - V2 U1 + V3 U4 - V4 U3) with delta(x,x') -> delta_xx'/w.
double omega_pair(const TangentVector& v, const TangentVector& u);
// G[V,U] = sum w (1/2 i hbar)(V1 U2 + V2 U1 + V3 U4 + V4 U3) = sum w Re(dpsi_V^* dpsi_U).
double metric_pair(const TangentVector& v, const TangentVector& u);
// J = -(1/2 hbar) G^{-1} Omega = diag(i, -i, i, -i) on the slots.
TangentVector complex_structure(const TangentVector& v);
// G[V,U] + (i/2 hbar) Omega[V,U] = sum w (dpsi_V^* dpsi_U).
Complex tangent_inner_product(const TangentVector& v, const TangentVector& u);

// Dense kernels over the 4N slot index. A pairing is T[V,U] = w^2 V^T M U.
struct GeometryMatrices {
  Eigen::MatrixXcd omega;
  Eigen::MatrixXcd metric;
  Eigen::MatrixXcd complex_structure;
  double cell_weight = 0.0;

  double pair(const Eigen::MatrixXcd& m, const TangentVector& v, const TangentVector& u) const;
};
// J is formed from the kernel inverse of G, not written down directly.
GeometryMatrices geometry_matrices(const field::Lattice& lattice, const Units& units = {});

// Global phase flow psi -> psi e^{i sigma/hbar}, generated by the norm functional.
PhaseSpacePoint normalization_flow(const PhaseSpacePoint& start, double sigma);

// A phase-space functional with its functional gradient dF/dPsi^{mu x}, laid out like the
// slots (the discrete gradient is (1/w) times the partial derivative).
struct Functional {
  std::function<double(const PhaseSpacePoint&)> value;
  std::function<std::vector<Complex>(const PhaseSpacePoint&)> gradient;
};

// {F, G} = sum w sum_pm (dF/dpsi dG/d(i hbar psi*) - dF/d(i hbar psi*) dG/dpsi).
// Throws GradientMissing if either gradient is absent.
double poisson_bracket(const Functional& f, const Functional& g, const PhaseSpacePoint& at);

// Norm N = sum w (|psi+|^2 + |psi-|^2).
Functional norm_functional();
// rho at lattice point x.
Functional density_at(std::size_t x);
// Phi at lattice point x, hbar (arg psi+ + arg psi-)/2; requires both amplitudes nonzero.
Functional phase_at(std::size_t x);

}  // namespace edspin::geometry
