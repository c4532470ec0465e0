#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Sparse>

#include "edspin/common/units.hpp"
#include "edspin/dynamics/fields.hpp"
#include "edspin/dynamics/hamiltonian.hpp"
#include "edspin/field/derivatives.hpp"
#include "edspin/field/spinor_field.hpp"

namespace edspin::dynamics {

struct DriftVelocity {
  std::vector<Vec3> v;
  // rho < floor: the numerator is still evaluated with the floor in the denominator.
  std::vector<std::uint8_t> singular;
};

// v_a = <Psi^dagger (hbar/i) d_a Psi>_0 / (m rho) - (q/mc) A_a from the grade projection.
DriftVelocity drift_velocity(const field::SpinorField& psi, const ExternalFields& ext,
                             const Units& units,
                             field::DerivativeScheme scheme = field::DerivativeScheme::kCentral,
                             double rho_floor = 1e-300);
// v_a = (1/m) d_a Phi - (q/mc) A_a - (hbar/2m) cos(theta) d_a phi from the polar chart, with
// phase differences taken on the amplitudes' arguments. Points where the chart is singular are
// flagged and left at -(q/mc) A.
DriftVelocity drift_velocity_chart(const field::SpinorField& psi, const ExternalFields& ext,
                                   const Units& units, double rho_floor = 1e-300,
                                   double pole_epsilon = 1e-9);

// Probability current rho v = (hbar/m) Im(psi^dagger d psi) - (q/mc) A rho.
std::vector<Vec3> probability_current(const field::SpinorField& psi, const ExternalFields& ext,
                                      const Units& units,
                                      field::DerivativeScheme scheme = field::DerivativeScheme::kCentral);

// max over interior frames of the discrete L2 norm sqrt(sum w r^2) of
// r = d_t rho + d_a(rho v^a), with central differences in time. Frames must be equally spaced.
double continuity_residual(const std::vector<field::SpinorField>& series, const ExternalFields& ext,
                           const Units& units,
                           field::DerivativeScheme scheme = field::DerivativeScheme::kCentral);

// Pointwise residual of
//   rho m v^2/2 = <Psi^dagger H0 Psi>_0 + (hbar^2/2m) rho^{1/2} d^2 rho^{1/2}
//                 - (hbar^2/8m) rho (d_a s)^2 + (hbar q/2mc) rho B.s
// with every derivative by `scheme`.
struct IdentityTerms {
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> residual;
  double max_residual = 0.0;
};
IdentityTerms appendix_c_identity(const field::SpinorField& psi, const ExternalFields& ext,
                                  const Units& units,
                                  field::DerivativeScheme scheme = field::DerivativeScheme::kCentral);

// Magnetization M = (q/mc) rho S with S = (hbar/2) s.
std::vector<Vec3> magnetization(const field::SpinorField& psi, const Units& units);
// c curl M computed as the dual of the grade-2 part of grad M (geometric product of the
// finite-difference gradient with M).
std::vector<Vec3> magnetization_current(const field::SpinorField& psi, const Units& units,
                                        field::DerivativeScheme scheme = field::DerivativeScheme::kCentral);
// J_e = q rho v + c curl M.
std::vector<Vec3> electric_current(const field::SpinorField& psi, const ExternalFields& ext,
                                   const Units& units,
                                   field::DerivativeScheme scheme = field::DerivativeScheme::kCentral);

// Local momentum p_a = d_a Phi - (hbar/2) cos(theta) d_a phi = m v_a + (q/c) A_a.
std::vector<Vec3> local_momentum(const field::SpinorField& psi, const ExternalFields& ext,
                                 const Units& units,
                                 field::DerivativeScheme scheme = field::DerivativeScheme::kCentral);
// Local energy eps = -d_t Phi + (hbar/2) cos(theta) d_t phi at the middle of three equally
// spaced frames, from the amplitudes' phase increments.
std::vector<double> local_energy(const field::SpinorField& before, const field::SpinorField& at,
                                 const field::SpinorField& after, const Units& units = {});

// psi+^T = -psi-^*, psi-^T = psi+^*.
field::SpinorField time_reverse(const field::SpinorField& psi);

// Discrete action sum_k dt sum_x w <i hbar Psi^dagger d_t Psi - Psi^dagger H Psi>_0 with
// midpoint values Psi_{k+1/2} and forward differences, for a fixed Hamiltonian matrix.
double action(const std::vector<field::SpinorField>& series, const SparseMatrix& h,
              const Units& units);
// Directional derivative of `action` along a perturbation series `delta`; vanishes on
// Crank-Nicolson trajectories when delta is zero at both ends.
double action_first_variation(const std::vector<field::SpinorField>& series,
                              const std::vector<field::SpinorField>& delta, const SparseMatrix& h,
                              const Units& units);

struct ActionDiagnostic {
  double action = 0.0;
  // Largest entry of the action gradient with respect to the interior frames (endpoints
  // held fixed).
  double max_first_variation = 0.0;
};
ActionDiagnostic action_diagnostic(const std::vector<field::SpinorField>& series,
                                   const ExternalFields& ext, const Units& units);

// Ledger quantities at one instant.
struct LedgerRow {
  double t = 0.0;
  double norm = 0.0;
  double energy = 0.0;
  Vec3 mean_position;
  Vec3 mean_momentum;
  Vec3 total_spin;
};
LedgerRow ledger_row(const field::SpinorField& psi, const ExternalFields& ext, const Units& units);
void write_ledger_header(std::ostream& os);
void write_ledger_row(std::ostream& os, const LedgerRow& row);

}  // namespace edspin::dynamics
