#pragma once

#include <cstdint>
#include <vector>

#include "edspin/common/units.hpp"
#include "edspin/field/derivatives.hpp"
#include "edspin/field/spinor_field.hpp"

namespace edspin::field {

inline constexpr double kDefaultRhoFloor = 1e-300;

// Polar chart (rho, Phi, theta, phi). Phi carries the merged phase -hbar chi_bar / 2 and is
// not wrapped. `singular` flags points with rho < floor or sin(theta) < pole epsilon, where
// values follow the pole convention (phi = 0).
struct PolarChart {
  Lattice lattice;
  std::vector<double> rho;
  std::vector<double> Phi;
  std::vector<double> theta;
  std::vector<double> phi;
  std::vector<std::uint8_t> singular;
};

// psi+ = rho^{1/2} cos(theta/2) e^{-i(chi_bar + phi)/2},
// psi- = rho^{1/2} sin(theta/2) e^{-i(chi_bar - phi)/2}, chi_bar = -2 Phi / hbar.
SpinorField amplitudes_from_polar(const PolarChart& chart, const Units& units = {});
PolarChart polar_from_amplitudes(const SpinorField& field, const Units& units = {},
                                 double rho_floor = kDefaultRhoFloor,
                                 double pole_epsilon = 1e-9);

// Grades 0 and 1 of Psi Psi^dagger: rho and rho s, with S = (hbar/2) s.
struct BornData {
  std::vector<double> rho;
  // Unit spin direction; zero where rho vanishes.
  std::vector<Vec3> s;
  // rho S = (hbar/2) rho s.
  std::vector<Vec3> spin_density;
  // max |<Psi Psi^dagger>_0 - (|psi+|^2 + |psi-|^2)| over the lattice.
  double density_defect = 0.0;
};
BornData born_extract(const SpinorField& field, const Units& units = {});

struct GaugeTransformed {
  SpinorField field;
  std::vector<Vec3> vector_potential;
};
// A -> A + grad xi and psi -> psi e^{i beta xi}, i.e. Phi -> Phi + hbar beta xi. The gradient
// of the sampled xi uses `scheme`.
GaugeTransformed gauge_transform(const SpinorField& field, const std::vector<Vec3>& vector_potential,
                                 const std::vector<double>& xi, double beta,
                                 DerivativeScheme scheme = DerivativeScheme::kCentral);

}  // namespace edspin::field
