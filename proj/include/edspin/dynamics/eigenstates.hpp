#pragma once

#include <vector>

#include "edspin/common/units.hpp"
#include "edspin/field/spinor_field.hpp"

namespace edspin::dynamics {

struct Eigenstate {
  field::SpinorField state;
  double energy = 0.0;
};

inline constexpr std::size_t kMaxDenseEigenPoints = 4096;

// Lowest eigenvector of the scalar discrete Hamiltonian -hbar^2/2m lap + V (central stencil,
// A = 0, no spin coupling), made real and positive, times the uniform spinor
// (cos(theta/2), e^{i phi} sin(theta/2)). Dense solve; at most kMaxDenseEigenPoints points.
Eigenstate ground_state(const field::Lattice& lattice, const std::vector<double>& potential,
                        const Units& units = {}, double theta = 0.0, double phi = 0.0);

}  // namespace edspin::dynamics
