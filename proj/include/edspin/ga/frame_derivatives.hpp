#pragma once

#include <array>
#include <functional>

#include "edspin/common/vec3.hpp"
#include "edspin/ga/rotor.hpp"
#include "edspin/ga/spinor.hpp"

namespace edspin::ga {

using RotorField = std::function<Rotor(const Vec3&)>;
using SpinorFieldFn = std::function<Spinor(const Vec3&)>;

// Default bound on the finite-difference smoothness residual. A smooth field gives
// O(h^2); a sign flip of U between neighbouring samples gives O(1/h).
inline constexpr double kSmoothnessTolerance = 1e-3;

// omega_a recovered from Omega_a = -2 (d_a U) U^dagger = i omega_a with second-order central
// differences of step h along each axis. Throws NonSmoothField if the non-bivector part of
// (d_a U) U^dagger exceeds `tolerance`.
std::array<Vec3, 3> frame_derivatives(const RotorField& field, const Vec3& point, double h,
                                      double tolerance = kSmoothnessTolerance);

// omega_a = e3 d_a phi + e_phi d_a theta + s d_a chi for known Euler gradients.
std::array<Vec3, 3> frame_derivatives_from_euler(const EulerAngles& angles,
                                                 const std::array<Vec3, 3>& grad_angles);

// <u^dagger i d_a u>_0 per axis for a normalized spinor field, central differences. Throws
// NonSmoothField if |<u^dagger d_a u>_0|, which vanishes for normalized fields, exceeds
// `tolerance`.
std::array<double, 3> omega_dot_s(const SpinorFieldFn& field, const Vec3& point, double h,
                                  double tolerance = kSmoothnessTolerance);

}  // namespace edspin::ga
