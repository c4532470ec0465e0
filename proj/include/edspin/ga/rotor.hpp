#pragma once

#include <array>

#include "edspin/common/vec3.hpp"
#include "edspin/ga/multivector.hpp"

namespace edspin::ga {

// Below this value of sin(theta) the azimuth is undefined; extraction sets phi = 0 and folds
// the azimuthal freedom into chi.
inline constexpr double kPoleEpsilon = 1e-9;

// z-y-z Euler angles: theta in [0, pi], phi and chi in (-pi, pi].
struct EulerAngles {
  double theta = 0.0;
  double phi = 0.0;
  double chi = 0.0;
};

// Right-handed orthonormal triad s_k = U e_k U^dagger.
struct SpinFrame {
  std::array<Vec3, 3> s;

  const Vec3& spin() const { return s[2]; }
  // max |s_j . s_k - delta_jk| together with |s_1 x s_2 - s_3|.
  double orthonormality_defect() const;
};

// Even, unit-magnitude multivector implementing x -> U x U^dagger.
class Rotor {
 public:
  Rotor() : m_(Multivector::scalar(1.0)) {}

  // Validates evenness and U U^dagger = 1 to `tolerance`.
  static Rotor from_multivector(const Multivector& m, double tolerance = 1e-12);
  // Normalizes the even part of `m`; throws if it vanishes.
  static Rotor normalized(const Multivector& m);
  // exp(-i n angle / 2) for a unit axis n.
  static Rotor from_axis_angle(const Vec3& axis, double angle);

  const Multivector& multivector() const { return m_; }
  Rotor reverse() const { return Rotor(m_.reverse()); }
  Rotor operator-() const { return Rotor(-m_); }
  Rotor operator*(const Rotor& o) const { return Rotor(m_ * o.m_); }

  Vec3 rotate(const Vec3& v) const;
  // Representative of {U, -U} with scalar part >= 0; ties broken by first nonzero bivector
  // coefficient (layout order e12, e23, e31) being positive.
  Rotor canonical() const;
  // max |U U^dagger - 1| over coefficients.
  double unitarity_defect() const;

 private:
  explicit Rotor(const Multivector& m) : m_(m) {}
  Multivector m_;
};

// exp(-i e3 phi/2) exp(-i e2 theta/2) exp(-i e3 chi/2).
Rotor rotor_from_euler(const EulerAngles& angles);
// The expanded form e^{-i e3 (chi+phi)/2} cos(theta/2) - i e2 e^{-i e3 (chi-phi)/2} sin(theta/2).
Multivector rotor_from_euler_expanded(const EulerAngles& angles);
// Inverse of rotor_from_euler up to the sign of U and the pole convention.
EulerAngles euler_from_rotor(const Rotor& u);

Vec3 spin_vector(const Rotor& u);
SpinFrame spin_frame(const Rotor& u);

// (sin t cos p, sin t sin p, cos t).
Vec3 spin_direction(double theta, double phi);
// e_phi = -sin(phi) e1 + cos(phi) e2.
Vec3 azimuthal_unit(double phi);

// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

}  // namespace edspin::ga
