#pragma once

#include "edspin/ga/multivector.hpp"
#include "edspin/ga/rotor.hpp"

namespace edspin::ga {

// u+ = (1 + e3)/sqrt(2) and u- = e1 u+, orthonormal under <u_A^dagger u_B>_0.
Multivector u_plus();
Multivector u_minus();
// The idempotent (1 + e3)/2 generating the left ideal.
Multivector ideal_projector();

// Element of the minimal left ideal G3 (1 + e3)/2. The complex amplitudes psi+ and psi-
// are scalar + pseudoscalar multivectors: Psi = psi+ u+ + psi- u-.
class Spinor {
 public:
  Spinor() = default;

  // Throws InvalidArgument unless m (1 + e3)/2 = m to `tolerance`.
  static Spinor from_multivector(const Multivector& m, double tolerance = 1e-12);
  // m (1 + e3)/2 for an arbitrary multivector m.
  static Spinor project(const Multivector& m);
  static Spinor from_amplitudes(const Multivector& psi_up, const Multivector& psi_down);
  static Spinor from_amplitudes(double up_re, double up_im, double down_re, double down_im);
  // Psi = Upsilon u+ for an even multivector (quaternion) Upsilon.
  static Spinor from_quaternion(const Multivector& upsilon);

  const Multivector& multivector() const { return m_; }

  // psi+ and psi- as scalar + pseudoscalar multivectors.
  Multivector up() const;
  Multivector down() const;
  // The even multivector Upsilon with Psi = Upsilon u+; equals sqrt(2) <Psi>_even.
  Multivector quaternion() const;

  // <Psi Psi^dagger>_0 = |psi+|^2 + |psi-|^2.
  double density() const;
  // <Psi Psi^dagger>_1 = rho s.
  Vec3 spin_density() const;
  // Even-ideal defect |Psi (1 + e3)/2 - Psi|.
  double absorption_defect() const;

  Spinor operator+(const Spinor& o) const { return Spinor(m_ + o.m_); }
  Spinor operator-(const Spinor& o) const { return Spinor(m_ - o.m_); }
  Spinor operator*(double s) const { return Spinor(m_ * s); }
  // Left multiplication by any multivector stays inside the ideal.
  friend Spinor operator*(const Multivector& a, const Spinor& s) { return Spinor(a * s.m_); }

 private:
  explicit Spinor(const Multivector& m) : m_(m) {}
  Multivector m_;
};

// u = U u+ for a rotor U.
Spinor spinor_from_rotor(const Rotor& u);
// The rotor U with Psi = rho^{1/2} U u+ (the overall phase is carried by chi inside U).
// Throws InvalidArgument for the zero spinor.
Rotor rotor_from_spinor(const Spinor& psi);

}  // namespace edspin::ga
