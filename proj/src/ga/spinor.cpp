#include "edspin/ga/spinor.hpp"

#include <cmath>
#include <numbers>

#include "edspin/common/errors.hpp"

namespace edspin::ga {

Multivector ideal_projector() { return Multivector({0.5, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0}); }

Multivector u_plus() {
  const double r = 1.0 / std::numbers::sqrt2;
  return Multivector({r, 0.0, 0.0, r, 0.0, 0.0, 0.0, 0.0});
}

Multivector u_minus() { return Multivector::basis(kE1) * u_plus(); }

Spinor Spinor::from_multivector(const Multivector& m, double tolerance) {
  Spinor s(m);
  if (s.absorption_defect() > tolerance) throw InvalidArgument("multivector is not in the ideal");
  return s;
}

Spinor Spinor::project(const Multivector& m) { return Spinor(m * ideal_projector()); }

Spinor Spinor::from_amplitudes(const Multivector& psi_up, const Multivector& psi_down) {
  return Spinor(psi_up * u_plus() + psi_down * u_minus());
}

Spinor Spinor::from_amplitudes(double up_re, double up_im, double down_re, double down_im) {
  return from_amplitudes(Multivector::complex(up_re, up_im), Multivector::complex(down_re, down_im));
}

Spinor Spinor::from_quaternion(const Multivector& upsilon) {
  return Spinor(upsilon.even() * u_plus());
}

Multivector Spinor::up() const {
  return Multivector::complex(std::numbers::sqrt2 * m_[kScalar], std::numbers::sqrt2 * m_[kPseudo]);
}

Multivector Spinor::down() const {
  return Multivector::complex(std::numbers::sqrt2 * m_[kE1], std::numbers::sqrt2 * m_[kE2]);
}

Multivector Spinor::quaternion() const { return m_.even() * std::numbers::sqrt2; }

double Spinor::density() const { return (m_ * m_.reverse()).scalar_part(); }

Vec3 Spinor::spin_density() const { return (m_ * m_.reverse()).vector_part(); }

double Spinor::absorption_defect() const { return (m_ * ideal_projector() - m_).max_abs(); }

Spinor spinor_from_rotor(const Rotor& u) { return Spinor::from_quaternion(u.multivector()); }

Rotor rotor_from_spinor(const Spinor& psi) {
  const Multivector q = psi.quaternion();
  if (q.norm2() == 0.0) throw InvalidArgument("zero spinor has no rotor");
  return Rotor::normalized(q);
}

}  // namespace edspin::ga
