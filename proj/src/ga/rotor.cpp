#include "edspin/ga/rotor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "edspin/common/errors.hpp"

namespace edspin::ga {

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(a, two_pi);  // [-pi, pi]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

double SpinFrame::orthonormality_defect() const {
  double d = 0.0;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      d = std::max(d, std::abs(s[j].dot(s[k]) - (j == k ? 1.0 : 0.0)));
    }
  }
  return std::max(d, (s[0].cross(s[1]) - s[2]).norm());
}

Rotor Rotor::from_multivector(const Multivector& m, double tolerance) {
  if (m.odd().max_abs() > tolerance) throw InvalidArgument("rotor has odd-grade part");
  Rotor r(m.even());
  if (r.unitarity_defect() > tolerance) throw InvalidArgument("rotor is not unit magnitude");
  return r;
}

Rotor Rotor::normalized(const Multivector& m) {
  const Multivector e = m.even();
  const double n = e.norm();
  if (n == 0.0) throw InvalidArgument("cannot normalize a zero quaternion");
  return Rotor(e / n);
}

Rotor Rotor::from_axis_angle(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (n == 0.0) return Rotor();
  return Rotor(exp_bivector(axis * (-0.5 * angle / n)));
}

Vec3 Rotor::rotate(const Vec3& v) const {
  return (m_ * Multivector::vector(v) * m_.reverse()).vector_part();
}

Rotor Rotor::canonical() const {
  const double s = m_.scalar_part();
  if (s > 0.0) return *this;
  if (s < 0.0) return -*this;
  for (std::size_t b : {kE12, kE23, kE31}) {
    if (m_[b] > 0.0) return *this;
    if (m_[b] < 0.0) return -*this;
  }
  return *this;
}

double Rotor::unitarity_defect() const {
  return (m_ * m_.reverse() - Multivector::scalar(1.0)).max_abs();
}

Rotor rotor_from_euler(const EulerAngles& a) {
  const Rotor uz_phi = Rotor::from_axis_angle({0.0, 0.0, 1.0}, a.phi);
  const Rotor uy_theta = Rotor::from_axis_angle({0.0, 1.0, 0.0}, a.theta);
  const Rotor uz_chi = Rotor::from_axis_angle({0.0, 0.0, 1.0}, a.chi);
  return uz_phi * uy_theta * uz_chi;
}

Multivector rotor_from_euler_expanded(const EulerAngles& a) {
  const Multivector ie2 = Multivector::dual_vector({0.0, 1.0, 0.0});
  const Multivector sum = exp_bivector({0.0, 0.0, -0.5 * (a.chi + a.phi)});
  const Multivector diff = exp_bivector({0.0, 0.0, -0.5 * (a.chi - a.phi)});
  return sum * std::cos(0.5 * a.theta) - ie2 * diff * std::sin(0.5 * a.theta);
}

// U = c cos(s) - c sin(s) e12 - sn sin(d) e23 - sn cos(d) e31 with c = cos(theta/2),
// sn = sin(theta/2), s = (chi + phi)/2 and d = (chi - phi)/2.
EulerAngles euler_from_rotor(const Rotor& u) {
  const Multivector& m = u.multivector();
  const double w = m.scalar_part();
  const double b12 = m[kE12];
  const double b23 = m[kE23];
  const double b31 = m[kE31];
  const double cos_half = std::hypot(w, b12);
  const double sin_half = std::hypot(b23, b31);
  EulerAngles out;
  out.theta = 2.0 * std::atan2(sin_half, cos_half);
  const double s = std::atan2(-b12, w);
  const double d = std::atan2(-b23, -b31);
  if (std::sin(out.theta) < kPoleEpsilon) {
    out.phi = 0.0;
    out.chi = wrap_angle(cos_half >= sin_half ? 2.0 * s : 2.0 * d);
    return out;
  }
  out.phi = wrap_angle(s - d);
  out.chi = wrap_angle(s + d);
  return out;
}

Vec3 spin_vector(const Rotor& u) { return u.rotate({0.0, 0.0, 1.0}); }

SpinFrame spin_frame(const Rotor& u) {
  return {{u.rotate({1.0, 0.0, 0.0}), u.rotate({0.0, 1.0, 0.0}), u.rotate({0.0, 0.0, 1.0})}};
}

Vec3 spin_direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Vec3 azimuthal_unit(double phi) { return {-std::sin(phi), std::cos(phi), 0.0}; }

}  // namespace edspin::ga
