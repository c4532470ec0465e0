#include "edspin/ga/frame_derivatives.hpp"

#include <cmath>
#include <string>

#include "edspin/common/errors.hpp"

namespace edspin::ga {

namespace {

Vec3 axis_step(int a, double h) {
  Vec3 d;
  d[a] = h;
  return d;
}

}  // namespace

std::array<Vec3, 3> frame_derivatives(const RotorField& field, const Vec3& point, double h,
                                      double tolerance) {
  const Multivector u_dag = field(point).multivector().reverse();
  std::array<Vec3, 3> omega;
  for (int a = 0; a < 3; ++a) {
    const Vec3 d = axis_step(a, h);
    const Multivector du =
        (field(point + d).multivector() - field(point - d).multivector()) / (2.0 * h);
    const Multivector g = du * u_dag;
    const double residual = (g - g.grade(2)).max_abs();
    if (!(residual <= tolerance)) {
      throw NonSmoothField("axis " + std::to_string(a) + " residual " + std::to_string(residual));
    }
    omega[a] = (g * -2.0).bivector_dual();
  }
  return omega;
}

std::array<Vec3, 3> frame_derivatives_from_euler(const EulerAngles& angles,
                                                 const std::array<Vec3, 3>& grad_angles) {
  const Vec3 e3{0.0, 0.0, 1.0};
  const Vec3 e_phi = azimuthal_unit(angles.phi);
  const Vec3 s = spin_direction(angles.theta, angles.phi);
  std::array<Vec3, 3> omega;
  for (int a = 0; a < 3; ++a) {
    // grad_angles[k][a] is d_a of angle k in the order (theta, phi, chi).
    omega[a] = e3 * grad_angles[1][a] + e_phi * grad_angles[0][a] + s * grad_angles[2][a];
  }
  return omega;
}

std::array<double, 3> omega_dot_s(const SpinorFieldFn& field, const Vec3& point, double h,
                                  double tolerance) {
  const Multivector u_dag = field(point).multivector().reverse();
  const Multivector i = Multivector::pseudoscalar(1.0);
  std::array<double, 3> out{};
  for (int a = 0; a < 3; ++a) {
    const Vec3 d = axis_step(a, h);
    const Multivector du =
        (field(point + d).multivector() - field(point - d).multivector()) / (2.0 * h);
    const double residual = std::abs((u_dag * du).scalar_part());
    if (!(residual <= tolerance)) {
      throw NonSmoothField("axis " + std::to_string(a) + " residual " + std::to_string(residual));
    }
    out[a] = (u_dag * i * du).scalar_part();
  }
  return out;
}

}  // namespace edspin::ga
