#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "catch_amalgamated.hpp"

#include "edspin/common/errors.hpp"
#include "edspin/ga/frame_derivatives.hpp"
#include "edspin/ga/multivector.hpp"
#include "edspin/ga/rotor.hpp"
#include "edspin/ga/spinor.hpp"

using namespace edspin;
using namespace edspin::ga;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kPi = std::numbers::pi;

Multivector random_mv(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::array<double, 8> c{};
  for (double& x : c) x = u(rng);
  return Multivector(c);
}

EulerAngles random_angles(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_real_distribution<double> pol(0.1, kPi - 0.1);
  return {pol(rng), ang(rng), ang(rng)};
}

Multivector e(std::size_t blade) { return Multivector::basis(blade); }

}  // namespace

TEST_CASE("basis vectors square to one and anticommute", "[ga]") {
  CHECK(e(kE1) * e(kE1) == Multivector::scalar(1.0));
  CHECK(e(kE2) * e(kE2) == Multivector::scalar(1.0));
  CHECK(e(kE3) * e(kE3) == Multivector::scalar(1.0));
  CHECK(e(kE1) * e(kE2) == -(e(kE2) * e(kE1)));
  CHECK(e(kE1) * e(kE2) * e(kE3) == e(kPseudo));
}

TEST_CASE("e1 e2 equals i e3", "[ga]") {
  CHECK(e(kE1) * e(kE2) == e(kPseudo) * e(kE3));
  CHECK(e(kE1) * e(kE2) == e(kE12));
}

TEST_CASE("pseudoscalar squares to -1 and is central", "[ga]") {
  CHECK(e(kPseudo) * e(kPseudo) == Multivector::scalar(-1.0));
  for (std::size_t b = 0; b < kBladeCount; ++b) CHECK(e(kPseudo) * e(b) == e(b) * e(kPseudo));
}

TEST_CASE("vector product is dot plus wedge", "[ga]") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 0; n < 50; ++n) {
    const Vec3 a{u(rng), u(rng), u(rng)};
    const Vec3 b{u(rng), u(rng), u(rng)};
    const Multivector ab = Multivector::vector(a) * Multivector::vector(b);
    // a ^ b = i (a x b).
    const Multivector expect = Multivector::scalar(a.dot(b)) + Multivector::dual_vector(a.cross(b));
    CHECK((ab - expect).max_abs() < 1e-15);
  }
}

TEST_CASE("identity element and bilinearity", "[ga]") {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 20; ++n) {
    const Multivector m = random_mv(rng);
    CHECK(Multivector::scalar(1.0) * m == m);
    CHECK(m * Multivector::scalar(1.0) == m);
    const Multivector a = random_mv(rng), b = random_mv(rng);
    CHECK(((a + b) * m - (a * m + b * m)).max_abs() < 1e-14);
    CHECK(((a * 2.5) * m - (a * m) * 2.5).max_abs() < 1e-14);
  }
}

TEST_CASE("grade projections partition the coefficients", "[ga]") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 20; ++n) {
    const Multivector m = random_mv(rng);
    CHECK(m.grade(0) + m.grade(1) + m.grade(2) + m.grade(3) == m);
    for (std::size_t b = 0; b < kBladeCount; ++b) {
      for (int k = 0; k < 4; ++k) {
        CHECK(m.grade(k)[b] == (kBladeGrade[b] == k ? m[b] : 0.0));
      }
    }
  }
}

TEST_CASE("involutions", "[ga]") {
  CHECK(e(kPseudo).reverse() == -e(kPseudo));
  const Multivector a = Multivector::vector({1.0, -2.0, 0.5});
  CHECK(a.spatial_inverse() == -a);
  const Involutions inv = involutions(e(kE12));
  CHECK(inv.reverse == -e(kE12));
  CHECK(inv.spatial_inverse == e(kE12));
  std::mt19937_64 rng(9);
  for (int n = 0; n < 100; ++n) {
    const Multivector A = random_mv(rng), B = random_mv(rng);
    CHECK(A.reverse().reverse() == A);
    CHECK(A.spatial_inverse().spatial_inverse() == A);
    CHECK(((A * B).reverse() - B.reverse() * A.reverse()).max_abs() < 1e-14);
    CHECK(((A * B).spatial_inverse() - A.spatial_inverse() * B.spatial_inverse()).max_abs() < 1e-14);
  }
}

TEST_CASE("debug rendering lists every coefficient", "[ga]") {
  const Multivector m({1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(m.to_string(0) == "1 + 2 e1 + 3 e2 + 4 e3 + 5 e12 + 6 e23 + 7 e31 + 8 i");
}

TEST_CASE("rotor from Euler angles", "[ga][rotor]") {
  CHECK((rotor_from_euler({0, 0, 0}).multivector() - Multivector::scalar(1.0)).max_abs() < 1e-15);
  // exp(-i e2 pi/2) = -i e2 = -e31.
  const Multivector expect = -(e(kPseudo) * e(kE2));
  CHECK((rotor_from_euler({kPi, 0, 0}).multivector() - expect).max_abs() < 1e-15);
  std::mt19937_64 rng(11);
  for (int n = 0; n < 200; ++n) {
    const EulerAngles a = random_angles(rng);
    const Rotor u = rotor_from_euler(a);
    CHECK((u.multivector() - rotor_from_euler_expanded(a)).max_abs() < 1e-12);
    CHECK(u.unitarity_defect() < 1e-12);
    CHECK((u.multivector().reverse() * u.multivector() - Multivector::scalar(1.0)).max_abs() < 1e-12);
    CHECK(u.multivector().odd().max_abs() == 0.0);
  }
}

TEST_CASE("rotor validation", "[ga][rotor]") {
  CHECK_THROWS_AS(Rotor::from_multivector(e(kE1)), InvalidArgument);
  CHECK_THROWS_AS(Rotor::from_multivector(Multivector::scalar(2.0)), InvalidArgument);
  CHECK_THROWS_AS(Rotor::normalized(Multivector()), InvalidArgument);
  CHECK_NOTHROW(Rotor::from_multivector(e(kE12)));
}

TEST_CASE("spin vector", "[ga][rotor]") {
  const Vec3 s0 = spin_vector(Rotor());
  CHECK(s0 == Vec3{0, 0, 1});
  const Vec3 s1 = spin_vector(rotor_from_euler({kPi / 2, 0, 0}));
  CHECK_THAT(s1.x, WithinAbs(1.0, 1e-15));
  CHECK_THAT(s1.z, WithinAbs(0.0, 1e-15));
  std::mt19937_64 rng(13);
  for (int n = 0; n < 100; ++n) {
    const EulerAngles a = random_angles(rng);
    const Rotor u = rotor_from_euler(a);
    const Vec3 s = spin_vector(u);
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
    CHECK((s - spin_direction(a.theta, a.phi)).norm() < 1e-12);
    // Double cover: U and -U give the same frame.
    CHECK((spin_vector(-u) - s).norm() == 0.0);
    CHECK(spin_frame(u).orthonormality_defect() < 1e-12);
  }
}

TEST_CASE("Euler round trip and canonical sign", "[ga][rotor]") {
  std::mt19937_64 rng(17);
  for (int n = 0; n < 200; ++n) {
    const EulerAngles a = random_angles(rng);
    const EulerAngles b = euler_from_rotor(rotor_from_euler(a));
    CHECK_THAT(b.theta, WithinAbs(a.theta, 1e-12));
    CHECK_THAT(wrap_angle(b.phi - a.phi), WithinAbs(0.0, 1e-12));
    // chi is recovered modulo 2 pi only up to the double cover, i.e. modulo 4 pi in U.
    const Rotor ua = rotor_from_euler(a).canonical();
    const Rotor ub = rotor_from_euler(b).canonical();
    CHECK((ua.multivector() - ub.multivector()).max_abs() < 1e-12);
    CHECK(ua.multivector().scalar_part() >= 0.0);
  }
}

TEST_CASE("Euler extraction at the poles folds the azimuth into chi", "[ga][rotor]") {
  const EulerAngles north = euler_from_rotor(rotor_from_euler({0.0, 0.7, 0.4}));
  CHECK(north.theta == 0.0);
  CHECK(north.phi == 0.0);
  CHECK_THAT(north.chi, WithinAbs(1.1, 1e-12));
  const EulerAngles south = euler_from_rotor(rotor_from_euler({kPi, 0.7, 0.4}));
  CHECK_THAT(south.theta, WithinAbs(kPi, 1e-12));
  CHECK(south.phi == 0.0);
  // Only chi - phi is defined at the south pole.
  CHECK_THAT(wrap_angle(south.chi - (0.4 - 0.7)), WithinAbs(0.0, 1e-12));
  const Rotor rebuilt = rotor_from_euler(south);
  CHECK((spin_frame(rebuilt).s[0] - spin_frame(rotor_from_euler({kPi, 0.7, 0.4})).s[0]).norm() < 1e-12);
}

TEST_CASE("canonical tie break on zero scalar part", "[ga][rotor]") {
  const Rotor r = Rotor::from_multivector(-e(kE23));
  CHECK(r.canonical().multivector() == e(kE23));
  const Rotor q = Rotor::from_multivector(e(kE12) * -1.0);
  CHECK(q.canonical().multivector()[kE12] == 1.0);
}

TEST_CASE("infinitesimal rotation matches composition to second order", "[ga][rotor]") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double eps : {1e-2, 5e-3}) {
    double worst = 0.0;
    for (int n = 0; n < 20; ++n) {
      const Rotor U = rotor_from_euler(random_angles(rng));
      const Vec3 zeta = Vec3{u(rng), u(rng), u(rng)} * eps;
      const Multivector linear =
          (Multivector::scalar(1.0) - Multivector::dual_vector(zeta * 0.5)) * U.multivector();
      const Multivector exact = (Rotor::from_axis_angle(zeta, zeta.norm()) * U).multivector();
      worst = std::max(worst, (linear - exact).max_abs() / (eps * eps));
    }
    CHECK(worst < 1.0);
  }
}

TEST_CASE("Pauli-matrix representation is a homomorphism", "[ga]") {
  using M2 = std::array<std::complex<double>, 4>;
  const std::complex<double> I(0, 1);
  auto rep = [&](const Multivector& m) {
    // alpha + a.sigma + i(b.sigma) + i beta with e12 = i s3, e23 = i s1, e31 = i s2.
    const std::complex<double> s0 = m[kScalar] + I * m[kPseudo];
    const std::complex<double> x = m[kE1] + I * m[kE23];
    const std::complex<double> y = m[kE2] + I * m[kE31];
    const std::complex<double> z = m[kE3] + I * m[kE12];
    return M2{s0 + z, x - I * y, x + I * y, s0 - z};
  };
  auto mul = [](const M2& a, const M2& b) {
    return M2{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
              a[2] * b[1] + a[3] * b[3]};
  };
  std::mt19937_64 rng(23);
  for (int n = 0; n < 200; ++n) {
    const Multivector a = random_mv(rng), b = random_mv(rng);
    const M2 lhs = rep(a * b);
    const M2 rhs = mul(rep(a), rep(b));
    for (int k = 0; k < 4; ++k) CHECK(std::abs(lhs[k] - rhs[k]) < 1e-12);
  }
}

TEST_CASE("spinor ideal and amplitudes", "[ga][spinor]") {
  const Multivector P = ideal_projector();
  CHECK((P * P - P).max_abs() < 1e-15);
  CHECK((u_plus() * P - u_plus()).max_abs() < 1e-15);
  CHECK((u_minus() * P - u_minus()).max_abs() < 1e-15);
  CHECK_THAT((u_plus().reverse() * u_plus()).scalar_part(), WithinAbs(1.0, 1e-15));
  CHECK_THAT((u_plus().reverse() * u_minus()).scalar_part(), WithinAbs(0.0, 1e-15));
  // e3 u- = -u-.
  CHECK((e(kE3) * u_minus() + u_minus()).max_abs() < 1e-15);

  std::mt19937_64 rng(29);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int n = 0; n < 50; ++n) {
    const double a = g(rng), b = g(rng), c = g(rng), d = g(rng);
    const Spinor s = Spinor::from_amplitudes(a, b, c, d);
    CHECK(s.absorption_defect() < 1e-15);
    CHECK_THAT(s.up().scalar_part(), WithinAbs(a, 1e-14));
    CHECK_THAT(s.up().pseudoscalar_part(), WithinAbs(b, 1e-14));
    CHECK_THAT(s.down().scalar_part(), WithinAbs(c, 1e-14));
    CHECK_THAT(s.down().pseudoscalar_part(), WithinAbs(d, 1e-14));
    CHECK_THAT(s.density(), WithinAbs(a * a + b * b + c * c + d * d, 1e-12));
    // Uniqueness: projecting an arbitrary multivector lands in the ideal.
    const Spinor p = Spinor::project(random_mv(rng));
    CHECK(p.absorption_defect() < 1e-14);
    const Spinor q = Spinor::from_amplitudes(p.up(), p.down());
    CHECK((q.multivector() - p.multivector()).max_abs() < 1e-14);
    const Spinor r = Spinor::from_quaternion(s.quaternion());
    CHECK((r.multivector() - s.multivector()).max_abs() < 1e-14);
  }
  CHECK_THROWS_AS(Spinor::from_multivector(e(kE1)), InvalidArgument);
}

TEST_CASE("spinor of a rotor carries the spin vector", "[ga][spinor]") {
  std::mt19937_64 rng(31);
  for (int n = 0; n < 50; ++n) {
    const Rotor U = rotor_from_euler(random_angles(rng));
    const Spinor u = spinor_from_rotor(U);
    CHECK_THAT(u.density(), WithinAbs(1.0, 1e-12));
    CHECK((u.spin_density() - spin_vector(U)).norm() < 1e-12);
    const Rotor back = rotor_from_spinor(u * 2.0);
    CHECK((back.multivector() - U.multivector()).max_abs() < 1e-12);
  }
  CHECK_THROWS_AS(rotor_from_spinor(Spinor()), InvalidArgument);
}

TEST_CASE("frame derivatives", "[ga][frames]") {
  const double h = 1e-3;
  const auto constant = [](const Vec3&) { return rotor_from_euler({0.3, 0.2, 0.1}); };
  for (const Vec3& w : frame_derivatives(constant, {0.1, 0.2, 0.3}, h)) CHECK(w.norm() < 1e-12);

  const double k = 1.7;
  const auto twist = [&](const Vec3& x) { return Rotor::from_axis_angle({0, 0, 1}, k * x.x); };
  const auto w = frame_derivatives(twist, {0.4, 0.0, 0.0}, h);
  CHECK((w[0] - Vec3{0, 0, k}).norm() < 1e-6);
  CHECK(w[1].norm() < 1e-12);
  CHECK(w[2].norm() < 1e-12);

  // Smooth Euler fields: compare with the closed form at two steps.
  const auto angles = [](const Vec3& x) {
    return EulerAngles{1.0 + 0.3 * std::sin(x.x + 0.5 * x.y), 0.4 * std::cos(x.y) + 0.2 * x.z,
                       0.7 * std::sin(x.z - x.x)};
  };
  const Vec3 p{0.3, -0.2, 0.5};
  const EulerAngles a = angles(p);
  std::array<Vec3, 3> grad;  // grad[0] = grad theta, grad[1] = grad phi, grad[2] = grad chi.
  grad[0] = {0.3 * std::cos(p.x + 0.5 * p.y), 0.15 * std::cos(p.x + 0.5 * p.y), 0.0};
  grad[1] = {0.0, -0.4 * std::sin(p.y), 0.2};
  grad[2] = {-0.7 * std::cos(p.z - p.x), 0.0, 0.7 * std::cos(p.z - p.x)};
  const auto exact = frame_derivatives_from_euler(a, grad);
  const auto field = [&](const Vec3& x) { return rotor_from_euler(angles(x)); };
  double err[2];
  int idx = 0;
  for (double step : {1e-2, 5e-3}) {
    const auto fd = frame_derivatives(field, p, step);
    err[idx] = 0.0;
    for (int c = 0; c < 3; ++c) err[idx] = std::max(err[idx], (fd[c] - exact[c]).norm());
    ++idx;
  }
  CHECK(err[0] < 1e-4);
  CHECK_THAT(err[0] / err[1], WithinAbs(4.0, 0.2));

  // Frame transport d_a s_k = omega_a x s_k.
  for (int c = 0; c < 3; ++c) {
    Vec3 dx;
    dx[c] = 1e-4;
    const SpinFrame plus = spin_frame(field(p + dx));
    const SpinFrame minus = spin_frame(field(p - dx));
    const SpinFrame at = spin_frame(field(p));
    for (int kk = 0; kk < 3; ++kk) {
      const Vec3 ds = (plus.s[kk] - minus.s[kk]) / 2e-4;
      CHECK((ds - exact[c].cross(at.s[kk])).norm() < 1e-6);
    }
  }
}

TEST_CASE("non-smooth rotor fields are rejected", "[ga][frames]") {
  // A sign flip of U across x = 0 is invisible to the frame but not to the differences.
  const auto flip = [](const Vec3& x) {
    const Rotor r = rotor_from_euler({0.5, 0.2, 0.1});
    return x.x < 0.0 ? -r : r;
  };
  CHECK_THROWS_AS(frame_derivatives(flip, {0.0, 0.0, 0.0}, 1e-3), NonSmoothField);
}

TEST_CASE("omega dot s from the spinor field", "[ga][frames]") {
  const auto constant = [](const Vec3&) { return spinor_from_rotor(rotor_from_euler({0.3, 0.2, 0.1})); };
  for (double v : omega_dot_s(constant, {0, 0, 0}, 1e-3)) CHECK(std::abs(v) < 1e-12);

  const double k = 0.9;
  // u = u+ e^{-i k x/2}.
  const auto wave = [&](const Vec3& x) {
    return Spinor::from_amplitudes(std::cos(-0.5 * k * x.x), std::sin(-0.5 * k * x.x), 0.0, 0.0);
  };
  CHECK_THAT(omega_dot_s(wave, {0.3, 0, 0}, 1e-3)[0], WithinAbs(k / 2.0, 1e-6));

  const auto angles = [](const Vec3& x) {
    return EulerAngles{1.0 + 0.3 * std::sin(x.x + 0.5 * x.y), 0.4 * std::cos(x.y) + 0.2 * x.z,
                       0.7 * std::sin(x.z - x.x)};
  };
  const auto rotors = [&](const Vec3& x) { return rotor_from_euler(angles(x)); };
  const auto spinors = [&](const Vec3& x) { return spinor_from_rotor(rotors(x)); };
  const Vec3 p{0.3, -0.2, 0.5};
  const auto w = frame_derivatives(rotors, p, 1e-3);
  const auto d = omega_dot_s(spinors, p, 1e-3);
  const Vec3 s = spin_vector(rotors(p));
  for (int c = 0; c < 3; ++c) CHECK_THAT(d[c], WithinAbs(0.5 * w[c].dot(s), 1e-6));
}
