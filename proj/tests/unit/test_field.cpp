#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>

#include "catch_amalgamated.hpp"

#include "edspin/common/complex.hpp"
#include "edspin/common/errors.hpp"
#include "edspin/field/derivatives.hpp"
#include "edspin/field/fft.hpp"
#include "edspin/field/lattice.hpp"
#include "edspin/field/polar.hpp"
#include "edspin/field/snapshot.hpp"
#include "edspin/field/spinor_field.hpp"
#include "edspin/ga/spinor.hpp"

using namespace edspin;
using namespace edspin::field;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

SpinorField random_field(const Lattice& lat, std::mt19937_64& rng, bool normalized = true) {
  std::normal_distribution<double> g(0.0, 1.0);
  SpinorField f(lat);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    f.up()[i] = {g(rng), g(rng)};
    f.down()[i] = {g(rng), g(rng)};
  }
  if (normalized) f.normalize();
  return f;
}

// A smooth normalized state with rho bounded away from zero and off the poles.
SpinorField smooth_field(const Lattice& lat, double shift = 0.0) {
  const double k = 2.0 * kPi / lat.extent(0);
  SpinorField f = SpinorField::sample(lat, [&](const Vec3& r) {
    const double rho = 1.0 + 0.5 * std::sin(k * r.x + shift);
    const double th = 1.2 + 0.4 * std::cos(k * r.x);
    const double ph = 0.8 * std::sin(k * r.x - shift);
    const double Phi = 0.6 * std::cos(k * r.x + 0.3);
    const double a = std::sqrt(rho);
    return std::pair{std::polar(a * std::cos(0.5 * th), Phi - 0.5 * ph),
                     std::polar(a * std::sin(0.5 * th), Phi + 0.5 * ph)};
  });
  f.normalize();
  return f;
}

}  // namespace

TEST_CASE("lattice geometry", "[lattice]") {
  const Lattice lat({4.0, 6.0}, {8, 12});
  CHECK(lat.dim() == 2);
  CHECK(lat.size() == 96);
  CHECK(lat.spacing(0) == 0.5);
  CHECK(lat.cell_weight() == 0.25);
  CHECK(lat.coordinate(0, 0) == -2.0);
  CHECK(lat.coordinate(1, 11) == -3.0 + 11 * 0.5);
  for (std::size_t i = 0; i < lat.size(); ++i) CHECK(lat.flat_index(lat.multi_index(i)) == i);
  const std::size_t f = lat.flat_index({7, 0, 0});
  CHECK(lat.multi_index(lat.neighbor(f, 0, 1))[0] == 0);
  CHECK(lat.multi_index(lat.neighbor(f, 1, -1))[1] == 11);
  const Vec3 w = lat.wrap({2.5, -3.5, 9.0});
  CHECK_THAT(w.x, WithinAbs(-1.5, 1e-15));
  CHECK_THAT(w.y, WithinAbs(2.5, 1e-15));
  CHECK(lat.wavenumber(0, 1) == 2.0 * kPi / 4.0);
  CHECK(lat.wavenumber(0, 7) == -2.0 * kPi / 4.0);
  CHECK_THROWS_AS(Lattice({1.0}, {1}), InvalidArgument);
  CHECK_THROWS_AS(Lattice({1.0, 1.0, 1.0, 1.0}, {2, 2, 2, 2}), InvalidArgument);
  CHECK_THROWS_AS(require_same(lat, Lattice({4.0}, {8}), "test"), LatticeMismatch);
}

TEST_CASE("multivector and amplitude views interconvert", "[field]") {
  std::mt19937_64 rng(1);
  const Lattice lat({2.0}, {16});
  const SpinorField f = random_field(lat, rng);
  SpinorField g(lat);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const ga::Spinor s = f.spinor_at(i);
    CHECK(s.absorption_defect() < 1e-15);
    g.set_spinor(i, s);
    CHECK(std::abs(g.up()[i] - f.up()[i]) < 1e-15);
    CHECK(std::abs(g.down()[i] - f.down()[i]) < 1e-15);
  }
}

TEST_CASE("norm is a sum over the unit sphere coordinates", "[field]") {
  std::mt19937_64 rng(2);
  const Lattice lat({3.0, 2.0}, {16, 8});
  SpinorField f = random_field(lat, rng, false);
  double xi = 0.0;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    xi += lat.cell_weight() * (f.up()[i].real() * f.up()[i].real() + f.up()[i].imag() * f.up()[i].imag() +
                               f.down()[i].real() * f.down()[i].real() +
                               f.down()[i].imag() * f.down()[i].imag());
  }
  CHECK_THAT(f.norm(), WithinRel(xi, 1e-14));
  f.normalize();
  CHECK(f.is_normalized());
  CHECK_THROWS_AS(SpinorField(lat).normalize(), NotNormalized);
}

TEST_CASE("inner product", "[field]") {
  std::mt19937_64 rng(3);
  const Lattice lat({2.0}, {32});
  const SpinorField a = random_field(lat, rng);
  const SpinorField b = random_field(lat, rng);
  CHECK_THAT(inner_product(a, a).real(), WithinAbs(1.0, 1e-12));
  CHECK(inner_product(a, a).imag() == 0.0);
  CHECK(std::abs(inner_product(a, b) - std::conj(inner_product(b, a))) < 1e-14);
  const SpinorField up = SpinorField::sample(lat, [](const Vec3&) { return std::pair{Complex(1), Complex(0)}; });
  const SpinorField down = SpinorField::sample(lat, [](const Vec3&) { return std::pair{Complex(0), Complex(1)}; });
  CHECK(inner_product(up, down) == Complex(0.0));
  CHECK_THROWS_AS(inner_product(a, SpinorField(Lattice({2.0}, {16}))), LatticeMismatch);
}

TEST_CASE("Fubini-Study distance", "[field][fs]") {
  std::mt19937_64 rng(4);
  const Lattice lat({2.0}, {16});
  const SpinorField a = random_field(lat, rng);
  CHECK(fs_distance(a, a) < 1e-15);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int n = 0; n < 20; ++n) CHECK(fs_distance(a, global_phase(a, u(rng))) < 1e-12);

  // Gauge invariance in the second argument.
  const SpinorField b = random_field(lat, rng);
  const double d = fs_distance(a, b);
  for (int n = 0; n < 20; ++n) CHECK_THAT(fs_distance(a, global_phase(b, u(rng))), WithinAbs(d, 1e-10));

  CHECK_THROWS_AS(fs_distance(a, b * Complex(1.1)), NotNormalized);
}

TEST_CASE("optimal phase agrees with a golden-section scan", "[field][fs]") {
  std::mt19937_64 rng(5);
  const Lattice lat({2.0}, {16});
  for (int n = 0; n < 5; ++n) {
    const SpinorField a = random_field(lat, rng);
    SpinorField b = a + random_field(lat, rng) * Complex(0.05);
    b = global_phase(b, 1.3);
    b.normalize();
    const auto embed = [&](double s) {
      double sum = 0.0;
      for (std::size_t i = 0; i < lat.size(); ++i) {
        const Complex ph = std::polar(1.0, s);
        sum += lat.cell_weight() * (std::norm(a.up()[i] - b.up()[i] * ph) + std::norm(a.down()[i] - b.down()[i] * ph));
      }
      return sum;
    };
    // Coarse scan then golden section.
    double best = 0.0;
    double best_val = 1e300;
    for (int k = 0; k < 720; ++k) {
      const double s = -kPi + 2.0 * kPi * k / 720.0;
      if (embed(s) < best_val) {
        best_val = embed(s);
        best = s;
      }
    }
    double lo = best - 0.01, hi = best + 0.01;
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 200; ++it) {
      const double m1 = hi - r * (hi - lo), m2 = lo + r * (hi - lo);
      if (embed(m1) < embed(m2)) hi = m2; else lo = m1;
    }
    const double scan = 0.5 * (lo + hi);
    CHECK_THAT(std::remainder(fs_optimal_phase(a, b) - scan, 2.0 * kPi), WithinAbs(0.0, 1e-7));
    CHECK_THAT(fs_distance(a, b), WithinAbs(embed(scan), 1e-12));
  }
}

TEST_CASE("amplitude and polar metric forms agree for nearby states", "[field][fs]") {
  const Lattice lat({10.0}, {64});
  const SpinorField a = smooth_field(lat);
  const BornData born = born_extract(a);
  double ratio_err[2];
  int idx = 0;
  for (double eps : {1e-3, 5e-4}) {
    const SpinorField b = smooth_field(lat, eps);
    // Polar form (1/4) sum w [drho^2/rho + rho (dzeta - s <s.dzeta>)^2] from the rotors.
    std::vector<Vec3> dzeta(lat.size());
    std::vector<double> drho(lat.size());
    double mean = 0.0;
    const BornData bb = born_extract(b);
    for (std::size_t i = 0; i < lat.size(); ++i) {
      const ga::Rotor ua = ga::rotor_from_spinor(a.spinor_at(i));
      ga::Rotor ub = ga::rotor_from_spinor(b.spinor_at(i));
      if ((ub.multivector() - ua.multivector()).norm() > 1.0) ub = -ub;
      const ga::Multivector g = (ub.multivector() - ua.multivector()) * ua.multivector().reverse();
      dzeta[i] = (g * -2.0).bivector_dual();
      drho[i] = bb.rho[i] - born.rho[i];
      mean += lat.cell_weight() * born.rho[i] * born.s[i].dot(dzeta[i]);
    }
    double polar = 0.0;
    for (std::size_t i = 0; i < lat.size(); ++i) {
      const Vec3 t = dzeta[i] - born.s[i] * mean;
      polar += 0.25 * lat.cell_weight() * (drho[i] * drho[i] / born.rho[i] + born.rho[i] * t.norm2());
    }
    const double fs = fs_distance(a, b);
    ratio_err[idx++] = std::abs(fs - polar) / fs;
  }
  CHECK(ratio_err[0] < 1e-2);
  // The discrepancy is third order, so its relative size halves with eps.
  CHECK_THAT(ratio_err[0] / ratio_err[1], WithinAbs(2.0, 0.3));
}

TEST_CASE("polar chart examples", "[field][polar]") {
  const Lattice lat({1.0}, {2});
  auto chart_of = [&](Complex up, Complex down) {
    SpinorField f(lat, {up, up}, {down, down});
    return polar_from_amplitudes(f);
  };
  auto c = chart_of(1.0, 0.0);
  CHECK(c.theta[0] == 0.0);
  CHECK(c.phi[0] == 0.0);
  CHECK(c.Phi[0] == 0.0);
  CHECK(c.singular[0] == 1);
  c = chart_of(0.0, 1.0);
  CHECK_THAT(c.theta[0], WithinAbs(kPi, 1e-15));
  CHECK(c.singular[0] == 1);
  const double r2 = 1.0 / std::sqrt(2.0);
  c = chart_of(std::polar(r2, -kPi / 4), std::polar(r2, kPi / 4));
  CHECK_THAT(c.theta[0], WithinAbs(kPi / 2, 1e-15));
  CHECK_THAT(c.phi[0], WithinAbs(kPi / 2, 1e-15));
  CHECK_THAT(c.Phi[0], WithinAbs(0.0, 1e-15));
  CHECK(c.singular[0] == 0);

  PolarChart p;
  p.lattice = lat;
  p.rho = {1.0, 1.0};
  p.Phi = {0.0, 0.0};
  p.theta = {0.0, kPi / 2};
  p.phi = {0.0, 0.0};
  const SpinorField f = amplitudes_from_polar(p);
  CHECK(std::abs(f.up()[0] - 1.0) < 1e-15);
  CHECK(std::abs(f.down()[0]) < 1e-15);
  CHECK(std::abs(f.up()[1] - r2) < 1e-15);
  CHECK(std::abs(f.down()[1] - r2) < 1e-15);
}

TEST_CASE("polar chart round trip", "[field][polar]") {
  std::mt19937_64 rng(6);
  Units units;
  units.hbar = 0.7;
  const Lattice lat({2.0, 2.0}, {8, 8});
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PolarChart p;
  p.lattice = lat;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    p.rho.push_back(0.1 + u(rng));
    p.Phi.push_back(units.hbar * (u(rng) - 0.5) * 2.0);
    p.theta.push_back(0.05 + (kPi - 0.1) * u(rng));
    p.phi.push_back(-kPi + 2.0 * kPi * u(rng));
  }
  const SpinorField f = amplitudes_from_polar(p, units);
  const PolarChart back = polar_from_amplitudes(f, units);
  const SpinorField g = amplitudes_from_polar(back, units);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    CHECK_THAT(back.rho[i], WithinRel(p.rho[i], 1e-12));
    CHECK_THAT(back.theta[i], WithinAbs(p.theta[i], 1e-10));
    CHECK_THAT(ga::wrap_angle(back.phi[i] - p.phi[i]), WithinAbs(0.0, 1e-10));
    CHECK(std::abs(g.up()[i] - f.up()[i]) < 1e-10);
    CHECK(std::abs(g.down()[i] - f.down()[i]) < 1e-10);
  }
}

TEST_CASE("Born extraction", "[field][born]") {
  const Lattice lat({1.0}, {4});
  const SpinorField up = SpinorField::sample(lat, [](const Vec3&) { return std::pair{Complex(1), Complex(0)}; });
  BornData b = born_extract(up);
  CHECK_THAT(b.rho[0], WithinAbs(1.0, 1e-15));
  CHECK((b.s[0] - Vec3{0, 0, 1}).norm() < 1e-15);
  const SpinorField down = SpinorField::sample(lat, [](const Vec3&) { return std::pair{Complex(0), Complex(1)}; });
  b = born_extract(down);
  CHECK((b.s[0] - Vec3{0, 0, -1}).norm() < 1e-15);

  std::mt19937_64 rng(7);
  Units units;
  units.hbar = 2.0;
  const Lattice big({3.0}, {64});
  const SpinorField f = random_field(big, rng);
  b = born_extract(f, units);
  CHECK(b.density_defect < 1e-12);
  for (std::size_t i = 0; i < big.size(); ++i) {
    const ga::Multivector psi = f.spinor_at(i).multivector();
    const ga::Multivector pp = psi * psi.reverse();
    // Psi Psi^dagger = rho (1 + s) has no grade 2 or 3.
    CHECK(pp.grade(2).max_abs() < 1e-12);
    CHECK(pp.grade(3).max_abs() < 1e-12);
    CHECK_THAT(b.s[i].norm(), WithinAbs(1.0, 1e-9));
    CHECK((b.spin_density[i] - b.s[i] * (0.5 * units.hbar * b.rho[i])).norm() < 1e-12);
  }
}

TEST_CASE("gauge transform", "[field][gauge]") {
  std::mt19937_64 rng(8);
  const Lattice lat({4.0}, {32});
  const SpinorField f = random_field(lat, rng);
  const std::vector<Vec3> A(lat.size(), Vec3{0.1, 0.2, 0.3});
  auto id = gauge_transform(f, A, std::vector<double>(lat.size(), 0.0), 1.0);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    CHECK(id.field.up()[i] == f.up()[i]);
    CHECK(id.vector_potential[i] == A[i]);
  }
  auto c = gauge_transform(f, A, std::vector<double>(lat.size(), 0.8), 0.5);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    CHECK((c.vector_potential[i] - A[i]).norm() < 1e-15);
  }
  CHECK(fs_distance(c.field, f) < 1e-14);
  CHECK_THAT(fs_optimal_phase(c.field, f), WithinAbs(0.4, 1e-12));
}

TEST_CASE("derivative stencils", "[field][derivatives]") {
  for (std::size_t n : {32u, 64u}) {
    const Lattice lat({2.0 * kPi}, {n});
    std::vector<double> f(n), df(n), d2f(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = lat.position(i).x;
      f[i] = std::sin(3.0 * x);
      df[i] = 3.0 * std::cos(3.0 * x);
      d2f[i] = -9.0 * std::sin(3.0 * x);
    }
    const auto spec = derivative(lat, f, 0, DerivativeScheme::kSpectral);
    const auto spec2 = second_derivative(lat, f, 0, DerivativeScheme::kSpectral);
    const auto cen = derivative(lat, f, 0);
    double es = 0, es2 = 0, ec = 0;
    for (std::size_t i = 0; i < n; ++i) {
      es = std::max(es, std::abs(spec[i] - df[i]));
      es2 = std::max(es2, std::abs(spec2[i] - d2f[i]));
      ec = std::max(ec, std::abs(cen[i] - df[i]));
    }
    CHECK(es < 1e-12);
    CHECK(es2 < 1e-11);
    // Central: error 3 (3h)^2/6 to leading order.
    const double h = lat.spacing(0);
    CHECK_THAT(ec, WithinRel(3.0 * 9.0 * h * h / 6.0, 0.05));
  }
}

TEST_CASE("vector calculus identities on the lattice", "[field][derivatives]") {
  std::mt19937_64 rng(9);
  const Lattice lat({3.0, 4.0}, {12, 16});
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> phi(lat.size());
  std::vector<Vec3> v(lat.size());
  for (std::size_t i = 0; i < lat.size(); ++i) {
    phi[i] = g(rng);
    v[i] = {g(rng), g(rng), g(rng)};
  }
  // Central differences commute, so curl grad = 0 and div curl = 0 exactly up to rounding.
  for (const Vec3& c : curl(lat, gradient(lat, phi))) CHECK(c.norm() < 1e-12);
  for (double d : divergence(lat, curl(lat, v))) CHECK(std::abs(d) < 1e-12);
}

TEST_CASE("FFT round trip", "[field][fft]") {
  std::mt19937_64 rng(10);
  const Lattice lat({1.0, 1.0}, {8, 6});
  FftPlan plan(lat);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> x(lat.size());
  for (Complex& c : x) c = {g(rng), g(rng)};
  std::vector<Complex> y = x;
  plan.forward(y);
  plan.inverse(y);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(x[i] - y[i]) < 1e-14);
}

TEST_CASE("snapshot binary and JSON round trips", "[field][snapshot]") {
  std::mt19937_64 rng(11);
  const Lattice lat({2.0, 3.0}, {4, 6});
  SpinorField f = random_field(lat, rng);
  f.set_time(1.25);
  std::stringstream ss;
  write_snapshot(ss, f);
  const std::string bytes = ss.str();
  CHECK(bytes.substr(0, 8) == std::string("EDSPIN1\0", 8));
  CHECK(bytes.size() == 8 + 4 + 2 * 24 + 8 + lat.size() * 32);
  const SpinorField g = read_snapshot(ss);
  CHECK(g.lattice() == lat);
  CHECK(g.time() == 1.25);
  CHECK(g.up() == f.up());
  CHECK(g.down() == f.down());

  const SpinorField h = snapshot_from_json(snapshot_to_json(f));
  CHECK(h.up() == f.up());
  CHECK(h.down() == f.down());
  CHECK(h.time() == 1.25);
  CHECK_THROWS_AS(snapshot_to_json(SpinorField(Lattice({1.0}, {5000}))), InvalidArgument);

  std::stringstream bad("NOTASNAP");
  CHECK_THROWS(read_snapshot(bad));
}
