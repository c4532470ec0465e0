#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "catch_amalgamated.hpp"

#include "edspin/common/errors.hpp"
#include "edspin/field/polar.hpp"
#include "edspin/geometry/generators.hpp"
#include "edspin/geometry/phase_space.hpp"

using namespace edspin;
using namespace edspin::geometry;
using edspin::field::Lattice;
using edspin::field::SpinorField;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

SpinorField random_field(const Lattice& lat, std::mt19937_64& rng, bool normalized = false) {
  std::normal_distribution<double> g(0.0, 1.0);
  SpinorField f(lat);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    f.up()[i] = {g(rng), g(rng)};
    f.down()[i] = {g(rng), g(rng)};
  }
  if (normalized) f.normalize();
  return f;
}

Eigen::MatrixXcd random_hermitian(long n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd m(n, n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
  }
  return 0.5 * (m + m.adjoint());
}

// Differentials of the chart coordinates (rho, Phi, phi, rho_s) at one point along dpsi.
struct ChartDifferential {
  double rho, Phi, phi, rho_s;
};

ChartDifferential chart_differential(Complex up, Complex down, Complex dup, Complex ddown,
                                     double hbar) {
  // S_pm = hbar arg psi_pm, Phi = (S+ + S-)/2, phi = (S- - S+)/hbar,
  // rho_s = (hbar/2)(|psi+|^2 - |psi-|^2).
  const double dS_up = hbar * (dup / up).imag();
  const double dS_down = hbar * (ddown / down).imag();
  const double drho_up = 2.0 * (std::conj(up) * dup).real();
  const double drho_down = 2.0 * (std::conj(down) * ddown).real();
  return {drho_up + drho_down, 0.5 * (dS_up + dS_down), (dS_down - dS_up) / hbar,
          0.5 * hbar * (drho_up - drho_down)};
}

}  // namespace

TEST_CASE("slot layout and consistency", "[geometry]") {
  std::mt19937_64 rng(1);
  Units units;
  units.hbar = 0.6;
  const Lattice lat({2.0}, {8});
  const SpinorField f = random_field(lat, rng);
  const PhaseSpacePoint p = PhaseSpacePoint::from_field(f, units);
  CHECK(p.consistency_defect() == 0.0);
  for (std::size_t x = 0; x < lat.size(); ++x) {
    CHECK(p.slots[4 * x] == f.up()[x]);
    CHECK(p.slots[4 * x + 1] == Complex(0.0, units.hbar) * std::conj(f.up()[x]));
    CHECK(p.slots[4 * x + 2] == f.down()[x]);
  }
  const SpinorField back = p.to_field();
  CHECK(back.up() == f.up());
  CHECK(back.down() == f.down());
  CHECK(unstack(lat, stack(f)).down() == f.down());
}

TEST_CASE("symplectic form", "[geometry][omega]") {
  std::mt19937_64 rng(2);
  Units units;
  units.hbar = 0.8;
  const Lattice lat({3.0}, {12});
  const double w = lat.cell_weight();
  for (int n = 0; n < 20; ++n) {
    const auto v = TangentVector::from_differentials(random_field(lat, rng), units);
    const auto u = TangentVector::from_differentials(random_field(lat, rng), units);
    CHECK(omega_pair(v, v) == 0.0);
    CHECK_THAT(omega_pair(v, u), WithinAbs(-omega_pair(u, v), 1e-14));
  }

  // Canonical pair (rho_x, Phi_x): dpsi = psi/(2 rho) and dpsi = i psi/hbar at x only.
  const SpinorField base = random_field(lat, rng, true);
  const field::BornData born = field::born_extract(base);
  const std::size_t x = 5;
  SpinorField d_rho(lat), d_Phi(lat);
  d_rho.up()[x] = base.up()[x] / (2.0 * born.rho[x]);
  d_rho.down()[x] = base.down()[x] / (2.0 * born.rho[x]);
  d_Phi.up()[x] = Complex(0.0, 1.0 / units.hbar) * base.up()[x];
  d_Phi.down()[x] = Complex(0.0, 1.0 / units.hbar) * base.down()[x];
  const auto vr = TangentVector::from_differentials(d_rho, units);
  const auto vp = TangentVector::from_differentials(d_Phi, units);
  // The pairing of unit coordinate vectors is w^2 times the component 1/w.
  CHECK_THAT(omega_pair(vr, vp) / (w * w), WithinRel(1.0 / w, 1e-12));
}

TEST_CASE("symplectic form in chart coordinates", "[geometry][omega]") {
  std::mt19937_64 rng(3);
  Units units;
  units.hbar = 1.3;
  const Lattice lat({2.0}, {10});
  const SpinorField base = random_field(lat, rng, true);
  for (int n = 0; n < 10; ++n) {
    const SpinorField dv = random_field(lat, rng);
    const SpinorField du = random_field(lat, rng);
    double chart = 0.0;
    for (std::size_t i = 0; i < lat.size(); ++i) {
      const auto a = chart_differential(base.up()[i], base.down()[i], dv.up()[i], dv.down()[i], units.hbar);
      const auto b = chart_differential(base.up()[i], base.down()[i], du.up()[i], du.down()[i], units.hbar);
      chart += lat.cell_weight() * (a.rho * b.Phi - a.Phi * b.rho + a.phi * b.rho_s - a.rho_s * b.phi);
    }
    const double slots = omega_pair(TangentVector::from_differentials(dv, units),
                                    TangentVector::from_differentials(du, units));
    CHECK_THAT(slots, WithinAbs(chart, 1e-9 * std::max(1.0, std::abs(chart))));
  }
}

TEST_CASE("metric", "[geometry][metric]") {
  std::mt19937_64 rng(4);
  const Units units;
  const Lattice lat({2.0, 2.0}, {4, 4});
  for (int n = 0; n < 50; ++n) {
    const SpinorField dv = random_field(lat, rng);
    const SpinorField du = random_field(lat, rng);
    const auto v = TangentVector::from_differentials(dv, units);
    const auto u = TangentVector::from_differentials(du, units);
    CHECK(metric_pair(v, v) > 0.0);
    CHECK(metric_pair(v, u) == metric_pair(u, v));
    double direct = 0.0;
    for (std::size_t i = 0; i < lat.size(); ++i) {
      direct += lat.cell_weight() * (std::conj(dv.up()[i]) * du.up()[i] + std::conj(dv.down()[i]) * du.down()[i]).real();
    }
    CHECK_THAT(metric_pair(v, u), WithinAbs(direct, 1e-12));
  }
  // Single-point perturbation delta psi+ = eps.
  SpinorField d(lat);
  const Complex eps(0.3, -0.4);
  d.up()[7] = eps;
  const auto v = TangentVector::from_differentials(d, units);
  CHECK_THAT(metric_pair(v, v), WithinRel(lat.cell_weight() * std::norm(eps), 1e-14));
}

TEST_CASE("metric is Euclidean in real coordinates", "[geometry][metric]") {
  // In xi coordinates (psi+ = xi1 + i xi2, psi- = xi3 + i xi4) G = w * identity.
  const Units units;
  const Lattice lat({1.0}, {3});
  for (std::size_t a = 0; a < 4 * lat.size(); ++a) {
    for (std::size_t b = 0; b < 4 * lat.size(); ++b) {
      SpinorField da(lat), db(lat);
      auto set = [&](SpinorField& f, std::size_t k) {
        const std::size_t x = k / 4;
        const Complex unit = (k % 2 == 0) ? Complex(1, 0) : Complex(0, 1);
        if ((k / 2) % 2 == 0) f.up()[x] = unit; else f.down()[x] = unit;
      };
      set(da, a);
      set(db, b);
      const double g = metric_pair(TangentVector::from_differentials(da, units),
                                   TangentVector::from_differentials(db, units));
      CHECK(g == (a == b ? lat.cell_weight() : 0.0));
    }
  }
}

TEST_CASE("complex structure", "[geometry][J]") {
  std::mt19937_64 rng(5);
  Units units;
  units.hbar = 0.9;
  const Lattice lat({2.0}, {8});
  const PhaseSpacePoint at = PhaseSpacePoint::from_field(random_field(lat, rng, true), units);
  for (int n = 0; n < 20; ++n) {
    const auto v = TangentVector::from_differentials(random_field(lat, rng), units);
    const auto u = TangentVector::from_differentials(random_field(lat, rng), units);
    const auto jv = complex_structure(v);
    const auto jju = complex_structure(complex_structure(u));
    for (std::size_t s = 0; s < u.slots.size(); ++s) CHECK(jju.slots[s] == -u.slots[s]);
    CHECK(jv.consistency_defect() < 1e-15);
    CHECK_THAT(metric_pair(jv, complex_structure(u)), WithinAbs(metric_pair(v, u), 1e-12));
    CHECK_THAT(omega_pair(v, u), WithinAbs(2.0 * units.hbar * metric_pair(jv, u), 1e-12));
    const Complex ip = tangent_inner_product(v, u);
    CHECK_THAT(ip.real(), WithinAbs(metric_pair(v, u), 1e-12));
    CHECK_THAT(ip.imag(), WithinAbs(omega_pair(v, u) / (2.0 * units.hbar), 1e-12));
    // J maps TGF vectors to TGF vectors.
    const auto tgf = tgf_project(at, v);
    CHECK(tgf_flags(at, tgf).holds(1e-12));
    CHECK(tgf_flags(at, complex_structure(tgf)).holds(1e-12));
  }
}

TEST_CASE("geometry matrices", "[geometry][matrices]") {
  std::mt19937_64 rng(6);
  Units units;
  units.hbar = 1.7;
  const Lattice lat({2.0}, {6});
  const GeometryMatrices m = geometry_matrices(lat, units);
  const long n = m.omega.rows();
  CHECK((m.omega + m.omega.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((m.metric - m.metric.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((m.complex_structure * m.complex_structure + Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-14);
  for (int k = 0; k < 10; ++k) {
    const auto v = TangentVector::from_differentials(random_field(lat, rng), units);
    const auto u = TangentVector::from_differentials(random_field(lat, rng), units);
    CHECK_THAT(m.pair(m.omega, v, u), WithinAbs(omega_pair(v, u), 1e-12));
    CHECK_THAT(m.pair(m.metric, v, u), WithinAbs(metric_pair(v, u), 1e-12));
  }
  CHECK_THROWS_AS(omega_pair(TangentVector::from_differentials(SpinorField(lat), units),
                             TangentVector::from_differentials(SpinorField(Lattice({2.0}, {4})), units)),
                  LatticeMismatch);
}

TEST_CASE("inner product matches the geometric contraction", "[geometry]") {
  std::mt19937_64 rng(7);
  const Units units;
  const Lattice lat({2.0}, {8});
  const SpinorField a = random_field(lat, rng);
  const SpinorField b = random_field(lat, rng);
  const auto va = TangentVector::from_differentials(a, units);
  const auto vb = TangentVector::from_differentials(b, units);
  const Complex contraction = Complex(metric_pair(va, vb), omega_pair(va, vb) / (2.0 * units.hbar));
  CHECK(std::abs(field::inner_product(a, b) - contraction) < 1e-10);
}

TEST_CASE("TGF flags", "[geometry][tgf]") {
  std::mt19937_64 rng(8);
  const Units units;
  const Lattice lat({2.0}, {8});
  const SpinorField base = random_field(lat, rng, true);
  const PhaseSpacePoint at = PhaseSpacePoint::from_field(base, units);
  // The normalization direction psi is not tangent; i psi is pure gauge.
  const auto radial = TangentVector::from_differentials(base, units);
  const auto phase = TangentVector::from_differentials(base * Complex(0.0, 1.0), units);
  CHECK_THAT(tgf_flags(at, radial).tangency, WithinAbs(2.0, 1e-12));
  CHECK_THAT(tgf_flags(at, phase).tangency, WithinAbs(0.0, 1e-12));
  CHECK(std::abs(tgf_flags(at, phase).gauge) > 1.0);
  const auto v = TangentVector::from_differentials(random_field(lat, rng), units);
  CHECK(tgf_flags(at, tgf_project(at, v)).holds(1e-12));
}

TEST_CASE("Poisson brackets", "[geometry][poisson]") {
  std::mt19937_64 rng(9);
  Units units;
  units.hbar = 1.1;
  const Lattice lat({2.0}, {6});
  const double w = lat.cell_weight();
  const PhaseSpacePoint at = PhaseSpacePoint::from_field(random_field(lat, rng, true), units);
  const BilinearGenerator A(random_hermitian(12, rng), units.hbar);
  const BilinearGenerator B(random_hermitian(12, rng), units.hbar);
  const BilinearGenerator C(random_hermitian(12, rng), units.hbar);

  CHECK(std::abs(poisson_bracket(norm_functional(), A.functional(), at)) < 1e-12);
  const double ab = poisson_bracket(A.functional(), B.functional(), at);
  CHECK_THAT(poisson_bracket(B.functional(), A.functional(), at), WithinAbs(-ab, 1e-12));
  // The bracket of two bilinears is the bilinear of -i [A, B] / hbar.
  const BilinearGenerator AB = bracket_of_bilinears(A, B, units.hbar);
  CHECK_THAT(AB.value(stack(at.to_field()), w), WithinAbs(ab, 1e-10));

  const BilinearGenerator BC = bracket_of_bilinears(B, C, units.hbar);
  const BilinearGenerator CA = bracket_of_bilinears(C, A, units.hbar);
  const double jacobi = poisson_bracket(A.functional(), BC.functional(), at) +
                        poisson_bracket(B.functional(), CA.functional(), at) +
                        poisson_bracket(C.functional(), AB.functional(), at);
  CHECK(std::abs(jacobi) < 1e-9);

  for (std::size_t x = 0; x < lat.size(); ++x) {
    for (std::size_t y = 0; y < lat.size(); ++y) {
      const double pb = poisson_bracket(density_at(x), phase_at(y), at);
      CHECK_THAT(pb, WithinAbs(x == y ? 1.0 / w : 0.0, 1e-9));
    }
  }
  Functional missing{norm_functional().value, {}};
  CHECK_THROWS_AS(poisson_bracket(missing, A.functional(), at), GradientMissing);
}

TEST_CASE("normalization flow", "[geometry]") {
  std::mt19937_64 rng(10);
  Units units;
  units.hbar = 0.5;
  const Lattice lat({2.0}, {8});
  const SpinorField f = random_field(lat, rng, true);
  const PhaseSpacePoint start = PhaseSpacePoint::from_field(f, units);
  CHECK(normalization_flow(start, 0.0).slots == start.slots);
  const SpinorField neg = normalization_flow(start, kPi * units.hbar).to_field();
  const auto b0 = field::born_extract(f);
  const auto b1 = field::born_extract(neg);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    CHECK(std::abs(neg.up()[i] + f.up()[i]) < 1e-15);
    CHECK_THAT(b1.rho[i], WithinAbs(b0.rho[i], 1e-15));
    CHECK((b1.s[i] - b0.s[i]).norm() < 1e-14);
  }
  CHECK(field::fs_distance(f, normalization_flow(start, 0.37).to_field()) < 1e-14);
}

TEST_CASE("Hamilton-Killing flow battery", "[geometry][hk]") {
  std::mt19937_64 rng(11);
  const Units units;
  const Lattice lat({4.0}, {8});
  const PhaseSpacePoint start = PhaseSpacePoint::from_field(random_field(lat, rng, true), units);
  const auto v = TangentVector::from_differentials(random_field(lat, rng), units);
  const auto u = TangentVector::from_differentials(random_field(lat, rng), units);

  const BilinearGenerator identity(Eigen::MatrixXcd::Identity(16, 16), units.hbar, "identity");
  const HkFlowReport ri = hk_flow_test(identity, start, v, u);
  CHECK(ri.omega_drift < 1e-12);
  CHECK(ri.metric_drift < 1e-12);
  CHECK(ri.verdict == "killing");

  // Every bilinear in a fixed battery is Killing; the quartic is not.
  for (int k = 0; k < 5; ++k) {
    const BilinearGenerator g(random_hermitian(16, rng), units.hbar);
    const HkFlowReport r = hk_flow_test(g, start, v, u);
    CHECK(r.verdict == "killing");
    CHECK(r.fs_drift < 1e-10);
    CHECK(r.linearity_defect < 1e-12);
  }
  const QuarticGenerator quartic(1.0, units.hbar);
  HkFlowOptions rk;
  rk.stepper = FlowStepper::kRk4;
  const HkFlowReport rq = hk_flow_test(quartic, start, v, u, rk);
  CHECK(rq.verdict == "hamiltonian_non_killing");
  CHECK(rq.metric_drift >= 1e-3);
  CHECK(rq.norm_drift <= 1e-8);
  CHECK(rq.linearity_defect > 0.1);

  const auto j = rq.to_json();
  CHECK(j.at("generator_id") == "quartic");
  CHECK(j.contains("omega_drift"));
  CHECK(j.contains("metric_drift"));
  CHECK(j.contains("norm_drift"));
  CHECK(j.contains("verdict"));
}

TEST_CASE("RK4 flows preserve Omega to high order", "[geometry][hk]") {
  std::mt19937_64 rng(12);
  const Units units;
  const Lattice lat({4.0}, {8});
  const PhaseSpacePoint start = PhaseSpacePoint::from_field(random_field(lat, rng, true), units);
  const auto v = TangentVector::from_differentials(random_field(lat, rng), units);
  const auto u = TangentVector::from_differentials(random_field(lat, rng), units);
  const BilinearGenerator g(random_hermitian(16, rng), units.hbar);
  HkFlowOptions coarse;
  coarse.stepper = FlowStepper::kRk4;
  coarse.steps = 50;
  coarse.dlambda = 0.02;
  HkFlowOptions fine = coarse;
  fine.steps = 100;
  fine.dlambda = 0.01;
  const double dc = hk_flow_test(g, start, v, u, coarse).omega_drift;
  const double df = hk_flow_test(g, start, v, u, fine).omega_drift;
  CHECK(df < 1e-6);
  // At least second order in dlambda over a fixed flow length.
  CHECK(dc / df > 3.5);
}

TEST_CASE("linear generator breaks global gauge", "[geometry][hk]") {
  std::mt19937_64 rng(13);
  const Units units;
  const Lattice lat({4.0}, {8});
  const SpinorField f = random_field(lat, rng, true);
  const LinearGenerator g(stack(random_field(lat, rng)), units.hbar);
  CHECK(std::abs(norm_rate(g, stack(f), lat.cell_weight())) > 1e-3);
  const BilinearGenerator b(random_hermitian(16, rng), units.hbar);
  CHECK(std::abs(norm_rate(b, stack(f), lat.cell_weight())) < 1e-12);
}

TEST_CASE("generator validation", "[geometry][hk]") {
  std::mt19937_64 rng(14);
  const Units units;
  Eigen::MatrixXcd k = random_hermitian(4, rng);
  k(0, 1) += Complex(0.1, 0.0);
  CHECK_THROWS_AS(BilinearGenerator(k, units.hbar), NonHermitianKernel);
  const Lattice big({4.0}, {65});
  const PhaseSpacePoint start = PhaseSpacePoint::from_field(random_field(big, rng, true), units);
  const auto v = TangentVector::from_differentials(random_field(big, rng), units);
  const BilinearGenerator g(Eigen::MatrixXcd::Identity(130, 130), units.hbar);
  CHECK_THROWS_AS(hk_flow_test(g, start, v, v), InvalidArgument);
}
