#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "edspin/common/errors.hpp"
#include "edspin/dynamics/evolver.hpp"
#include "edspin/dynamics/hamiltonian.hpp"
#include "edspin/dynamics/observables.hpp"
#include "edspin/field/polar.hpp"
#include "edspin/ga/multivector.hpp"
#include "edspin/ga/rotor.hpp"
#include "edspin/geometry/phase_space.hpp"
#include "edspin/trajectories/trajectories.hpp"

namespace edspin::cli {

using nlohmann::json;
using field::Lattice;
using field::SpinorField;

namespace {

constexpr double kPi = std::numbers::pi;

class Suite {
 public:
  explicit Suite(std::string name) : name_(std::move(name)) {}
  void at_most(const std::string& check, double value, double limit) { add(check, value, limit, "<=", value <= limit); }
  void at_least(const std::string& check, double value, double limit) { add(check, value, limit, ">=", value >= limit); }
  void near(const std::string& check, double value, double target, double tol) {
    add(check, value, tol, "|value - " + std::to_string(target) + "| <=", std::abs(value - target) <= tol);
  }
  json result() const { return {{"suite", name_}, {"passed", passed_}, {"checks", checks_}}; }

 private:
  void add(const std::string& check, double value, double limit, const std::string& rel, bool ok) {
    checks_.push_back({{"name", check}, {"value", value}, {"limit", limit}, {"relation", rel}, {"passed", ok}});
    passed_ = passed_ && ok;
  }
  std::string name_;
  json checks_ = json::array();
  bool passed_ = true;
};

SpinorField random_field(const Lattice& lat, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  SpinorField f(lat);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    f.up()[i] = {g(rng), g(rng)};
    f.down()[i] = {g(rng), g(rng)};
  }
  return f;
}

SpinorField gaussian(const Lattice& lat, double x0, double sigma, double k0, double theta, double phi) {
  SpinorField f = SpinorField::sample(lat, [&](const Vec3& r) {
    const double x = r.x - x0;
    const Complex g = std::exp(Complex(-x * x / (4.0 * sigma * sigma), k0 * r.x));
    return std::pair{g * std::cos(0.5 * theta), g * std::polar(std::sin(0.5 * theta), phi)};
  });
  f.normalize();
  return f;
}

// Pauli matrices: e_k -> sigma_k, i -> i.
Eigen::Matrix2cd pauli_rep(const ga::Multivector& m) {
  const Complex I(0.0, 1.0);
  Eigen::Matrix2cd s1, s2, s3, id;
  s1 << 0, 1, 1, 0;
  s2 << 0, -I, I, 0;
  s3 << 1, 0, 0, -1;
  id.setIdentity();
  return m[ga::kScalar] * id + m[ga::kE1] * s1 + m[ga::kE2] * s2 + m[ga::kE3] * s3 +
         I * (m[ga::kE12] * s3 + m[ga::kE23] * s1 + m[ga::kE31] * s2 + m[ga::kPseudo] * id);
}

json algebra(const CheckSettings& cfg) {
  Suite s("algebra");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_real_distribution<double> pol(0.05, kPi - 0.05);
  auto random_mv = [&] {
    std::array<double, 8> c{};
    for (double& x : c) x = u(rng);
    return ga::Multivector(c);
  };
  double table = 0.0;
  for (std::size_t a = 0; a < 8; ++a) {
    for (std::size_t b = 0; b < 8; ++b) {
      const auto A = ga::Multivector::basis(a, 1.0);
      const auto B = ga::Multivector::basis(b, 1.0);
      table = std::max(table, (pauli_rep(A * B) - pauli_rep(A) * pauli_rep(B)).cwiseAbs().maxCoeff());
    }
  }
  s.at_most("basis products match the Pauli matrices", table, 0.0);
  double hom = 0.0, inv = 0.0, assoc = 0.0, unit = 0.0, spin = 0.0, trip = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const auto A = random_mv(), B = random_mv(), C = random_mv();
    hom = std::max(hom, (pauli_rep(A * B) - pauli_rep(A) * pauli_rep(B)).cwiseAbs().maxCoeff());
    inv = std::max({inv, ((A * B).reverse() - B.reverse() * A.reverse()).max_abs(),
                    ((A * B).spatial_inverse() - A.spatial_inverse() * B.spatial_inverse()).max_abs(),
                    (A.reverse().reverse() - A).max_abs()});
    assoc = std::max(assoc, ((A * B) * C - A * (B * C)).max_abs());
    const ga::EulerAngles e{pol(rng), ang(rng), ang(rng)};
    const ga::Rotor U = ga::rotor_from_euler(e);
    const auto& m = U.multivector();
    unit = std::max(unit, (m * m.reverse() - ga::Multivector::scalar(1.0)).max_abs());
    spin = std::max(spin, (ga::spin_vector(U) - ga::spin_direction(e.theta, e.phi)).norm());
    const auto back = ga::rotor_from_euler(ga::euler_from_rotor(U)).multivector();
    trip = std::max(trip, std::min((back - m).max_abs(), (back + m).max_abs()));
  }
  s.at_most("Pauli homomorphism on random multivectors", hom, 1e-12);
  s.at_most("reverse and spatial inverse", inv, 1e-12);
  s.at_most("associativity", assoc, 1e-12);
  s.at_most("rotor normalization U U~ = 1", unit, 1e-12);
  s.at_most("spin vector of a rotor", spin, 1e-12);
  s.at_most("Euler round trip up to sign", trip, 1e-12);
  return s.result();
}

json geometry_suite(const CheckSettings& cfg) {
  Suite s("geometry");
  std::mt19937_64 rng(cfg.seed);
  const Units units;
  const Lattice small({4.0}, {8});
  const auto gm = geometry::geometry_matrices(small, units);
  const long n = gm.omega.rows();
  s.at_most("J^2 + 1", (gm.complex_structure * gm.complex_structure + Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-14);
  s.at_most("Omega antisymmetry", (gm.omega + gm.omega.transpose()).cwiseAbs().maxCoeff(), 0.0);
  s.at_most("G symmetry", (gm.metric - gm.metric.transpose()).cwiseAbs().maxCoeff(), 0.0);
  double min_g = 1e300;
  for (int k = 0; k < 20; ++k) {
    const auto v = geometry::TangentVector::from_differentials(random_field(small, rng), units);
    min_g = std::min(min_g, geometry::metric_pair(v, v));
  }
  s.at_least("min G[V,V] over random tangents", min_g, 1e-300);

  const Lattice mid({8.0}, {16});
  SpinorField f = random_field(mid, rng);
  f.normalize();
  const auto start = geometry::PhaseSpacePoint::from_field(f, units);
  const auto v = geometry::TangentVector::from_differentials(random_field(mid, rng), units);
  const auto w = geometry::TangentVector::from_differentials(random_field(mid, rng), units);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd k(32, 32);
  for (int i = 0; i < 32; ++i) {
    for (int j = 0; j < 32; ++j) k(i, j) = {g(rng), g(rng)};
  }
  const geometry::BilinearGenerator bilinear(0.5 * (k + k.adjoint()), units.hbar, "random_hermitian");
  const auto rb = geometry::hk_flow_test(bilinear, start, v, w, cfg.flow);
  s.at_most("bilinear flow fs drift", rb.fs_drift, 1e-10);
  s.at_most("bilinear flow Omega drift", rb.omega_drift, 1e-10);
  s.at_most("bilinear flow metric drift", rb.metric_drift, 1e-10);

  const Lattice tiny({4.0}, {4});
  SpinorField q = random_field(tiny, rng);
  q.normalize();
  const auto qs = geometry::PhaseSpacePoint::from_field(q, units);
  const auto qv = geometry::TangentVector::from_differentials(random_field(tiny, rng), units);
  const auto qw = geometry::TangentVector::from_differentials(random_field(tiny, rng), units);
  geometry::HkFlowOptions qo = cfg.flow;
  qo.stepper = geometry::FlowStepper::kRk4;
  const auto rq = geometry::hk_flow_test(geometry::QuarticGenerator(cfg.quartic_coupling, units.hbar), qs, qv, qw, qo);
  s.at_least("quartic flow metric drift", rq.metric_drift, 1e-3);
  s.at_most("quartic flow norm drift", rq.norm_drift, 1e-8);
  return s.result();
}

// Smooth periodic polar state with A and its analytic curl on a 1-D lattice.
double identity_residual(std::size_t points) {
  const Lattice lat({10.0}, {points});
  const double k = 2.0 * kPi / lat.extent(0);
  const SpinorField psi = SpinorField::sample(lat, [&](const Vec3& r) {
    const double a = std::sqrt(1.0 + 0.4 * std::sin(k * r.x));
    const double Phi = 0.7 * std::sin(k * r.x);
    const double th = 1.1 + 0.5 * std::sin(k * r.x + 0.3);
    const double ph = 0.4 * std::cos(k * r.x) + 0.6 * std::sin(2.0 * k * r.x);
    return std::pair{std::polar(a * std::cos(0.5 * th), Phi - 0.5 * ph),
                     std::polar(a * std::sin(0.5 * th), Phi + 0.5 * ph)};
  });
  dynamics::ExternalFields ext;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const double x = lat.position(i).x;
    ext.A.push_back({0.3 * std::sin(k * x), 0.5 * std::cos(k * x), 0.2 * std::sin(2.0 * k * x)});
    ext.B.push_back({0.0, -0.4 * k * std::cos(2.0 * k * x), -0.5 * k * std::sin(k * x)});
  }
  return dynamics::appendix_c_identity(psi, ext, Units{}).max_residual;
}

json identity(const CheckSettings&) {
  Suite s("identity");
  const double coarse = identity_residual(128);
  const double fine = identity_residual(256);
  s.at_most("residual at 128 points", coarse, 1e-1);
  s.near("refinement ratio 128 -> 256", coarse / fine, 4.0, 0.5);
  return s.result();
}

json conservation(const CheckSettings&) {
  Suite s("conservation");
  const Units units;
  const Lattice lat({40.0}, {256});
  dynamics::ExternalFields ext;
  ext.B.assign(lat.size(), Vec3{0.5, 0.0, 0.2});
  for (std::size_t i = 0; i < lat.size(); ++i) ext.V.push_back(0.02 * std::pow(lat.position(i).x, 2));
  dynamics::EvolverConfig cfg;
  cfg.dt = 1e-3;
  dynamics::Evolver ev(lat, dynamics::FieldSchedule(ext), units, cfg);
  SpinorField psi = gaussian(lat, -2.0, 1.0, 1.0, kPi / 3.0, 0.5);
  const double e0 = dynamics::energy(psi, ext, units);
  double prev = psi.norm(), norm_step = 0.0, drift = 0.0;
  for (int k = 0; k < 1000; ++k) {
    ev.step(psi);
    norm_step = std::max(norm_step, std::abs(psi.norm() - prev));
    prev = psi.norm();
    drift = std::max(drift, std::abs(dynamics::energy(psi, ext, units) - e0) / std::abs(e0));
  }
  s.at_most("norm change per step", norm_step, 1e-10);
  s.at_most("relative energy drift over 1000 steps", drift, 1e-6);
  auto continuity = [&](std::size_t n, double dt) {
    const Lattice l({20.0}, {n});
    dynamics::EvolverConfig c;
    c.dt = dt;
    const auto series = dynamics::evolve(gaussian(l, -2.0, 1.0, 1.0, 0.5, 0.0), dynamics::FieldSchedule{}, units, c, 0.5);
    return dynamics::continuity_residual(series, {}, units);
  };
  s.near("continuity residual refinement ratio", continuity(128, 0.02) / continuity(256, 0.01), 4.0, 0.5);
  return s.result();
}

double reversal(const dynamics::ExternalFields& ext, const Lattice& lat, const SpinorField& psi0, double T) {
  const Units units;
  dynamics::EvolverConfig cfg;
  cfg.dt = 1e-3;
  SpinorField psi = psi0;
  dynamics::Evolver(lat, dynamics::FieldSchedule(ext), units, cfg).run(psi, T, 1 << 30, nullptr);
  SpinorField back = dynamics::time_reverse(psi);
  back.set_time(0.0);
  dynamics::Evolver(lat, dynamics::FieldSchedule(dynamics::reverse_fields(ext)), units, cfg).run(back, T, 1 << 30, nullptr);
  return field::fs_distance(back, dynamics::time_reverse(psi0));
}

json timereversal(const CheckSettings&) {
  Suite s("timereversal");
  const Units units;
  const Lattice lat({20.0}, {64});
  const double k = 2.0 * kPi / lat.extent(0);
  dynamics::ExternalFields ext;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const double x = lat.position(i).x;
    ext.V.push_back(0.05 * x * x);
    ext.A.push_back({0.2 * std::cos(k * x), std::sin(k * x), 0.8 * std::cos(2.0 * k * x)});
  }
  const SpinorField psi0 = gaussian(lat, -1.0, 1.0, 1.0, kPi / 3.0, 0.7);
  s.at_most("kappa_e = 0: fs distance after forward and reversed runs", reversal(ext, lat, psi0, 1.0), 1e-8);
  double zeeman = 0.0;
  for (const Vec3& b : ext.magnetic_field(lat)) zeeman = std::max(zeeman, 0.5 * b.norm());
  dynamics::ExternalFields dipole = ext;
  dipole.kappa_e = 1.0;
  dipole.E.assign(lat.size(), Vec3{zeeman, 0.0, 0.0});
  s.at_least("kappa_e != 0: fs distance after forward and reversed runs", reversal(dipole, lat, psi0, 1.0), 1e-3);
  return s.result();
}

json born(const CheckSettings& cfg) {
  Suite s("born");
  const Units units;
  const Lattice lat({40.0}, {256});
  SpinorField psi = gaussian(lat, -3.0, 1.0, 1.0, kPi / 4.0, 0.0);
  dynamics::EvolverConfig ec;
  ec.dt = 5e-3;
  ec.scheme = dynamics::Scheme::kSplitStep;
  dynamics::Evolver ev(lat, dynamics::FieldSchedule{}, units, ec);
  trajectories::VelocityHistory history(lat);
  std::vector<SpinorField> checkpoints;
  for (double t : {0.5, 1.0, 2.0}) {
    ev.run(psi, t, 1, [&](const SpinorField& f) {
      if (history.times().empty() || f.time() > history.times().back()) {
        history.add(f.time(), trajectories::velocity_field(f, {}, units, field::DerivativeScheme::kSpectral));
      }
    });
    checkpoints.push_back(psi);
  }
  auto ens = trajectories::sample_ensemble(lat, field::born_extract(gaussian(lat, -3.0, 1.0, 1.0, kPi / 4.0, 0.0)).rho,
                                           20000, cfg.seed);
  double t = 0.0;
  for (const auto& f : checkpoints) {
    trajectories::propagate_ensemble(ens, history, t, f.time(), 5e-3);
    t = f.time();
    const auto rep = trajectories::born_statistics(ens, lat, field::born_extract(f).rho, 0.01);
    s.at_least("chi-square p-value at t = " + std::to_string(t).substr(0, 3), rep.p_value, 0.01);
  }
  return s.result();
}

}  // namespace

std::vector<std::string> check_suite_names() {
  return {"algebra", "geometry", "identity", "conservation", "timereversal", "born"};
}

json run_check_suite(const std::string& name, const CheckSettings& settings) {
  if (name == "algebra") return algebra(settings);
  if (name == "geometry") return geometry_suite(settings);
  if (name == "identity") return identity(settings);
  if (name == "conservation") return conservation(settings);
  if (name == "timereversal") return timereversal(settings);
  if (name == "born") return born(settings);
  throw InvalidArgument("unknown check suite " + name);
}

}  // namespace edspin::cli
