#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "json.hpp"

#include "edspin/common/units.hpp"
#include "edspin/common/vec3.hpp"
#include "edspin/dynamics/fields.hpp"
#include "edspin/field/derivatives.hpp"
#include "edspin/field/lattice.hpp"
#include "edspin/field/spinor_field.hpp"

namespace edspin::trajectories {

// Multilinear interpolation on the periodic lattice; x is wrapped first.
double interpolate(const field::Lattice& lattice, const std::vector<double>& f, const Vec3& x);
Vec3 interpolate(const field::Lattice& lattice, const std::vector<Vec3>& f, const Vec3& x);

// Velocity frames at increasing times; multilinear in space, linear in time. Queries outside
// the stored time range clamp to the end frames.
class VelocityHistory {
 public:
  explicit VelocityHistory(field::Lattice lattice) : lattice_(std::move(lattice)) {}
  void add(double t, std::vector<Vec3> v);
  Vec3 at(const Vec3& x, double t) const;
  const field::Lattice& lattice() const { return lattice_; }
  const std::vector<double>& times() const { return times_; }

 private:
  field::Lattice lattice_;
  std::vector<double> times_;
  std::vector<std::vector<Vec3>> frames_;
};

using VelocityFn = std::function<Vec3(const Vec3&, double)>;

struct Path {
  std::vector<double> t;
  std::vector<Vec3> x;
  // Set when the path left the fundamental cell and was wrapped back.
  bool left_domain = false;
};

// RK4 for dx/dt = v(x, t) from t0 to t1 with step dt (the last step is shortened). With a
// lattice, positions are wrapped periodically after each step.
Path integrate_trajectory(const Vec3& start, const VelocityFn& velocity, double t0, double t1,
                          double dt, const field::Lattice* wrap = nullptr);

struct SubQuantumParams {
  // eta in action units; the default eta = hbar is set by callers from Units.
  double eta = 1.0;
  double dt_sub = 1e-3;
  double gamma = 0.5;

  // Throws InvalidArgument for gamma != 1/2 or non-positive eta / dt_sub.
  void validate() const;
  double alpha(const Units& u) const { return u.mass / (eta * dt_sub * dt_sub * dt_sub); }
  double alpha_prime(const Units& u) const { return u.hbar / (eta * dt_sub * dt_sub); }
  double beta(const Units& u) const { return u.charge / (u.hbar * u.c); }
  // Per-axis variance (eta/m) dt^3 of the fluctuation.
  double variance(const Units& u) const { return eta / u.mass * dt_sub * dt_sub * dt_sub; }
};

// x + v(x, t) dt + dw with dw Gaussian, zero mean, variance (eta/m) dt^3 on each of the
// first `dim` axes.
Vec3 sample_subquantum_step(const Vec3& x, double t, const VelocityFn& velocity,
                            const SubQuantumParams& params, const Units& units, int dim,
                            std::mt19937_64& rng);

// Independent stream for particle `index`, identical in serial and parallel runs.
std::mt19937_64 particle_rng(std::uint64_t seed, std::uint64_t index);

// Runs fn(i) for i in [0, n) on `threads` workers with static contiguous chunks.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

struct Ensemble {
  std::vector<Vec3> positions;
  std::uint64_t seed = 0;
  // Fraction of proposals accepted when rejection sampling was used (1 for inverse CDF).
  double acceptance_rate = 1.0;
};

// Positions distributed per the multilinear interpolant of rho. 1-D lattices use the inverse
// CDF; higher dimensions use rejection sampling.
Ensemble sample_ensemble(const field::Lattice& lattice, const std::vector<double>& rho,
                         std::size_t count, std::uint64_t seed, int threads = 1);

// Moves every particle along the velocity history from t0 to t1.
void propagate_ensemble(Ensemble& ensemble, const VelocityHistory& history, double t0, double t1,
                        double dt, int threads = 1);

// Expected per-cell probability for the multilinear interpolant of rho over the cell centred
// on each lattice point.
std::vector<double> cell_probabilities(const field::Lattice& lattice, const std::vector<double>& rho);

struct BornReport {
  std::vector<std::size_t> histogram;
  std::vector<double> expected;
  double chi2 = 0.0;
  int dof = 0;
  double p_value = 0.0;
  // Total variation distance between the empirical and expected bin distributions.
  double distance = 0.0;
  bool passed = false;

  nlohmann::json to_json() const;
};

// Chi-square goodness of fit of the positions against rho. Lattice cells are merged in flat
// order until every bin expects at least `min_expected` counts.
BornReport born_statistics(const Ensemble& ensemble, const field::Lattice& lattice,
                           const std::vector<double>& rho, double significance = 0.01,
                           double min_expected = 5.0);

// Velocity field used for trajectories: drift velocity at every lattice point.
std::vector<Vec3> velocity_field(const field::SpinorField& psi, const dynamics::ExternalFields& ext,
                                 const Units& units, field::DerivativeScheme scheme,
                                 double rho_floor = 1e-300);

}  // namespace edspin::trajectories
