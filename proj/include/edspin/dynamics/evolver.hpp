#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "edspin/common/units.hpp"
#include "edspin/dynamics/fields.hpp"
#include "edspin/dynamics/hamiltonian.hpp"
#include "edspin/field/spinor_field.hpp"

namespace edspin::dynamics {

enum class Scheme { kCrankNicolson, kSplitStep };
enum class LinearSolver { kDirect, kBicgstab };

struct EvolverConfig {
  double dt = 1e-3;
  Scheme scheme = Scheme::kCrankNicolson;
  // Crank-Nicolson only. The direct sparse LU is factored once per field segment.
  LinearSolver solver = LinearSolver::kDirect;
  double tolerance = 1e-12;
  int max_iterations = 1000;
  long max_steps = 100'000'000;
  // dt is flagged when it exceeds cfl_safety * m h^2 / hbar on the finest axis.
  double cfl_safety = 100.0;
};

// A warning message when dt exceeds the documented CFL-style bound; CN and split step stay
// stable beyond it but lose phase accuracy.
std::optional<std::string> cfl_warning(const EvolverConfig& cfg, const field::Lattice& lattice,
                                       const Units& units);

// Advances a spinor field under a field schedule. Fields are sampled at t + dt/2. Split step
// requires A = 0 and applies exp(-i W dt/2hbar) exp(-i T dt/hbar) exp(-i W dt/2hbar) with the
// kinetic factor exact in Fourier space.
class Evolver {
 public:
  Evolver(field::Lattice lattice, FieldSchedule schedule, Units units, EvolverConfig cfg);
  ~Evolver();
  Evolver(Evolver&&) noexcept;
  Evolver& operator=(Evolver&&) noexcept;

  const EvolverConfig& config() const { return cfg_; }
  const FieldSchedule& schedule() const { return schedule_; }
  const Units& units() const { return units_; }

  // One step of cfg.dt starting at psi.time().
  void step(field::SpinorField& psi);
  // Steps until psi.time() reaches t_end (the last step is shortened to land exactly).
  // `observer` sees the initial state and every `record_every`-th state.
  void run(field::SpinorField& psi, double t_end, int record_every,
           const std::function<void(const field::SpinorField&)>& observer);

 private:
  struct Impl;
  field::Lattice lattice_;
  FieldSchedule schedule_;
  Units units_;
  EvolverConfig cfg_;
  std::unique_ptr<Impl> impl_;
};

// Convenience wrapper returning the recorded series including the initial state.
std::vector<field::SpinorField> evolve(const field::SpinorField& psi, const FieldSchedule& schedule,
                                       const Units& units, const EvolverConfig& cfg, double t_end,
                                       int record_every = 1);

}  // namespace edspin::dynamics
