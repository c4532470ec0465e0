#include "edspin/dynamics/evolver.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

#include <cmath>
#include <sstream>

#include "edspin/common/errors.hpp"
#include "edspin/field/fft.hpp"
#include "edspin/geometry/phase_space.hpp"

namespace edspin::dynamics {

namespace {

constexpr Complex kI{0.0, 1.0};

}  // namespace

std::optional<std::string> cfl_warning(const EvolverConfig& cfg, const field::Lattice& lattice,
                                       const Units& units) {
  double h_min = lattice.spacing(0);
  for (int a = 1; a < lattice.dim(); ++a) h_min = std::min(h_min, lattice.spacing(a));
  const double bound = cfg.cfl_safety * units.mass * h_min * h_min / units.hbar;
  if (cfg.dt <= bound) return std::nullopt;
  std::ostringstream os;
  os << "CFL warning: dt = " << cfg.dt << " exceeds " << bound << " (safety " << cfg.cfl_safety
     << " x m h^2 / hbar)";
  return os.str();
}

struct Evolver::Impl {
  // Crank-Nicolson cache, keyed by field segment and step length.
  int cached_segment = -2;
  double cached_dt = 0.0;
  SparseMatrix rhs_operator;
  SparseMatrix lhs_operator;
  Eigen::SparseLU<SparseMatrix> lu;
  Eigen::BiCGSTAB<SparseMatrix, Eigen::DiagonalPreconditioner<Complex>> bicgstab;

  // Split-step state.
  std::unique_ptr<field::FftPlan> fft;
  double kinetic_dt = 0.0;
  std::vector<Complex> kinetic_phase;
  int potential_segment = -2;
  double potential_dt = 0.0;
  // Per point 2x2 unitary exp(-i W dt / 2 hbar) as (u00, u01, u10, u11).
  std::vector<std::array<Complex, 4>> half_potential;
};

Evolver::Evolver(field::Lattice lattice, FieldSchedule schedule, Units units, EvolverConfig cfg)
    : lattice_(std::move(lattice)),
      schedule_(std::move(schedule)),
      units_(units),
      cfg_(cfg),
      impl_(std::make_unique<Impl>()) {
  if (!(cfg_.dt > 0.0)) throw InvalidArgument("dt must be positive");
  schedule_.validate(lattice_);
  if (cfg_.scheme == Scheme::kSplitStep) {
    if (schedule_.base().has_vector_potential()) {
      throw InvalidArgument("split step requires A = 0");
    }
    for (const auto& s : schedule_.segments()) {
      if (s.fields.has_vector_potential()) throw InvalidArgument("split step requires A = 0");
    }
  }
}

Evolver::~Evolver() = default;
Evolver::Evolver(Evolver&&) noexcept = default;
Evolver& Evolver::operator=(Evolver&&) noexcept = default;

void Evolver::step(field::SpinorField& psi) {
  field::require_same(lattice_, psi.lattice(), "evolver step");
  const double t = psi.time();
  const double dt = cfg_.dt;
  const int segment = schedule_.segment_at(t + 0.5 * dt);
  const ExternalFields& ext = schedule_.at(t + 0.5 * dt);
  Impl& m = *impl_;

  if (cfg_.scheme == Scheme::kCrankNicolson) {
    if (segment != m.cached_segment || dt != m.cached_dt) {
      const SparseMatrix h = hamiltonian_matrix(lattice_, ext, units_);
      SparseMatrix id(h.rows(), h.cols());
      id.setIdentity();
      const Complex c = kI * dt / (2.0 * units_.hbar);
      m.lhs_operator = id + c * h;
      m.rhs_operator = id - c * h;
      m.lhs_operator.makeCompressed();
      if (cfg_.solver == LinearSolver::kDirect) {
        m.lu.compute(m.lhs_operator);
        if (m.lu.info() != Eigen::Success) throw SolverDiverged("sparse LU factorization failed");
      } else {
        m.bicgstab.setTolerance(cfg_.tolerance);
        m.bicgstab.setMaxIterations(cfg_.max_iterations);
        m.bicgstab.compute(m.lhs_operator);
      }
      m.cached_segment = segment;
      m.cached_dt = dt;
    }
    const Eigen::VectorXcd rhs = m.rhs_operator * geometry::stack(psi);
    Eigen::VectorXcd next;
    if (cfg_.solver == LinearSolver::kDirect) {
      next = m.lu.solve(rhs);
    } else {
      next = m.bicgstab.solveWithGuess(rhs, geometry::stack(psi));
      if (m.bicgstab.info() != Eigen::Success) {
        throw SolverDiverged("BiCGSTAB did not reach " + std::to_string(cfg_.tolerance) + " in " +
                             std::to_string(cfg_.max_iterations) + " iterations");
      }
    }
    psi = geometry::unstack(lattice_, next);
    psi.set_time(t + dt);
    return;
  }

  // Split step.
  const std::size_t n = lattice_.size();
  if (!m.fft) m.fft = std::make_unique<field::FftPlan>(lattice_);
  if (dt != m.kinetic_dt) {
    m.kinetic_phase.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto idx = lattice_.multi_index(i);
      double k2 = 0.0;
      for (int a = 0; a < lattice_.dim(); ++a) {
        const double k = lattice_.wavenumber(a, idx[a]);
        k2 += k * k;
      }
      m.kinetic_phase[i] = std::polar(1.0, -units_.hbar * k2 * dt / (2.0 * units_.mass));
    }
    m.kinetic_dt = dt;
  }
  if (segment != m.potential_segment || dt != m.potential_dt) {
    const auto b = spin_coupling(lattice_, ext, units_, HamiltonianPart::kFull);
    m.half_potential.resize(n);
    const double tau = 0.5 * dt / units_.hbar;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = ext.V.empty() ? 0.0 : ext.V[i];
      const Complex scalar = std::polar(1.0, -v * tau);
      const double bn = b[i].norm();
      const double c = std::cos(bn * tau);
      const double s = bn > 0.0 ? std::sin(bn * tau) / bn : tau;
      // exp(-i tau b.sigma) = cos(|b| tau) - i sin(|b| tau) b_hat.sigma.
      m.half_potential[i] = {scalar * Complex(c, -s * b[i].z),
                             scalar * (-kI * s * Complex(b[i].x, -b[i].y)),
                             scalar * (-kI * s * Complex(b[i].x, b[i].y)),
                             scalar * Complex(c, s * b[i].z)};
    }
    m.potential_segment = segment;
    m.potential_dt = dt;
  }
  auto apply_half = [&]() {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& u = m.half_potential[i];
      const Complex a = psi.up()[i];
      const Complex d = psi.down()[i];
      psi.up()[i] = u[0] * a + u[1] * d;
      psi.down()[i] = u[2] * a + u[3] * d;
    }
  };
  apply_half();
  for (auto* comp : {&psi.up(), &psi.down()}) {
    m.fft->forward(*comp);
    for (std::size_t i = 0; i < n; ++i) (*comp)[i] *= m.kinetic_phase[i];
    m.fft->inverse(*comp);
  }
  apply_half();
  psi.set_time(t + dt);
}

void Evolver::run(field::SpinorField& psi, double t_end, int record_every,
                  const std::function<void(const field::SpinorField&)>& observer) {
  if (!psi.is_normalized(1e-8)) throw NotNormalized("initial state of evolve");
  if (record_every < 1) record_every = 1;
  if (observer) observer(psi);
  const double nominal = cfg_.dt;
  long count = 0;
  // Steps whose remainder is below this fraction of dt are merged into the previous one.
  const double slack = 1e-9 * nominal;
  while (psi.time() < t_end - slack) {
    if (++count > cfg_.max_steps) throw InvalidArgument("max_steps exceeded");
    const double remaining = t_end - psi.time();
    cfg_.dt = remaining < nominal + slack ? remaining : nominal;
    step(psi);
    cfg_.dt = nominal;
    const bool last = psi.time() >= t_end - slack;
    if (observer && (count % record_every == 0 || last)) observer(psi);
  }
}

std::vector<field::SpinorField> evolve(const field::SpinorField& psi, const FieldSchedule& schedule,
                                       const Units& units, const EvolverConfig& cfg, double t_end,
                                       int record_every) {
  Evolver ev(psi.lattice(), schedule, units, cfg);
  std::vector<field::SpinorField> series;
  field::SpinorField state = psi;
  ev.run(state, t_end, record_every, [&](const field::SpinorField& f) { series.push_back(f); });
  return series;
}

}  // namespace edspin::dynamics
