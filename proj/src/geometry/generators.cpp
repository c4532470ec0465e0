#include "edspin/geometry/generators.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "edspin/common/errors.hpp"

namespace edspin::geometry {

namespace {

constexpr Complex kI{0.0, 1.0};

double stacked_norm(const Eigen::VectorXcd& psi, double w) { return w * psi.squaredNorm(); }

// G[V,U] and Omega[V,U] from stacked differentials.
double metric_stacked(const Eigen::VectorXcd& v, const Eigen::VectorXcd& u, double w) {
  return w * v.dot(u).real();
}

double omega_stacked(const Eigen::VectorXcd& v, const Eigen::VectorXcd& u, double w,
                     double hbar) {
  return 2.0 * hbar * w * v.dot(u).imag();
}

double fs_stacked(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, double w) {
  const Complex ba = b.dot(a);
  const Complex phase = std::abs(ba) == 0.0 ? Complex(1.0) : ba / std::abs(ba);
  return w * (a - b * phase).squaredNorm();
}

struct FlowState {
  Eigen::VectorXcd psi;
  Eigen::VectorXcd v;
  Eigen::VectorXcd u;
  Eigen::VectorXcd neighbour;
};

FlowState derivative(const Generator& g, const FlowState& s) {
  return {g.velocity(s.psi), g.tangent_velocity(s.psi, s.v), g.tangent_velocity(s.psi, s.u),
          g.velocity(s.neighbour)};
}

FlowState axpy(const FlowState& s, const FlowState& k, double h) {
  return {s.psi + h * k.psi, s.v + h * k.v, s.u + h * k.u, s.neighbour + h * k.neighbour};
}

FlowState rk4_step(const Generator& g, const FlowState& s, double h) {
  const FlowState k1 = derivative(g, s);
  const FlowState k2 = derivative(g, axpy(s, k1, 0.5 * h));
  const FlowState k3 = derivative(g, axpy(s, k2, 0.5 * h));
  const FlowState k4 = derivative(g, axpy(s, k3, h));
  FlowState out = s;
  out.psi += (h / 6.0) * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi);
  out.v += (h / 6.0) * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
  out.u += (h / 6.0) * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
  out.neighbour += (h / 6.0) * (k1.neighbour + 2.0 * k2.neighbour + 2.0 * k3.neighbour + k4.neighbour);
  return out;
}

Eigen::VectorXcd stacked_differentials(const TangentVector& t) {
  return stack(t.differentials());
}

}  // namespace

Eigen::MatrixXcd Generator::propagator(double) const {
  throw InvalidArgument("generator " + id() + " has no exact propagator");
}

BilinearGenerator::BilinearGenerator(Eigen::MatrixXcd kernel, double hbar, std::string id,
                                     double tolerance)
    : kernel_(std::move(kernel)), hbar_(hbar), id_(std::move(id)) {
  if (kernel_.rows() != kernel_.cols()) throw NonHermitianKernel("kernel is not square");
  const double defect = (kernel_ - kernel_.adjoint()).cwiseAbs().maxCoeff();
  if (defect > tolerance) throw NonHermitianKernel("|K - K^dagger| = " + std::to_string(defect));
}

double BilinearGenerator::value(const Eigen::VectorXcd& psi, double w) const {
  return w * psi.dot(kernel_ * psi).real();
}

Eigen::VectorXcd BilinearGenerator::velocity(const Eigen::VectorXcd& psi) const {
  return (kernel_ * psi) / (kI * hbar_);
}

Eigen::VectorXcd BilinearGenerator::tangent_velocity(const Eigen::VectorXcd&,
                                                     const Eigen::VectorXcd& dpsi) const {
  return velocity(dpsi);
}

Eigen::MatrixXcd BilinearGenerator::propagator(double dlambda) const {
  const Eigen::MatrixXcd a = (-kI * dlambda / hbar_) * kernel_;
  return a.exp();
}

Functional BilinearGenerator::functional() const {
  const Eigen::MatrixXcd k = kernel_;
  Functional f;
  f.value = [k](const PhaseSpacePoint& p) {
    return p.lattice.cell_weight() * stack(p.to_field()).dot(k * stack(p.to_field())).real();
  };
  // Q = w sum p_x K_xy q_y / (i hbar): dQ/dq = K^T p / (i hbar), dQ/dp = K q / (i hbar),
  // both already divided by w for the functional derivative.
  f.gradient = [k](const PhaseSpacePoint& p) {
    const auto n = static_cast<Eigen::Index>(p.points());
    Eigen::VectorXcd q(2 * n);
    Eigen::VectorXcd mom(2 * n);
    for (Eigen::Index x = 0; x < n; ++x) {
      q[x] = p.slots[4 * x];
      q[n + x] = p.slots[4 * x + 2];
      mom[x] = p.slots[4 * x + 1];
      mom[n + x] = p.slots[4 * x + 3];
    }
    const Eigen::VectorXcd dq = k.transpose() * mom / (kI * p.hbar);
    const Eigen::VectorXcd dp = k * q / (kI * p.hbar);
    std::vector<Complex> g(p.slots.size());
    for (Eigen::Index x = 0; x < n; ++x) {
      g[4 * x] = dq[x];
      g[4 * x + 1] = dp[x];
      g[4 * x + 2] = dq[n + x];
      g[4 * x + 3] = dp[n + x];
    }
    return g;
  };
  return f;
}

double QuarticGenerator::value(const Eigen::VectorXcd& psi, double w) const {
  const Eigen::Index n = psi.size() / 2;
  double s = 0.0;
  for (Eigen::Index x = 0; x < n; ++x) s += std::norm(psi[x]) * std::norm(psi[n + x]);
  return k_ * w * s;
}

Eigen::VectorXcd QuarticGenerator::velocity(const Eigen::VectorXcd& psi) const {
  const Eigen::Index n = psi.size() / 2;
  Eigen::VectorXcd out(psi.size());
  for (Eigen::Index x = 0; x < n; ++x) {
    out[x] = k_ * std::norm(psi[n + x]) * psi[x] / (kI * hbar_);
    out[n + x] = k_ * std::norm(psi[x]) * psi[n + x] / (kI * hbar_);
  }
  return out;
}

Eigen::VectorXcd QuarticGenerator::tangent_velocity(const Eigen::VectorXcd& psi,
                                                    const Eigen::VectorXcd& dpsi) const {
  const Eigen::Index n = psi.size() / 2;
  Eigen::VectorXcd out(psi.size());
  for (Eigen::Index x = 0; x < n; ++x) {
    const Complex up = psi[x];
    const Complex down = psi[n + x];
    const double d_up2 = 2.0 * (std::conj(up) * dpsi[x]).real();
    const double d_down2 = 2.0 * (std::conj(down) * dpsi[n + x]).real();
    out[x] = k_ * (d_down2 * up + std::norm(down) * dpsi[x]) / (kI * hbar_);
    out[n + x] = k_ * (d_up2 * down + std::norm(up) * dpsi[n + x]) / (kI * hbar_);
  }
  return out;
}

double LinearGenerator::value(const Eigen::VectorXcd& psi, double w) const {
  return 2.0 * w * a_.dot(psi).real();
}

Eigen::VectorXcd LinearGenerator::velocity(const Eigen::VectorXcd&) const {
  return a_ / (kI * hbar_);
}

Eigen::VectorXcd LinearGenerator::tangent_velocity(const Eigen::VectorXcd&,
                                                   const Eigen::VectorXcd& dpsi) const {
  return Eigen::VectorXcd::Zero(dpsi.size());
}

BilinearGenerator bracket_of_bilinears(const BilinearGenerator& a, const BilinearGenerator& b,
                                       double hbar) {
  const Eigen::MatrixXcd c = a.kernel() * b.kernel() - b.kernel() * a.kernel();
  return BilinearGenerator((-kI / hbar) * c, hbar, "{" + a.id() + "," + b.id() + "}", 1e-9);
}

double norm_rate(const Generator& g, const Eigen::VectorXcd& psi, double w) {
  return 2.0 * w * psi.dot(g.velocity(psi)).real();
}

nlohmann::json HkFlowReport::to_json() const {
  return {{"generator_id", generator_id}, {"steps", steps},
          {"dlambda", dlambda},           {"omega_drift", omega_drift},
          {"metric_drift", metric_drift}, {"norm_drift", norm_drift},
          {"fs_drift", fs_drift},         {"linearity_defect", linearity_defect},
          {"verdict", verdict}};
}

HkFlowReport hk_flow_test(const Generator& g, const PhaseSpacePoint& start, const TangentVector& v,
                          const TangentVector& u, const HkFlowOptions& options) {
  if (start.points() > kMaxHkLatticePoints) {
    throw InvalidArgument("hk_flow_test is limited to 64 lattice points");
  }
  field::require_same(start.lattice, v.lattice, "hk_flow_test tangent");
  field::require_same(start.lattice, u.lattice, "hk_flow_test tangent");
  const double w = start.lattice.cell_weight();
  const double hbar = start.hbar;

  FlowState s{stack(start.to_field()), stacked_differentials(v), stacked_differentials(u), {}};
  s.neighbour = s.psi + options.neighbour_offset * s.v;
  s.neighbour /= std::sqrt(stacked_norm(s.neighbour, w));

  const double omega0 = omega_stacked(s.v, s.u, w, hbar);
  const double metric0 = metric_stacked(s.v, s.u, w);
  const double norm0 = stacked_norm(s.psi, w);
  const double fs0 = fs_stacked(s.psi, s.neighbour, w);

  const bool exact = options.stepper == FlowStepper::kExponential && g.has_exponential();
  if (exact) {
    const Eigen::MatrixXcd p = g.propagator(options.dlambda);
    for (int k = 0; k < options.steps; ++k) {
      s.psi = p * s.psi;
      s.v = p * s.v;
      s.u = p * s.u;
      s.neighbour = p * s.neighbour;
    }
  } else {
    for (int k = 0; k < options.steps; ++k) s = rk4_step(g, s, options.dlambda);
  }

  HkFlowReport r;
  r.generator_id = g.id();
  r.steps = options.steps;
  r.dlambda = options.dlambda;
  r.omega_drift = std::abs(omega_stacked(s.v, s.u, w, hbar) - omega0);
  r.metric_drift = std::abs(metric_stacked(s.v, s.u, w) - metric0);
  r.norm_drift = std::abs(stacked_norm(s.psi, w) - norm0);
  r.fs_drift = std::abs(fs_stacked(s.psi, s.neighbour, w) - fs0);
  const Eigen::VectorXcd psi0 = stack(start.to_field());
  const double q1 = g.value(psi0, w);
  const double q2 = g.value(2.0 * psi0, w);
  r.linearity_defect = std::abs(q1) > 0.0 ? std::abs(q2 - 4.0 * q1) / std::abs(4.0 * q1) : 0.0;
  if (r.omega_drift > options.tolerance) {
    r.verdict = "non_hamiltonian";
  } else if (r.metric_drift > options.tolerance || r.norm_drift > options.tolerance) {
    r.verdict = "hamiltonian_non_killing";
  } else {
    r.verdict = "killing";
  }
  return r;
}

}  // namespace edspin::geometry
