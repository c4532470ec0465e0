#pragma once

#include <memory>
#include <string>

#include <Eigen/Dense>

#include "json.hpp"

#include "edspin/geometry/phase_space.hpp"

namespace edspin::geometry {

// A generator Q of a Hamiltonian flow i hbar d psi/d lambda = dQ/dpsi*, acting on stacked
// amplitude vectors.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual std::string id() const = 0;
  virtual double value(const Eigen::VectorXcd& psi, double w) const = 0;
  // d psi / d lambda.
  virtual Eigen::VectorXcd velocity(const Eigen::VectorXcd& psi) const = 0;
  // Linearized flow for a tangent vector dpsi at psi.
  virtual Eigen::VectorXcd tangent_velocity(const Eigen::VectorXcd& psi,
                                            const Eigen::VectorXcd& dpsi) const = 0;
  // Exact flow over dlambda when available (bilinear generators).
  virtual bool has_exponential() const { return false; }
  virtual Eigen::MatrixXcd propagator(double dlambda) const;
};

// Q = w psi^dagger K psi for a Hermitian K over (spin x lattice); the flow is linear.
class BilinearGenerator : public Generator {
 public:
  // Throws NonHermitianKernel if |K - K^dagger| exceeds `tolerance`.
  BilinearGenerator(Eigen::MatrixXcd kernel, double hbar, std::string id = "bilinear",
                    double tolerance = 1e-12);
  std::string id() const override { return id_; }
  const Eigen::MatrixXcd& kernel() const { return kernel_; }
  double value(const Eigen::VectorXcd& psi, double w) const override;
  Eigen::VectorXcd velocity(const Eigen::VectorXcd& psi) const override;
  Eigen::VectorXcd tangent_velocity(const Eigen::VectorXcd& psi,
                                    const Eigen::VectorXcd& dpsi) const override;
  bool has_exponential() const override { return true; }
  // exp(-i K dlambda / hbar) by scaling and squaring.
  Eigen::MatrixXcd propagator(double dlambda) const override;
  // The functional with analytic gradient for Poisson brackets.
  Functional functional() const;

 private:
  Eigen::MatrixXcd kernel_;
  double hbar_;
  std::string id_;
};

// Q4 = K sum w |psi+|^2 |psi-|^2, the kernel restricted to the diagonal slice. Hamiltonian
// and norm-preserving but not Killing.
class QuarticGenerator : public Generator {
 public:
  QuarticGenerator(double coupling, double hbar) : k_(coupling), hbar_(hbar) {}
  std::string id() const override { return "quartic"; }
  double value(const Eigen::VectorXcd& psi, double w) const override;
  Eigen::VectorXcd velocity(const Eigen::VectorXcd& psi) const override;
  Eigen::VectorXcd tangent_velocity(const Eigen::VectorXcd& psi,
                                    const Eigen::VectorXcd& dpsi) const override;

 private:
  double k_;
  double hbar_;
};

// Q1 = w sum (a^* psi + a psi^*), linear in psi; its flow shifts psi and changes the norm.
class LinearGenerator : public Generator {
 public:
  LinearGenerator(Eigen::VectorXcd source, double hbar) : a_(std::move(source)), hbar_(hbar) {}
  std::string id() const override { return "linear"; }
  double value(const Eigen::VectorXcd& psi, double w) const override;
  Eigen::VectorXcd velocity(const Eigen::VectorXcd& psi) const override;
  Eigen::VectorXcd tangent_velocity(const Eigen::VectorXcd& psi,
                                    const Eigen::VectorXcd& dpsi) const override;

 private:
  Eigen::VectorXcd a_;
  double hbar_;
};

// {Q_A, Q_B} for two bilinears is again bilinear with kernel -i [A, B] / hbar.
BilinearGenerator bracket_of_bilinears(const BilinearGenerator& a, const BilinearGenerator& b,
                                       double hbar);

// d N / d lambda along the generator's flow at psi.
double norm_rate(const Generator& g, const Eigen::VectorXcd& psi, double w);

enum class FlowStepper { kExponential, kRk4 };

struct HkFlowOptions {
  int steps = 100;
  double dlambda = 0.01;
  FlowStepper stepper = FlowStepper::kExponential;
  // Separation of the neighbouring state used for fs_drift.
  double neighbour_offset = 1e-3;
  // Drift below this counts as preserved when forming the verdict.
  double tolerance = 1e-9;
};

struct HkFlowReport {
  std::string generator_id;
  int steps = 0;
  double dlambda = 0.0;
  double omega_drift = 0.0;
  double metric_drift = 0.0;
  double norm_drift = 0.0;
  double fs_drift = 0.0;
  // |Q(2 psi) - 4 Q(psi)| / |4 Q(psi)|; zero for bilinear generators.
  double linearity_defect = 0.0;
  // "killing", "hamiltonian_non_killing" or "non_hamiltonian".
  std::string verdict;

  nlohmann::json to_json() const;
};

// Integrates the generator's flow from `start`, carrying tangents v and u, and reports how
// Omega[v,u], G[v,u], the norm and the fs-distance to a nearby state change. Kernels must be
// on lattices of at most 64 points. The exponential stepper falls back to RK4 for generators
// without an exact propagator.
HkFlowReport hk_flow_test(const Generator& g, const PhaseSpacePoint& start,
                          const TangentVector& v, const TangentVector& u,
                          const HkFlowOptions& options = {});

inline constexpr std::size_t kMaxHkLatticePoints = 64;

}  // namespace edspin::geometry
