#include "edspin/dynamics/eigenstates.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "edspin/common/errors.hpp"

namespace edspin::dynamics {

Eigenstate ground_state(const field::Lattice& lat, const std::vector<double>& potential,
                        const Units& units, double theta, double phi) {
  const std::size_t n = lat.size();
  if (n > kMaxDenseEigenPoints) throw InvalidArgument("lattice too large for the dense eigensolver");
  if (!potential.empty() && potential.size() != n) throw LatticeMismatch("potential size");
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    for (int a = 0; a < lat.dim(); ++a) {
      const double c = units.hbar * units.hbar / (2.0 * units.mass * lat.spacing(a) * lat.spacing(a));
      h(r, static_cast<Eigen::Index>(lat.neighbor(i, a, 1))) -= c;
      h(r, static_cast<Eigen::Index>(lat.neighbor(i, a, -1))) -= c;
      h(r, r) += 2.0 * c;
    }
    if (!potential.empty()) h(r, r) += potential[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) throw Error("eigensolver failed");
  Eigen::VectorXd g = solver.eigenvectors().col(0);
  if (g.sum() < 0.0) g = -g;
  g /= std::sqrt(lat.cell_weight() * g.squaredNorm());

  Eigenstate out{field::SpinorField(lat), solver.eigenvalues()[0]};
  const Complex up(std::cos(0.5 * theta), 0.0);
  const Complex down = std::polar(std::sin(0.5 * theta), phi);
  for (std::size_t i = 0; i < n; ++i) {
    out.state.up()[i] = g[static_cast<Eigen::Index>(i)] * up;
    out.state.down()[i] = g[static_cast<Eigen::Index>(i)] * down;
  }
  return out;
}

}  // namespace edspin::dynamics
