#include "edspin/field/polar.hpp"

#include <cmath>
#include <numbers>

#include "edspin/common/errors.hpp"
#include "edspin/ga/rotor.hpp"

namespace edspin::field {

SpinorField amplitudes_from_polar(const PolarChart& chart, const Units& units) {
  const std::size_t n = chart.lattice.size();
  if (chart.rho.size() != n || chart.Phi.size() != n || chart.theta.size() != n ||
      chart.phi.size() != n) {
    throw LatticeMismatch("polar chart arrays do not match the lattice size");
  }
  SpinorField f(chart.lattice);
  for (std::size_t i = 0; i < n; ++i) {
    const double amp = std::sqrt(chart.rho[i]);
    const double chi_bar = -2.0 * chart.Phi[i] / units.hbar;
    f.up()[i] = std::polar(amp * std::cos(0.5 * chart.theta[i]), -0.5 * (chi_bar + chart.phi[i]));
    f.down()[i] = std::polar(amp * std::sin(0.5 * chart.theta[i]), -0.5 * (chi_bar - chart.phi[i]));
  }
  return f;
}

PolarChart polar_from_amplitudes(const SpinorField& field, const Units& units, double rho_floor,
                                 double pole_epsilon) {
  const std::size_t n = field.size();
  PolarChart c{field.lattice(), std::vector<double>(n), std::vector<double>(n),
               std::vector<double>(n), std::vector<double>(n), std::vector<std::uint8_t>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const Complex up = field.up()[i];
    const Complex down = field.down()[i];
    c.rho[i] = std::norm(up) + std::norm(down);
    c.theta[i] = 2.0 * std::atan2(std::abs(down), std::abs(up));
    const double a = std::arg(up);
    const double b = std::arg(down);
    double chi_bar;
    if (std::sin(c.theta[i]) < pole_epsilon) {
      c.phi[i] = 0.0;
      chi_bar = std::abs(up) >= std::abs(down) ? -2.0 * a : -2.0 * b;
    } else {
      c.phi[i] = ga::wrap_angle(b - a);
      // The 2 pi n removed by wrapping phi moves into chi_bar so both amplitudes survive.
      chi_bar = -(a + b) + (b - a - c.phi[i]);
    }
    c.Phi[i] = -0.5 * units.hbar * chi_bar;
    c.singular[i] = (c.rho[i] < rho_floor || std::sin(c.theta[i]) < pole_epsilon) ? 1 : 0;
  }
  return c;
}

BornData born_extract(const SpinorField& field, const Units& units) {
  const std::size_t n = field.size();
  BornData out{std::vector<double>(n), std::vector<Vec3>(n), std::vector<Vec3>(n), 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const ga::Multivector m = field.spinor_at(i).multivector();
    const ga::Multivector pp = m * m.reverse();
    out.rho[i] = pp.scalar_part();
    const Vec3 rho_s = pp.vector_part();
    out.s[i] = out.rho[i] > 0.0 ? rho_s / out.rho[i] : Vec3{};
    out.spin_density[i] = rho_s * (0.5 * units.hbar);
    const double direct = std::norm(field.up()[i]) + std::norm(field.down()[i]);
    out.density_defect = std::max(out.density_defect, std::abs(direct - out.rho[i]));
  }
  return out;
}

GaugeTransformed gauge_transform(const SpinorField& field, const std::vector<Vec3>& vector_potential,
                                 const std::vector<double>& xi, double beta,
                                 DerivativeScheme scheme) {
  const std::size_t n = field.size();
  if (xi.size() != n || vector_potential.size() != n) {
    throw LatticeMismatch("gauge function or vector potential size");
  }
  GaugeTransformed out{field, vector_potential};
  const auto grad = gradient(field.lattice(), xi, scheme);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex phase = std::polar(1.0, beta * xi[i]);
    out.field.up()[i] *= phase;
    out.field.down()[i] *= phase;
    out.vector_potential[i] += grad[i];
  }
  return out;
}

}  // namespace edspin::field
