#include "edspin/dynamics/observables.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "edspin/common/errors.hpp"
#include "edspin/field/polar.hpp"
#include "edspin/ga/multivector.hpp"
#include "edspin/ga/rotor.hpp"
#include "edspin/geometry/phase_space.hpp"

namespace edspin::dynamics {

namespace {

constexpr Complex kI{0.0, 1.0};

std::vector<double> density(const field::SpinorField& psi) {
  std::vector<double> rho(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    rho[i] = std::norm(psi.up()[i]) + std::norm(psi.down()[i]);
  }
  return rho;
}

// Im(psi^dagger d_a psi) per axis.
std::vector<Vec3> phase_flux(const field::SpinorField& psi, field::DerivativeScheme scheme) {
  const field::Lattice& lat = psi.lattice();
  std::vector<Vec3> out(psi.size());
  for (int a = 0; a < lat.dim(); ++a) {
    const auto du = field::derivative(lat, psi.up(), a, scheme);
    const auto dd = field::derivative(lat, psi.down(), a, scheme);
    for (std::size_t i = 0; i < psi.size(); ++i) {
      out[i][a] = (std::conj(psi.up()[i]) * du[i] + std::conj(psi.down()[i]) * dd[i]).imag();
    }
  }
  return out;
}

Vec3 vector_potential_at(const ExternalFields& ext, std::size_t i) {
  return ext.A.empty() ? Vec3{} : ext.A[i];
}

double l2(const field::Lattice& lat, const std::vector<double>& r) {
  std::vector<double> sq(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) sq[i] = r[i] * r[i];
  return std::sqrt(lat.cell_weight() * pairwise_sum(sq));
}

}  // namespace

DriftVelocity drift_velocity(const field::SpinorField& psi, const ExternalFields& ext,
                             const Units& units, field::DerivativeScheme scheme, double rho_floor) {
  ext.validate(psi.lattice());
  const auto rho = density(psi);
  const auto flux = phase_flux(psi, scheme);
  const double qmc = units.charge / (units.mass * units.c);
  DriftVelocity out{std::vector<Vec3>(psi.size()), std::vector<std::uint8_t>(psi.size())};
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const bool singular = rho[i] < rho_floor;
    const double r = singular ? rho_floor : rho[i];
    out.singular[i] = singular ? 1 : 0;
    out.v[i] = flux[i] * (units.hbar / (units.mass * r)) - vector_potential_at(ext, i) * qmc;
  }
  return out;
}

DriftVelocity drift_velocity_chart(const field::SpinorField& psi, const ExternalFields& ext,
                                   const Units& units, double rho_floor, double pole_epsilon) {
  ext.validate(psi.lattice());
  const field::Lattice& lat = psi.lattice();
  const field::PolarChart chart = field::polar_from_amplitudes(psi, units, rho_floor, pole_epsilon);
  const double qmc = units.charge / (units.mass * units.c);
  DriftVelocity out{std::vector<Vec3>(psi.size()), chart.singular};
  for (std::size_t i = 0; i < psi.size(); ++i) {
    Vec3 v = vector_potential_at(ext, i) * (-qmc);
    bool singular = chart.singular[i] != 0;
    for (int a = 0; a < lat.dim() && !singular; ++a) {
      const std::size_t ip = lat.neighbor(i, a, 1);
      const std::size_t im = lat.neighbor(i, a, -1);
      if (chart.singular[ip] || chart.singular[im]) {
        singular = true;
        break;
      }
      const double two_h = 2.0 * lat.spacing(a);
      const double da = ga::wrap_angle(std::arg(psi.up()[ip]) - std::arg(psi.up()[im])) / two_h;
      const double db =
          ga::wrap_angle(std::arg(psi.down()[ip]) - std::arg(psi.down()[im])) / two_h;
      const double d_Phi = 0.5 * units.hbar * (da + db);
      const double d_phi = db - da;
      v[a] += d_Phi / units.mass - 0.5 * units.hbar / units.mass * std::cos(chart.theta[i]) * d_phi;
    }
    out.singular[i] = singular ? 1 : 0;
    out.v[i] = v;
  }
  return out;
}

std::vector<Vec3> probability_current(const field::SpinorField& psi, const ExternalFields& ext,
                                      const Units& units, field::DerivativeScheme scheme) {
  ext.validate(psi.lattice());
  const auto rho = density(psi);
  auto j = phase_flux(psi, scheme);
  const double qmc = units.charge / (units.mass * units.c);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    j[i] = j[i] * (units.hbar / units.mass) - vector_potential_at(ext, i) * (qmc * rho[i]);
  }
  return j;
}

double continuity_residual(const std::vector<field::SpinorField>& series, const ExternalFields& ext,
                           const Units& units, field::DerivativeScheme scheme) {
  if (series.size() < 3) throw InvalidArgument("continuity_residual needs at least 3 frames");
  const field::Lattice& lat = series.front().lattice();
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < series.size(); ++k) {
    const double dt2 = series[k + 1].time() - series[k - 1].time();
    const auto rho_next = density(series[k + 1]);
    const auto rho_prev = density(series[k - 1]);
    const auto div = field::divergence(lat, probability_current(series[k], ext, units, scheme), scheme);
    std::vector<double> r(lat.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (rho_next[i] - rho_prev[i]) / dt2 + div[i];
    worst = std::max(worst, l2(lat, r));
  }
  return worst;
}

IdentityTerms appendix_c_identity(const field::SpinorField& psi, const ExternalFields& ext,
                                  const Units& units, field::DerivativeScheme scheme) {
  const field::Lattice& lat = psi.lattice();
  const std::size_t n = psi.size();
  const auto rho = density(psi);
  const auto vel = drift_velocity(psi, ext, units, scheme);
  const field::SpinorField h0 = apply_hamiltonian(psi, ext, units, HamiltonianPart::kFree, scheme);
  const field::BornData born = field::born_extract(psi, units);
  const auto mag = ext.magnetic_field(lat, scheme);

  std::vector<double> sqrt_rho(n);
  for (std::size_t i = 0; i < n; ++i) sqrt_rho[i] = std::sqrt(rho[i]);
  std::vector<double> lap_sqrt(n, 0.0);
  std::vector<double> ds2(n, 0.0);
  for (int a = 0; a < lat.dim(); ++a) {
    const auto d2 = field::second_derivative(lat, sqrt_rho, a, scheme);
    for (std::size_t i = 0; i < n; ++i) lap_sqrt[i] += d2[i];
    for (int c = 0; c < 3; ++c) {
      const auto ds = field::derivative(lat, field::component(born.s, c), a, scheme);
      for (std::size_t i = 0; i < n; ++i) ds2[i] += ds[i] * ds[i];
    }
  }

  const double hb2m = units.hbar * units.hbar / units.mass;
  const double zeeman = units.hbar * units.charge / (2.0 * units.mass * units.c);
  IdentityTerms out{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n), 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    out.lhs[i] = 0.5 * units.mass * rho[i] * vel.v[i].norm2();
    const double expect =
        (std::conj(psi.up()[i]) * h0.up()[i] + std::conj(psi.down()[i]) * h0.down()[i]).real();
    double rhs = expect + 0.5 * hb2m * sqrt_rho[i] * lap_sqrt[i] - 0.125 * hb2m * rho[i] * ds2[i];
    if (!mag.empty()) rhs += zeeman * rho[i] * mag[i].dot(born.s[i]);
    out.rhs[i] = rhs;
    out.residual[i] = out.lhs[i] - rhs;
    out.max_residual = std::max(out.max_residual, std::abs(out.residual[i]));
  }
  return out;
}

std::vector<Vec3> magnetization(const field::SpinorField& psi, const Units& units) {
  const field::BornData born = field::born_extract(psi, units);
  std::vector<Vec3> m(psi.size());
  const double qmc = units.charge / (units.mass * units.c);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = born.spin_density[i] * qmc;
  return m;
}

std::vector<Vec3> magnetization_current(const field::SpinorField& psi, const Units& units,
                                        field::DerivativeScheme scheme) {
  const field::Lattice& lat = psi.lattice();
  const auto m = magnetization(psi, units);
  std::vector<ga::Multivector> grad_m(m.size());
  for (int a = 0; a < lat.dim(); ++a) {
    std::array<std::vector<double>, 3> dm;
    for (int c = 0; c < 3; ++c) dm[c] = field::derivative(lat, field::component(m, c), a, scheme);
    const ga::Multivector e_a = ga::Multivector::basis(static_cast<std::size_t>(ga::kE1 + a));
    for (std::size_t i = 0; i < m.size(); ++i) {
      grad_m[i] += e_a * ga::Multivector::vector({dm[0][i], dm[1][i], dm[2][i]});
    }
  }
  // grad ^ M = i (curl M).
  std::vector<Vec3> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = grad_m[i].grade(2).bivector_dual() * units.c;
  return out;
}

std::vector<Vec3> electric_current(const field::SpinorField& psi, const ExternalFields& ext,
                                   const Units& units, field::DerivativeScheme scheme) {
  auto j = probability_current(psi, ext, units, scheme);
  const auto jm = magnetization_current(psi, units, scheme);
  for (std::size_t i = 0; i < j.size(); ++i) j[i] = j[i] * units.charge + jm[i];
  return j;
}

std::vector<Vec3> local_momentum(const field::SpinorField& psi, const ExternalFields& ext,
                                 const Units& units, field::DerivativeScheme scheme) {
  const auto vel = drift_velocity(psi, ext, units, scheme);
  std::vector<Vec3> p(psi.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = vel.v[i] * units.mass + vector_potential_at(ext, i) * (units.charge / units.c);
  }
  return p;
}

std::vector<double> local_energy(const field::SpinorField& before, const field::SpinorField& at,
                                 const field::SpinorField& after, const Units& units) {
  field::require_same(before.lattice(), after.lattice(), "local_energy");
  field::require_same(at.lattice(), after.lattice(), "local_energy");
  const double dt2 = after.time() - before.time();
  if (!(dt2 > 0.0)) throw InvalidArgument("local_energy frames must advance in time");
  std::vector<double> eps(at.size());
  // -d_t Phi + (hbar/2) cos(theta) d_t phi = -hbar (cos^2(theta/2) d_t arg psi+
  //                                            + sin^2(theta/2) d_t arg psi-).
  for (std::size_t i = 0; i < at.size(); ++i) {
    const double up2 = std::norm(at.up()[i]);
    const double dn2 = std::norm(at.down()[i]);
    const double rho = up2 + dn2;
    if (rho == 0.0) continue;
    double rate = 0.0;
    if (up2 > 0.0) {
      rate += up2 * ga::wrap_angle(std::arg(after.up()[i]) - std::arg(before.up()[i]));
    }
    if (dn2 > 0.0) {
      rate += dn2 * ga::wrap_angle(std::arg(after.down()[i]) - std::arg(before.down()[i]));
    }
    eps[i] = -units.hbar * rate / (rho * dt2);
  }
  return eps;
}

field::SpinorField time_reverse(const field::SpinorField& psi) {
  field::SpinorField out(psi.lattice());
  out.set_time(psi.time());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    out.up()[i] = -std::conj(psi.down()[i]);
    out.down()[i] = std::conj(psi.up()[i]);
  }
  return out;
}

double action(const std::vector<field::SpinorField>& series, const SparseMatrix& h,
              const Units& units) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < series.size(); ++k) {
    const double dt = series[k + 1].time() - series[k].time();
    const double w = series[k].lattice().cell_weight();
    const Eigen::VectorXcd a = geometry::stack(series[k]);
    const Eigen::VectorXcd b = geometry::stack(series[k + 1]);
    const Eigen::VectorXcd mid = 0.5 * (a + b);
    const Eigen::VectorXcd r = kI * units.hbar * (b - a) / dt - h * mid;
    total += dt * w * mid.dot(r).real();
  }
  return total;
}

double action_first_variation(const std::vector<field::SpinorField>& series,
                              const std::vector<field::SpinorField>& delta, const SparseMatrix& h,
                              const Units& units) {
  if (delta.size() != series.size()) throw InvalidArgument("perturbation length mismatch");
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < series.size(); ++k) {
    const double dt = series[k + 1].time() - series[k].time();
    const double w = series[k].lattice().cell_weight();
    const Eigen::VectorXcd a = geometry::stack(series[k]);
    const Eigen::VectorXcd b = geometry::stack(series[k + 1]);
    const Eigen::VectorXcd da = geometry::stack(delta[k]);
    const Eigen::VectorXcd db = geometry::stack(delta[k + 1]);
    const Eigen::VectorXcd mid = 0.5 * (a + b);
    const Eigen::VectorXcd dmid = 0.5 * (da + db);
    const Eigen::VectorXcd r = kI * units.hbar * (b - a) / dt - h * mid;
    const Eigen::VectorXcd dr = kI * units.hbar * (db - da) / dt - h * dmid;
    total += dt * w * (dmid.dot(r) + mid.dot(dr)).real();
  }
  return total;
}

ActionDiagnostic action_diagnostic(const std::vector<field::SpinorField>& series,
                                   const ExternalFields& ext, const Units& units) {
  if (series.size() < 2) throw InvalidArgument("action needs at least 2 frames");
  const SparseMatrix h = hamiltonian_matrix(series.front().lattice(), ext, units);
  ActionDiagnostic d;
  d.action = action(series, h, units);
  // Gradient with respect to interior frame j:
  // w [ i hbar (psi_{j+1} - psi_{j-1}) - H (dt_- m_{j-1} + dt_+ m_j) ].
  for (std::size_t j = 1; j + 1 < series.size(); ++j) {
    const double w = series[j].lattice().cell_weight();
    const double dt_minus = series[j].time() - series[j - 1].time();
    const double dt_plus = series[j + 1].time() - series[j].time();
    const Eigen::VectorXcd prev = geometry::stack(series[j - 1]);
    const Eigen::VectorXcd cur = geometry::stack(series[j]);
    const Eigen::VectorXcd next = geometry::stack(series[j + 1]);
    const Eigen::VectorXcd g =
        w * (kI * units.hbar * (next - prev) -
             h * (dt_minus * 0.5 * (prev + cur) + dt_plus * 0.5 * (cur + next)));
    d.max_first_variation = std::max(d.max_first_variation, g.cwiseAbs().maxCoeff());
  }
  return d;
}

LedgerRow ledger_row(const field::SpinorField& psi, const ExternalFields& ext, const Units& units) {
  const field::Lattice& lat = psi.lattice();
  const double w = lat.cell_weight();
  LedgerRow row;
  row.t = psi.time();
  row.norm = psi.norm();
  row.energy = energy(psi, ext, units);
  const auto rho = density(psi);
  const auto flux = phase_flux(psi, field::DerivativeScheme::kCentral);
  const field::BornData born = field::born_extract(psi, units);
  for (int c = 0; c < 3; ++c) {
    std::vector<double> xs(psi.size());
    std::vector<double> ps(psi.size());
    std::vector<double> ss(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
      xs[i] = lat.position(i)[c] * rho[i];
      ps[i] = units.hbar * flux[i][c];
      ss[i] = born.spin_density[i][c];
    }
    row.mean_position[c] = w * pairwise_sum(xs);
    row.mean_momentum[c] = w * pairwise_sum(ps);
    row.total_spin[c] = w * pairwise_sum(ss);
  }
  return row;
}

void write_ledger_header(std::ostream& os) {
  os << "t,norm,energy,x_mean,y_mean,z_mean,px_mean,py_mean,pz_mean,Sx,Sy,Sz\n";
}

void write_ledger_row(std::ostream& os, const LedgerRow& r) {
  os << std::setprecision(17) << r.t << ',' << r.norm << ',' << r.energy << ','
     << r.mean_position.x << ',' << r.mean_position.y << ',' << r.mean_position.z << ','
     << r.mean_momentum.x << ',' << r.mean_momentum.y << ',' << r.mean_momentum.z << ','
     << r.total_spin.x << ',' << r.total_spin.y << ',' << r.total_spin.z << '\n';
}

}  // namespace edspin::dynamics
