#include "edspin/dynamics/hamiltonian.hpp"

#include <vector>

#include "edspin/common/errors.hpp"

namespace edspin::dynamics {

namespace {

constexpr Complex kI{0.0, 1.0};

}  // namespace

std::vector<Vec3> spin_coupling(const field::Lattice& lattice, const ExternalFields& ext,
                                const Units& units, HamiltonianPart part,
                                field::DerivativeScheme scheme) {
  ext.validate(lattice);
  std::vector<Vec3> b(lattice.size());
  const double zeeman = -units.hbar * units.charge / (2.0 * units.mass * units.c);
  const double kappa_m = part == HamiltonianPart::kFull ? ext.kappa_m : 0.0;
  const auto mag = ext.magnetic_field(lattice, scheme);
  if (!mag.empty()) {
    for (std::size_t i = 0; i < b.size(); ++i) b[i] += mag[i] * (zeeman + kappa_m);
  }
  if (part == HamiltonianPart::kFull && !ext.E.empty() && ext.kappa_e != 0.0) {
    for (std::size_t i = 0; i < b.size(); ++i) b[i] += ext.E[i] * ext.kappa_e;
  }
  return b;
}

field::SpinorField apply_hamiltonian(const field::SpinorField& psi, const ExternalFields& ext,
                                     const Units& units, HamiltonianPart part,
                                     field::DerivativeScheme scheme) {
  const field::Lattice& lat = psi.lattice();
  ext.validate(lat);
  const std::size_t n = psi.size();
  const double inv2m = 1.0 / (2.0 * units.mass);
  const double qc = units.charge / units.c;
  field::SpinorField out(lat);
  out.set_time(psi.time());

  for (int comp = 0; comp < 2; ++comp) {
    const std::vector<Complex>& f = comp == 0 ? psi.up() : psi.down();
    std::vector<Complex>& g = comp == 0 ? out.up() : out.down();
    for (int a = 0; a < lat.dim(); ++a) {
      const auto d2 = field::second_derivative(lat, f, a, scheme);
      for (std::size_t i = 0; i < n; ++i) g[i] += -units.hbar * units.hbar * inv2m * d2[i];
      if (ext.has_vector_potential()) {
        std::vector<Complex> af(n);
        for (std::size_t i = 0; i < n; ++i) af[i] = ext.A[i][a] * f[i];
        const auto d_af = field::derivative(lat, af, a, scheme);
        const auto d_f = field::derivative(lat, f, a, scheme);
        for (std::size_t i = 0; i < n; ++i) {
          g[i] += kI * units.hbar * qc * inv2m * (d_af[i] + ext.A[i][a] * d_f[i]);
        }
      }
    }
    if (ext.has_vector_potential()) {
      for (std::size_t i = 0; i < n; ++i) g[i] += qc * qc * inv2m * ext.A[i].norm2() * f[i];
    }
    if (part == HamiltonianPart::kFull && !ext.V.empty()) {
      for (std::size_t i = 0; i < n; ++i) g[i] += ext.V[i] * f[i];
    }
  }

  const auto b = spin_coupling(lat, ext, units, part, scheme);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex u = psi.up()[i];
    const Complex d = psi.down()[i];
    out.up()[i] += b[i].z * u + Complex(b[i].x, -b[i].y) * d;
    out.down()[i] += Complex(b[i].x, b[i].y) * u - b[i].z * d;
  }
  return out;
}

SparseMatrix hamiltonian_matrix(const field::Lattice& lat, const ExternalFields& ext,
                                const Units& units, HamiltonianPart part) {
  ext.validate(lat);
  const std::size_t n = lat.size();
  const double inv2m = 1.0 / (2.0 * units.mass);
  const double qc = units.charge / units.c;
  std::vector<Eigen::Triplet<Complex>> t;
  t.reserve(2 * n * (2 + 4 * static_cast<std::size_t>(lat.dim())));

  for (int comp = 0; comp < 2; ++comp) {
    const std::size_t off = comp * n;
    auto add = [&](std::size_t r, std::size_t c, Complex v) {
      t.emplace_back(static_cast<int>(off + r), static_cast<int>(off + c), v);
    };
    for (std::size_t i = 0; i < n; ++i) {
      Complex diag = 0.0;
      for (int a = 0; a < lat.dim(); ++a) {
        const double h = lat.spacing(a);
        const std::size_t ip = lat.neighbor(i, a, 1);
        const std::size_t im = lat.neighbor(i, a, -1);
        const double lap = -units.hbar * units.hbar * inv2m / (h * h);
        add(i, ip, lap);
        add(i, im, lap);
        diag += -2.0 * lap;
        if (ext.has_vector_potential()) {
          // i hbar q/(2mc) [ (A psi)' + A psi' ] with central differences.
          const Complex c = kI * units.hbar * qc * inv2m / (2.0 * h);
          add(i, ip, c * (ext.A[ip][a] + ext.A[i][a]));
          add(i, im, -c * (ext.A[im][a] + ext.A[i][a]));
        }
      }
      if (ext.has_vector_potential()) diag += qc * qc * inv2m * ext.A[i].norm2();
      if (part == HamiltonianPart::kFull && !ext.V.empty()) diag += ext.V[i];
      add(i, i, diag);
    }
  }

  const auto b = spin_coupling(lat, ext, units, part);
  for (std::size_t i = 0; i < n; ++i) {
    const int up = static_cast<int>(i);
    const int dn = static_cast<int>(n + i);
    if (b[i].z != 0.0) {
      t.emplace_back(up, up, b[i].z);
      t.emplace_back(dn, dn, -b[i].z);
    }
    if (b[i].x != 0.0 || b[i].y != 0.0) {
      t.emplace_back(up, dn, Complex(b[i].x, -b[i].y));
      t.emplace_back(dn, up, Complex(b[i].x, b[i].y));
    }
  }

  SparseMatrix m(static_cast<int>(2 * n), static_cast<int>(2 * n));
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

double energy(const field::SpinorField& psi, const ExternalFields& ext, const Units& units,
              field::DerivativeScheme scheme) {
  return field::inner_product(psi, apply_hamiltonian(psi, ext, units, HamiltonianPart::kFull, scheme))
      .real();
}

}  // namespace edspin::dynamics
