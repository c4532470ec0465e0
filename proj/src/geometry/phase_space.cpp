#include "edspin/geometry/phase_space.hpp"

#include <cmath>

#include "edspin/common/errors.hpp"

namespace edspin::geometry {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_compatible(const SlotVector& a, const SlotVector& b, const char* what) {
  field::require_same(a.lattice, b.lattice, what);
  if (a.slots.size() != b.slots.size()) throw LatticeMismatch(what);
}

}  // namespace

Eigen::VectorXcd stack(const field::SpinorField& f) {
  const auto n = static_cast<Eigen::Index>(f.size());
  Eigen::VectorXcd v(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v[i] = f.up()[i];
    v[n + i] = f.down()[i];
  }
  return v;
}

field::SpinorField unstack(const field::Lattice& lattice, const Eigen::VectorXcd& v) {
  const auto n = static_cast<Eigen::Index>(lattice.size());
  if (v.size() != 2 * n) throw LatticeMismatch("stacked vector length");
  field::SpinorField f(lattice);
  for (Eigen::Index i = 0; i < n; ++i) {
    f.up()[i] = v[i];
    f.down()[i] = v[n + i];
  }
  return f;
}

SlotVector SlotVector::from_amplitudes(const field::Lattice& lattice,
                                       const std::vector<Complex>& up,
                                       const std::vector<Complex>& down, double hbar) {
  SlotVector s{lattice, hbar, std::vector<Complex>(4 * up.size())};
  for (std::size_t x = 0; x < up.size(); ++x) {
    s.slots[4 * x] = up[x];
    s.slots[4 * x + 1] = kI * hbar * std::conj(up[x]);
    s.slots[4 * x + 2] = down[x];
    s.slots[4 * x + 3] = kI * hbar * std::conj(down[x]);
  }
  return s;
}

double SlotVector::consistency_defect() const {
  double d = 0.0;
  for (std::size_t k = 0; k < slots.size(); k += 2) {
    d = std::max(d, std::abs(slots[k + 1] - kI * hbar * std::conj(slots[k])));
  }
  return d;
}

PhaseSpacePoint PhaseSpacePoint::from_field(const field::SpinorField& f, const Units& units) {
  PhaseSpacePoint p;
  static_cast<SlotVector&>(p) = SlotVector::from_amplitudes(f.lattice(), f.up(), f.down(), units.hbar);
  return p;
}

field::SpinorField PhaseSpacePoint::to_field() const {
  field::SpinorField f(lattice);
  for (std::size_t x = 0; x < points(); ++x) {
    f.up()[x] = up(x);
    f.down()[x] = down(x);
  }
  return f;
}

TangentVector TangentVector::from_differentials(const field::SpinorField& d, const Units& units) {
  TangentVector t;
  static_cast<SlotVector&>(t) = SlotVector::from_amplitudes(d.lattice(), d.up(), d.down(), units.hbar);
  return t;
}

field::SpinorField TangentVector::differentials() const {
  field::SpinorField f(lattice);
  for (std::size_t x = 0; x < points(); ++x) {
    f.up()[x] = up(x);
    f.down()[x] = down(x);
  }
  return f;
}

bool TgfFlags::holds(double tolerance) const {
  return std::abs(tangency) <= tolerance && std::abs(gauge) <= tolerance;
}

TgfFlags tgf_flags(const PhaseSpacePoint& at, const TangentVector& v) {
  require_compatible(at, v, "tgf_flags");
  const Complex ip = field::inner_product(at.to_field(), v.differentials());
  // d rho = 2 Re(psi^* d psi) summed over spins.
  return {2.0 * ip.real(), -2.0 * ip.imag()};
}

TangentVector tgf_project(const PhaseSpacePoint& at, const TangentVector& v) {
  require_compatible(at, v, "tgf_project");
  const field::SpinorField psi = at.to_field();
  const field::SpinorField d = v.differentials();
  const Complex ip = field::inner_product(psi, d);
  return TangentVector::from_differentials(d - psi * ip, Units{v.hbar});
}

double omega_pair(const TangentVector& v, const TangentVector& u) {
  require_compatible(v, u, "omega_pair");
  std::vector<double> terms(v.points());
  for (std::size_t x = 0; x < v.points(); ++x) {
    const Complex* a = &v.slots[4 * x];
    const Complex* b = &u.slots[4 * x];
    terms[x] = (a[0] * b[1] - a[1] * b[0] + a[2] * b[3] - a[3] * b[2]).real();
  }
  return v.lattice.cell_weight() * pairwise_sum(terms);
}

double metric_pair(const TangentVector& v, const TangentVector& u) {
  require_compatible(v, u, "metric_pair");
  const Complex scale = 1.0 / (2.0 * kI * v.hbar);
  std::vector<double> terms(v.points());
  for (std::size_t x = 0; x < v.points(); ++x) {
    const Complex* a = &v.slots[4 * x];
    const Complex* b = &u.slots[4 * x];
    terms[x] = (scale * (a[0] * b[1] + a[1] * b[0] + a[2] * b[3] + a[3] * b[2])).real();
  }
  return v.lattice.cell_weight() * pairwise_sum(terms);
}

TangentVector complex_structure(const TangentVector& v) {
  TangentVector out = v;
  for (std::size_t k = 0; k < out.slots.size(); ++k) {
    out.slots[k] *= (k % 2 == 0) ? kI : -kI;
  }
  return out;
}

Complex tangent_inner_product(const TangentVector& v, const TangentVector& u) {
  return {metric_pair(v, u), omega_pair(v, u) / (2.0 * v.hbar)};
}

double GeometryMatrices::pair(const Eigen::MatrixXcd& m, const TangentVector& v,
                              const TangentVector& u) const {
  const auto n = static_cast<Eigen::Index>(v.slots.size());
  const Eigen::Map<const Eigen::VectorXcd> a(v.slots.data(), n);
  const Eigen::Map<const Eigen::VectorXcd> b(u.slots.data(), n);
  return (cell_weight * cell_weight * (a.transpose() * m * b)(0, 0)).real();
}

GeometryMatrices geometry_matrices(const field::Lattice& lattice, const Units& units) {
  const auto n = static_cast<Eigen::Index>(4 * lattice.size());
  const double w = lattice.cell_weight();
  GeometryMatrices g;
  g.cell_weight = w;
  g.omega = Eigen::MatrixXcd::Zero(n, n);
  g.metric = Eigen::MatrixXcd::Zero(n, n);
  const Complex metric_entry = 1.0 / (2.0 * kI * units.hbar * w);
  for (Eigen::Index k = 0; k < n; k += 2) {
    g.omega(k, k + 1) = 1.0 / w;
    g.omega(k + 1, k) = -1.0 / w;
    g.metric(k, k + 1) = metric_entry;
    g.metric(k + 1, k) = metric_entry;
  }
  // Kernel inverse: sum_y w G^{-1}(x,y) G(y,z) = delta_xz / w, so (w G)^{-1} acts on (w Omega).
  const Eigen::MatrixXcd wg_inv = (w * g.metric).inverse();
  g.complex_structure = -(1.0 / (2.0 * units.hbar)) * wg_inv * (w * g.omega);
  return g;
}

PhaseSpacePoint normalization_flow(const PhaseSpacePoint& start, double sigma) {
  PhaseSpacePoint out = start;
  const Complex phase = std::polar(1.0, sigma / start.hbar);
  for (std::size_t k = 0; k < out.slots.size(); k += 2) {
    out.slots[k] *= phase;
    out.slots[k + 1] *= std::conj(phase);
  }
  return out;
}

double poisson_bracket(const Functional& f, const Functional& g, const PhaseSpacePoint& at) {
  if (!f.gradient) throw GradientMissing("first functional");
  if (!g.gradient) throw GradientMissing("second functional");
  const auto df = f.gradient(at);
  const auto dg = g.gradient(at);
  if (df.size() != at.slots.size() || dg.size() != at.slots.size()) {
    throw GradientMissing("gradient length does not match the phase-space point");
  }
  std::vector<double> terms(at.points());
  for (std::size_t x = 0; x < at.points(); ++x) {
    const std::size_t k = 4 * x;
    terms[x] = (df[k] * dg[k + 1] - df[k + 1] * dg[k] + df[k + 2] * dg[k + 3] -
                df[k + 3] * dg[k + 2])
                   .real();
  }
  return at.lattice.cell_weight() * pairwise_sum(terms);
}

Functional norm_functional() {
  Functional f;
  f.value = [](const PhaseSpacePoint& p) { return p.to_field().norm(); };
  // N = w sum q p / (i hbar): dN/dq = p/(i hbar), dN/dp = q/(i hbar).
  f.gradient = [](const PhaseSpacePoint& p) {
    std::vector<Complex> g(p.slots.size());
    for (std::size_t k = 0; k < g.size(); k += 2) {
      g[k] = p.slots[k + 1] / (kI * p.hbar);
      g[k + 1] = p.slots[k] / (kI * p.hbar);
    }
    return g;
  };
  return f;
}

Functional density_at(std::size_t x) {
  Functional f;
  f.value = [x](const PhaseSpacePoint& p) { return std::norm(p.up(x)) + std::norm(p.down(x)); };
  f.gradient = [x](const PhaseSpacePoint& p) {
    std::vector<Complex> g(p.slots.size());
    const double w = p.lattice.cell_weight();
    for (std::size_t k = 4 * x; k < 4 * x + 4; k += 2) {
      g[k] = p.slots[k + 1] / (kI * p.hbar * w);
      g[k + 1] = p.slots[k] / (kI * p.hbar * w);
    }
    return g;
  };
  return f;
}

Functional phase_at(std::size_t x) {
  Functional f;
  f.value = [x](const PhaseSpacePoint& p) {
    return 0.5 * p.hbar * (std::arg(p.up(x)) + std::arg(p.down(x)));
  };
  // arg q = (ln q - ln(p / i hbar)) / 2i.
  f.gradient = [x](const PhaseSpacePoint& p) {
    std::vector<Complex> g(p.slots.size());
    const double w = p.lattice.cell_weight();
    for (std::size_t k = 4 * x; k < 4 * x + 4; k += 2) {
      if (std::abs(p.slots[k]) == 0.0) throw GradientMissing("phase undefined at a node");
      g[k] = 0.5 * p.hbar / (2.0 * kI * p.slots[k] * w);
      g[k + 1] = -0.5 * p.hbar / (2.0 * kI * p.slots[k + 1] * w);
    }
    return g;
  };
  return f;
}

}  // namespace edspin::geometry
