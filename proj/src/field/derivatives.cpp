#include "edspin/field/derivatives.hpp"

#include "edspin/field/fft.hpp"

namespace edspin::field {

namespace {

std::vector<Complex> to_complex(const std::vector<double>& f) {
  return std::vector<Complex>(f.begin(), f.end());
}

std::vector<double> real_part(const std::vector<Complex>& f) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].real();
  return out;
}

// Multiplies the spectrum along `axis` by (i k)^order.
std::vector<Complex> spectral(const Lattice& lattice, std::vector<Complex> f, int axis, int order) {
  FftPlan plan(lattice);
  plan.forward(f);
  const std::size_t n = lattice.points(axis);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::size_t m = lattice.multi_index(i)[axis];
    double k = lattice.wavenumber(axis, m);
    // The Nyquist mode has no odd derivative on a real grid.
    if (order % 2 == 1 && n % 2 == 0 && m == n / 2) k = 0.0;
    const Complex ik(0.0, k);
    f[i] *= order == 1 ? ik : ik * ik;
  }
  plan.inverse(f);
  return f;
}

}  // namespace

std::vector<Complex> derivative(const Lattice& lattice, const std::vector<Complex>& f, int axis,
                                DerivativeScheme scheme) {
  if (scheme == DerivativeScheme::kSpectral) return spectral(lattice, f, axis, 1);
  const double inv = 0.5 / lattice.spacing(axis);
  std::vector<Complex> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] = (f[lattice.neighbor(i, axis, 1)] - f[lattice.neighbor(i, axis, -1)]) * inv;
  }
  return out;
}

std::vector<double> derivative(const Lattice& lattice, const std::vector<double>& f, int axis,
                               DerivativeScheme scheme) {
  if (scheme == DerivativeScheme::kSpectral) {
    return real_part(spectral(lattice, to_complex(f), axis, 1));
  }
  const double inv = 0.5 / lattice.spacing(axis);
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] = (f[lattice.neighbor(i, axis, 1)] - f[lattice.neighbor(i, axis, -1)]) * inv;
  }
  return out;
}

std::vector<Complex> second_derivative(const Lattice& lattice, const std::vector<Complex>& f,
                                       int axis, DerivativeScheme scheme) {
  if (scheme == DerivativeScheme::kSpectral) return spectral(lattice, f, axis, 2);
  const double h = lattice.spacing(axis);
  const double inv = 1.0 / (h * h);
  std::vector<Complex> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] = (f[lattice.neighbor(i, axis, 1)] - 2.0 * f[i] + f[lattice.neighbor(i, axis, -1)]) * inv;
  }
  return out;
}

std::vector<double> second_derivative(const Lattice& lattice, const std::vector<double>& f,
                                      int axis, DerivativeScheme scheme) {
  if (scheme == DerivativeScheme::kSpectral) {
    return real_part(spectral(lattice, to_complex(f), axis, 2));
  }
  const double h = lattice.spacing(axis);
  const double inv = 1.0 / (h * h);
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] = (f[lattice.neighbor(i, axis, 1)] - 2.0 * f[i] + f[lattice.neighbor(i, axis, -1)]) * inv;
  }
  return out;
}

std::vector<Vec3> gradient(const Lattice& lattice, const std::vector<double>& f,
                           DerivativeScheme scheme) {
  std::vector<Vec3> g(f.size());
  for (int a = 0; a < lattice.dim(); ++a) {
    const auto d = derivative(lattice, f, a, scheme);
    for (std::size_t i = 0; i < f.size(); ++i) g[i][a] = d[i];
  }
  return g;
}

std::vector<double> divergence(const Lattice& lattice, const std::vector<Vec3>& v,
                               DerivativeScheme scheme) {
  std::vector<double> out(v.size(), 0.0);
  for (int a = 0; a < lattice.dim(); ++a) {
    const auto d = derivative(lattice, component(v, a), a, scheme);
    for (std::size_t i = 0; i < v.size(); ++i) out[i] += d[i];
  }
  return out;
}

std::vector<Vec3> curl(const Lattice& lattice, const std::vector<Vec3>& v,
                       DerivativeScheme scheme) {
  std::vector<Vec3> out(v.size());
  // (curl v)_c = d_a v_b - d_b v_a for cyclic (a, b, c).
  for (int a = 0; a < lattice.dim(); ++a) {
    for (int b = 0; b < 3; ++b) {
      if (b == a) continue;
      const int c = 3 - a - b;
      const double sign = ((b - a + 3) % 3 == 1) ? 1.0 : -1.0;
      const auto d = derivative(lattice, component(v, b), a, scheme);
      for (std::size_t i = 0; i < v.size(); ++i) out[i][c] += sign * d[i];
    }
  }
  return out;
}

std::vector<double> component(const std::vector<Vec3>& v, int c) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i][c];
  return out;
}

}  // namespace edspin::field
