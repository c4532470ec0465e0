#pragma once

#include <vector>

#include "edspin/common/complex.hpp"
#include "edspin/common/vec3.hpp"
#include "edspin/field/lattice.hpp"

namespace edspin::field {

enum class DerivativeScheme { kCentral, kSpectral };

// d/dx_a of a periodic lattice function. Central is the second-order stencil
// (f[i+1] - f[i-1]) / 2h; spectral multiplies by i k_a in Fourier space.
std::vector<Complex> derivative(const Lattice& lattice, const std::vector<Complex>& f, int axis,
                                DerivativeScheme scheme = DerivativeScheme::kCentral);
std::vector<double> derivative(const Lattice& lattice, const std::vector<double>& f, int axis,
                               DerivativeScheme scheme = DerivativeScheme::kCentral);

// d^2/dx_a^2: (f[i+1] - 2 f[i] + f[i-1]) / h^2, or -k_a^2 spectrally.
std::vector<Complex> second_derivative(const Lattice& lattice, const std::vector<Complex>& f,
                                       int axis,
                                       DerivativeScheme scheme = DerivativeScheme::kCentral);
std::vector<double> second_derivative(const Lattice& lattice, const std::vector<double>& f,
                                      int axis,
                                      DerivativeScheme scheme = DerivativeScheme::kCentral);

// Gradient over the lattice axes; components beyond dim() are zero.
std::vector<Vec3> gradient(const Lattice& lattice, const std::vector<double>& f,
                           DerivativeScheme scheme = DerivativeScheme::kCentral);
// sum_a d_a V_a over the lattice axes.
std::vector<double> divergence(const Lattice& lattice, const std::vector<Vec3>& v,
                               DerivativeScheme scheme = DerivativeScheme::kCentral);
// Curl with derivatives only along lattice axes (d/dx_a = 0 for a >= dim()).
std::vector<Vec3> curl(const Lattice& lattice, const std::vector<Vec3>& v,
                       DerivativeScheme scheme = DerivativeScheme::kCentral);

// One component of a vector field as a scalar array.
std::vector<double> component(const std::vector<Vec3>& v, int c);

}  // namespace edspin::field
