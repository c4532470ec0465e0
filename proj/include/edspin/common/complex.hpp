#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace edspin {

// Field-level complex amplitude. Inside the algebra the same number is a scalar +
// pseudoscalar multivector.
using Complex = std::complex<double>;

// Pairwise summation in a fixed tree order; the result does not depend on how callers
// parallelize the production of `values`.
double pairwise_sum(std::span<const double> values);
Complex pairwise_sum(std::span<const Complex> values);

}  // namespace edspin
