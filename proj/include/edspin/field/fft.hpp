#pragma once

#include <vector>

#include "edspin/common/complex.hpp"
#include "edspin/field/lattice.hpp"

namespace edspin::field {

// In-place multidimensional complex FFT over a lattice, backed by FFTW. The inverse is
// normalized so that inverse(forward(x)) = x. Not copyable; one plan per thread.
class FftPlan {
 public:
  explicit FftPlan(const Lattice& lattice);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void forward(std::vector<Complex>& data);
  void inverse(std::vector<Complex>& data);

 private:
  std::size_t size_;
  void* buffer_;
  void* forward_plan_;
  void* inverse_plan_;
};

}  // namespace edspin::field
