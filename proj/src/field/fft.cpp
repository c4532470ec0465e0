#include "edspin/field/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

#include "edspin/common/errors.hpp"

namespace edspin::field {

namespace {

// FFTW planning is not thread safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FftPlan::FftPlan(const Lattice& lattice) : size_(lattice.size()) {
  std::vector<int> n;
  for (int a = 0; a < lattice.dim(); ++a) n.push_back(static_cast<int>(lattice.points(a)));
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto* buf = fftw_alloc_complex(size_);
  buffer_ = buf;
  forward_plan_ = fftw_plan_dft(lattice.dim(), n.data(), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft(lattice.dim(), n.data(), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (forward_plan_ == nullptr || inverse_plan_ == nullptr) throw Error("FFTW planning failed");
}

FftPlan::~FftPlan() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  fftw_free(buffer_);
}

void FftPlan::forward(std::vector<Complex>& data) {
  auto* buf = static_cast<Complex*>(buffer_);
  std::copy(data.begin(), data.end(), buf);
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  std::copy(buf, buf + size_, data.begin());
}

void FftPlan::inverse(std::vector<Complex>& data) {
  auto* buf = static_cast<Complex*>(buffer_);
  std::copy(data.begin(), data.end(), buf);
  fftw_execute(static_cast<fftw_plan>(inverse_plan_));
  const double s = 1.0 / static_cast<double>(size_);
  for (std::size_t i = 0; i < size_; ++i) data[i] = buf[i] * s;
}

}  // namespace edspin::field
