#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "edspin/common/complex.hpp"
#include "edspin/field/lattice.hpp"
#include "edspin/ga/spinor.hpp"

namespace edspin::field {

// Spinor wave function sampled on a lattice, stored as the amplitude pair (psi+, psi-).
class SpinorField {
 public:
  SpinorField() = default;
  explicit SpinorField(Lattice lattice);
  SpinorField(Lattice lattice, std::vector<Complex> up, std::vector<Complex> down);

  using AmplitudeFn = std::function<std::pair<Complex, Complex>(const Vec3&)>;
  static SpinorField sample(const Lattice& lattice, const AmplitudeFn& fn);

  const Lattice& lattice() const { return lattice_; }
  std::size_t size() const { return up_.size(); }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  std::vector<Complex>& up() { return up_; }
  std::vector<Complex>& down() { return down_; }
  const std::vector<Complex>& up() const { return up_; }
  const std::vector<Complex>& down() const { return down_; }

  // The ideal-valued multivector view at one point.
  ga::Spinor spinor_at(std::size_t i) const;
  void set_spinor(std::size_t i, const ga::Spinor& s);

  // sum w (|psi+|^2 + |psi-|^2).
  double norm() const;
  bool is_normalized(double tolerance = 1e-10) const;
  // Rescales to unit norm; throws NotNormalized for a zero field.
  void normalize();

  SpinorField operator+(const SpinorField& o) const;
  SpinorField operator-(const SpinorField& o) const;
  SpinorField operator*(Complex s) const;
  SpinorField& operator+=(const SpinorField& o);

 private:
  Lattice lattice_;
  std::vector<Complex> up_;
  std::vector<Complex> down_;
  double time_ = 0.0;
};

// sum w (a+* b+ + a-* b-).
Complex inner_product(const SpinorField& a, const SpinorField& b);

// Gauge-minimized embedding distance min_sigma sum w |a - b e^{i sigma/hbar}|^2. Both fields
// must be normalized to `tolerance`.
double fs_distance(const SpinorField& a, const SpinorField& b, double tolerance = 1e-8);
// The minimizing sigma/hbar = arg <b|a>; 0 when <b|a> vanishes.
double fs_optimal_phase(const SpinorField& a, const SpinorField& b);

// Multiplies both amplitudes by e^{i angle}.
SpinorField global_phase(const SpinorField& f, double angle);

}  // namespace edspin::field
