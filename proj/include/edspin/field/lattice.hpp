#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "edspin/common/vec3.hpp"

namespace edspin::field {

// Uniform periodic lattice in 1, 2 or 3 dimensions. Lattice axis a is the physical axis x_a.
// Coordinates are centred: x_a(i) = -L_a/2 + i h_a with h_a = L_a / n_a. Points are stored
// row-major with axis 0 slowest.
class Lattice {
 public:
  Lattice() = default;
  Lattice(std::vector<double> extents, std::vector<std::size_t> points);

  int dim() const { return static_cast<int>(points_.size()); }
  std::size_t size() const { return size_; }
  double extent(int a) const { return extents_[a]; }
  std::size_t points(int a) const { return points_[a]; }
  double spacing(int a) const { return spacing_[a]; }
  // Product of spacings; integrals become w-weighted sums.
  double cell_weight() const { return weight_; }

  double coordinate(int a, std::size_t i) const;
  Vec3 position(std::size_t flat) const;
  std::array<std::size_t, 3> multi_index(std::size_t flat) const;
  std::size_t flat_index(const std::array<std::size_t, 3>& idx) const;
  // Flat index of the neighbour `offset` steps along axis a, with periodic wrap.
  std::size_t neighbor(std::size_t flat, int a, long offset) const;
  // Angular wavenumber of FFT mode i along axis a (standard FFT ordering).
  double wavenumber(int a, std::size_t i) const;
  // Maps x into the fundamental cell [-L/2, L/2) along every lattice axis.
  Vec3 wrap(const Vec3& x) const;

  bool operator==(const Lattice& o) const;
  bool operator!=(const Lattice& o) const { return !(*this == o); }

 private:
  std::vector<double> extents_;
  std::vector<std::size_t> points_;
  std::vector<double> spacing_;
  std::array<std::size_t, 3> stride_{1, 1, 1};
  std::size_t size_ = 0;
  double weight_ = 0.0;
};

// Throws LatticeMismatch unless a == b.
void require_same(const Lattice& a, const Lattice& b, const char* context);

}  // namespace edspin::field
