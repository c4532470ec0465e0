#include "edspin/field/lattice.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "edspin/common/errors.hpp"

namespace edspin::field {

Lattice::Lattice(std::vector<double> extents, std::vector<std::size_t> points)
    : extents_(std::move(extents)), points_(std::move(points)) {
  if (points_.empty() || points_.size() > 3 || extents_.size() != points_.size()) {
    throw InvalidArgument("lattice needs 1 to 3 axes with one extent per axis");
  }
  size_ = 1;
  weight_ = 1.0;
  for (std::size_t a = 0; a < points_.size(); ++a) {
    if (points_[a] < 2 || !(extents_[a] > 0.0)) {
      throw InvalidArgument("lattice axis " + std::to_string(a) +
                            " needs at least 2 points and a positive extent");
    }
    spacing_.push_back(extents_[a] / static_cast<double>(points_[a]));
    size_ *= points_[a];
    weight_ *= spacing_[a];
  }
  std::size_t s = 1;
  for (int a = dim() - 1; a >= 0; --a) {
    stride_[a] = s;
    s *= points_[a];
  }
}

double Lattice::coordinate(int a, std::size_t i) const {
  return -0.5 * extents_[a] + static_cast<double>(i) * spacing_[a];
}

std::array<std::size_t, 3> Lattice::multi_index(std::size_t flat) const {
  std::array<std::size_t, 3> idx{0, 0, 0};
  for (int a = 0; a < dim(); ++a) {
    idx[a] = (flat / stride_[a]) % points_[a];
  }
  return idx;
}

std::size_t Lattice::flat_index(const std::array<std::size_t, 3>& idx) const {
  std::size_t f = 0;
  for (int a = 0; a < dim(); ++a) f += idx[a] * stride_[a];
  return f;
}

Vec3 Lattice::position(std::size_t flat) const {
  const auto idx = multi_index(flat);
  Vec3 x;
  for (int a = 0; a < dim(); ++a) x[a] = coordinate(a, idx[a]);
  return x;
}

std::size_t Lattice::neighbor(std::size_t flat, int a, long offset) const {
  const long n = static_cast<long>(points_[a]);
  const long i = static_cast<long>((flat / stride_[a]) % points_[a]);
  long j = (i + offset) % n;
  if (j < 0) j += n;
  return flat + static_cast<std::size_t>(j - i) * stride_[a];
}

double Lattice::wavenumber(int a, std::size_t i) const {
  const long n = static_cast<long>(points_[a]);
  long m = static_cast<long>(i);
  if (m > n / 2) m -= n;
  return 2.0 * std::numbers::pi * static_cast<double>(m) / extents_[a];
}

Vec3 Lattice::wrap(const Vec3& x) const {
  Vec3 out = x;
  for (int a = 0; a < dim(); ++a) {
    const double l = extents_[a];
    double r = std::fmod(x[a] + 0.5 * l, l);
    if (r < 0.0) r += l;
    out[a] = r - 0.5 * l;
  }
  return out;
}

bool Lattice::operator==(const Lattice& o) const {
  return points_ == o.points_ && extents_ == o.extents_;
}

void require_same(const Lattice& a, const Lattice& b, const char* context) {
  if (a != b) throw LatticeMismatch(context);
}

}  // namespace edspin::field
