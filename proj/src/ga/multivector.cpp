#include "edspin/ga/multivector.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace edspin::ga {

namespace {

// clang-format off
constexpr std::array<std::array<BladeProduct, kBladeCount>, kBladeCount> kTable = {{
    {{{0, +1}, {1, +1}, {2, +1}, {3, +1}, {4, +1}, {5, +1}, {6, +1}, {7, +1}}},
    {{{1, +1}, {0, +1}, {4, +1}, {6, -1}, {2, +1}, {7, +1}, {3, -1}, {5, +1}}},
    {{{2, +1}, {4, -1}, {0, +1}, {5, +1}, {1, -1}, {3, +1}, {7, +1}, {6, +1}}},
    {{{3, +1}, {6, +1}, {5, -1}, {0, +1}, {7, +1}, {2, -1}, {1, +1}, {4, +1}}},
    {{{4, +1}, {2, -1}, {1, +1}, {7, +1}, {0, -1}, {6, -1}, {5, +1}, {3, -1}}},
    {{{5, +1}, {7, +1}, {3, -1}, {2, +1}, {6, +1}, {0, -1}, {4, -1}, {1, -1}}},
    {{{6, +1}, {3, +1}, {7, +1}, {1, -1}, {5, -1}, {4, +1}, {0, -1}, {2, -1}}},
    {{{7, +1}, {5, +1}, {6, +1}, {4, +1}, {3, -1}, {1, -1}, {2, -1}, {0, -1}}},
}};
// clang-format on

constexpr std::array<const char*, kBladeCount> kBladeName = {"",    "e1",  "e2",  "e3",
                                                             "e12", "e23", "e31", "i"};

}  // namespace

const std::array<std::array<BladeProduct, kBladeCount>, kBladeCount>& product_table() {
  return kTable;
}

Multivector Multivector::grade(int k) const {
  Multivector out;
  for (std::size_t b = 0; b < kBladeCount; ++b) {
    if (kBladeGrade[b] == k) out.c_[b] = c_[b];
  }
  return out;
}

Multivector Multivector::reverse() const {
  Multivector out = *this;
  for (std::size_t b = 0; b < kBladeCount; ++b) {
    if (kBladeGrade[b] >= 2) out.c_[b] = -c_[b];
  }
  return out;
}

Multivector Multivector::spatial_inverse() const {
  Multivector out = *this;
  for (std::size_t b = 0; b < kBladeCount; ++b) {
    if (kBladeGrade[b] % 2 == 1) out.c_[b] = -c_[b];
  }
  return out;
}

double Multivector::norm2() const {
  double s = 0.0;
  for (double v : c_) s += v * v;
  return s;
}

double Multivector::norm() const { return std::sqrt(norm2()); }

double Multivector::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

Multivector Multivector::operator+(const Multivector& o) const {
  Multivector out = *this;
  out += o;
  return out;
}

Multivector Multivector::operator-(const Multivector& o) const {
  Multivector out = *this;
  out -= o;
  return out;
}

Multivector Multivector::operator-() const { return *this * -1.0; }

Multivector Multivector::operator*(const Multivector& o) const {
  Multivector out;
  for (std::size_t a = 0; a < kBladeCount; ++a) {
    if (c_[a] == 0.0) continue;
    for (std::size_t b = 0; b < kBladeCount; ++b) {
      const BladeProduct& p = kTable[a][b];
      out.c_[p.blade] += p.sign * c_[a] * o.c_[b];
    }
  }
  return out;
}

Multivector Multivector::operator*(double s) const {
  Multivector out = *this;
  out *= s;
  return out;
}

Multivector Multivector::operator/(double s) const { return *this * (1.0 / s); }

Multivector& Multivector::operator+=(const Multivector& o) {
  for (std::size_t b = 0; b < kBladeCount; ++b) c_[b] += o.c_[b];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  for (std::size_t b = 0; b < kBladeCount; ++b) c_[b] -= o.c_[b];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

std::string Multivector::to_string(int precision) const {
  std::ostringstream os;
  os << std::setprecision(precision);
  for (std::size_t b = 0; b < kBladeCount; ++b) {
    const double v = c_[b];
    if (b == 0) {
      os << v;
    } else {
      os << (std::signbit(v) ? " - " : " + ") << std::abs(v) << ' ' << kBladeName[b];
    }
  }
  return os.str();
}

Involutions involutions(const Multivector& a) { return {a.reverse(), a.spatial_inverse()}; }

Multivector exp_bivector(const Vec3& b) {
  const double angle = b.norm();
  if (angle == 0.0) return Multivector::scalar(1.0);
  const Vec3 axis = b / angle;
  return Multivector::scalar(std::cos(angle)) + Multivector::dual_vector(axis * std::sin(angle));
}

}  // namespace edspin::ga
