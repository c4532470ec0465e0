#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>

#include "edspin/common/vec3.hpp"

namespace edspin::ga {

// Basis order of the dense coefficient layout: {1, e1, e2, e3, e12, e23, e31, i}
// with i = e1 e2 e3. A bivector i*b (b a vector) has e23 = b.x, e31 = b.y, e12 = b.z.
enum Blade : std::size_t {
  kScalar = 0,
  kE1 = 1,
  kE2 = 2,
  kE3 = 3,
  kE12 = 4,
  kE23 = 5,
  kE31 = 6,
  kPseudo = 7,
};

inline constexpr std::size_t kBladeCount = 8;

// Grade of each basis blade in layout order.
inline constexpr std::array<int, kBladeCount> kBladeGrade = {0, 1, 1, 1, 2, 2, 2, 3};

// Product of basis blades a*b = sign * blade. Indexed [a][b].
struct BladeProduct {
  std::size_t blade;
  int sign;
};
const std::array<std::array<BladeProduct, kBladeCount>, kBladeCount>& product_table();

// Element of the Pauli algebra G3. Complex numbers are scalar + pseudoscalar pairs.
class Multivector {
 public:
  constexpr Multivector() = default;
  constexpr explicit Multivector(const std::array<double, kBladeCount>& coefficients)
      : c_(coefficients) {}

  static constexpr Multivector scalar(double s) { return basis(kScalar, s); }
  static constexpr Multivector pseudoscalar(double s) { return basis(kPseudo, s); }
  static constexpr Multivector basis(std::size_t blade, double value = 1.0) {
    Multivector m;
    m.c_[blade] = value;
    return m;
  }
  static constexpr Multivector vector(const Vec3& v) {
    return Multivector({0.0, v.x, v.y, v.z, 0.0, 0.0, 0.0, 0.0});
  }
  // The bivector i*b.
  static constexpr Multivector dual_vector(const Vec3& b) {
    return Multivector({0.0, 0.0, 0.0, 0.0, b.z, b.x, b.y, 0.0});
  }
  // alpha + a + i b + i beta, the generic form.
  static constexpr Multivector from_parts(double alpha, const Vec3& a, const Vec3& b, double beta) {
    return Multivector({alpha, a.x, a.y, a.z, b.z, b.x, b.y, beta});
  }
  // re + im*i.
  static constexpr Multivector complex(double re, double im) {
    return Multivector({re, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, im});
  }

  constexpr double operator[](std::size_t blade) const { return c_[blade]; }
  constexpr double& operator[](std::size_t blade) { return c_[blade]; }
  constexpr const std::array<double, kBladeCount>& coefficients() const { return c_; }

  constexpr double scalar_part() const { return c_[kScalar]; }
  constexpr double pseudoscalar_part() const { return c_[kPseudo]; }
  constexpr Vec3 vector_part() const { return {c_[kE1], c_[kE2], c_[kE3]}; }
  // b such that the grade-2 part equals i*b.
  constexpr Vec3 bivector_dual() const { return {c_[kE23], c_[kE31], c_[kE12]}; }

  // Grade projection <A>_k for k in 0..3.
  Multivector grade(int k) const;
  // Projection onto several grades, e.g. even() = grades 0 and 2.
  Multivector even() const { return grade(0) + grade(2); }
  Multivector odd() const { return grade(1) + grade(3); }

  // Reversion (dagger): flips grades 2 and 3.
  Multivector reverse() const;
  // Spatial inversion (star): flips grades 1 and 3.
  Multivector spatial_inverse() const;

  // <A A^dagger>_0, the squared magnitude (sum of squared coefficients in G3).
  double norm2() const;
  double norm() const;
  // Largest absolute coefficient.
  double max_abs() const;

  Multivector operator+(const Multivector& o) const;
  Multivector operator-(const Multivector& o) const;
  Multivector operator-() const;
  Multivector operator*(const Multivector& o) const;
  Multivector operator*(double s) const;
  Multivector operator/(double s) const;
  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(double s);

  constexpr bool operator==(const Multivector&) const = default;

  // "a + b e1 + c e2 + d e3 + e e12 + f e23 + g e31 + h i"
  std::string to_string(int precision = 6) const;

 private:
  std::array<double, kBladeCount> c_{};
};

inline Multivector operator*(double s, const Multivector& m) { return m * s; }

// Geometric product as a free function.
inline Multivector geometric_product(const Multivector& a, const Multivector& b) { return a * b; }

// The two involutions of G3, returned together.
struct Involutions {
  Multivector reverse;
  Multivector spatial_inverse;
};
Involutions involutions(const Multivector& a);

// exp of a bivector i*b: cos|b| + i b_hat sin|b|.
Multivector exp_bivector(const Vec3& b);

}  // namespace edspin::ga
