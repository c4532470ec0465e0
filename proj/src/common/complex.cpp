#include "edspin/common/complex.hpp"

namespace edspin {

namespace {

template <typename T>
T sum_range(std::span<const T> v) {
  constexpr std::size_t kLeaf = 32;
  if (v.size() <= kLeaf) {
    T s{};
    for (const T& x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return sum_range(v.first(half)) + sum_range(v.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> values) { return sum_range(values); }
Complex pairwise_sum(std::span<const Complex> values) { return sum_range(values); }

}  // namespace edspin
