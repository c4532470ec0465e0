#include "edspin/field/spinor_field.hpp"

#include <cmath>

#include "edspin/common/errors.hpp"

namespace edspin::field {

SpinorField::SpinorField(Lattice lattice)
    : lattice_(std::move(lattice)), up_(lattice_.size()), down_(lattice_.size()) {}

SpinorField::SpinorField(Lattice lattice, std::vector<Complex> up, std::vector<Complex> down)
    : lattice_(std::move(lattice)), up_(std::move(up)), down_(std::move(down)) {
  if (up_.size() != lattice_.size() || down_.size() != lattice_.size()) {
    throw LatticeMismatch("amplitude arrays do not match the lattice size");
  }
}

SpinorField SpinorField::sample(const Lattice& lattice, const AmplitudeFn& fn) {
  SpinorField f(lattice);
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const auto [u, d] = fn(lattice.position(i));
    f.up_[i] = u;
    f.down_[i] = d;
  }
  return f;
}

ga::Spinor SpinorField::spinor_at(std::size_t i) const {
  return ga::Spinor::from_amplitudes(up_[i].real(), up_[i].imag(), down_[i].real(),
                                     down_[i].imag());
}

void SpinorField::set_spinor(std::size_t i, const ga::Spinor& s) {
  const ga::Multivector u = s.up();
  const ga::Multivector d = s.down();
  up_[i] = {u.scalar_part(), u.pseudoscalar_part()};
  down_[i] = {d.scalar_part(), d.pseudoscalar_part()};
}

double SpinorField::norm() const {
  std::vector<double> rho(size());
  for (std::size_t i = 0; i < size(); ++i) rho[i] = std::norm(up_[i]) + std::norm(down_[i]);
  return lattice_.cell_weight() * pairwise_sum(rho);
}

bool SpinorField::is_normalized(double tolerance) const {
  return std::abs(norm() - 1.0) <= tolerance;
}

void SpinorField::normalize() {
  const double n = norm();
  if (!(n > 0.0)) throw NotNormalized("cannot normalize a zero field");
  const double s = 1.0 / std::sqrt(n);
  for (std::size_t i = 0; i < size(); ++i) {
    up_[i] *= s;
    down_[i] *= s;
  }
}

SpinorField SpinorField::operator+(const SpinorField& o) const {
  SpinorField out = *this;
  out += o;
  return out;
}

SpinorField SpinorField::operator-(const SpinorField& o) const {
  return *this + o * Complex(-1.0, 0.0);
}

SpinorField SpinorField::operator*(Complex s) const {
  SpinorField out = *this;
  for (std::size_t i = 0; i < size(); ++i) {
    out.up_[i] *= s;
    out.down_[i] *= s;
  }
  return out;
}

SpinorField& SpinorField::operator+=(const SpinorField& o) {
  require_same(lattice_, o.lattice_, "field addition");
  for (std::size_t i = 0; i < size(); ++i) {
    up_[i] += o.up_[i];
    down_[i] += o.down_[i];
  }
  return *this;
}

Complex inner_product(const SpinorField& a, const SpinorField& b) {
  require_same(a.lattice(), b.lattice(), "inner product");
  std::vector<Complex> terms(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    terms[i] = std::conj(a.up()[i]) * b.up()[i] + std::conj(a.down()[i]) * b.down()[i];
  }
  return a.lattice().cell_weight() * pairwise_sum(terms);
}

double fs_optimal_phase(const SpinorField& a, const SpinorField& b) {
  const Complex ba = inner_product(b, a);
  return std::abs(ba) == 0.0 ? 0.0 : std::arg(ba);
}

double fs_distance(const SpinorField& a, const SpinorField& b, double tolerance) {
  require_same(a.lattice(), b.lattice(), "fs_distance");
  if (!a.is_normalized(tolerance)) throw NotNormalized("first argument of fs_distance");
  if (!b.is_normalized(tolerance)) throw NotNormalized("second argument of fs_distance");
  // Summing |a - b e^{i sigma}|^2 directly avoids the cancellation in 2 - 2|<a|b>|.
  const Complex phase = std::polar(1.0, fs_optimal_phase(a, b));
  std::vector<double> terms(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    terms[i] = std::norm(a.up()[i] - b.up()[i] * phase) + std::norm(a.down()[i] - b.down()[i] * phase);
  }
  return a.lattice().cell_weight() * pairwise_sum(terms);
}

SpinorField global_phase(const SpinorField& f, double angle) {
  SpinorField out = f * std::polar(1.0, angle);
  out.set_time(f.time());
  return out;
}

}  // namespace edspin::field
