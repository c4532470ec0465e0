#include "edspin/dynamics/fields.hpp"

#include <algorithm>

#include "edspin/common/errors.hpp"

namespace edspin::dynamics {

void ExternalFields::validate(const field::Lattice& lattice) const {
  const std::size_t n = lattice.size();
  auto check = [n](std::size_t size, const char* name) {
    if (size != 0 && size != n) throw LatticeMismatch(std::string(name) + " has the wrong size");
  };
  check(V.size(), "V");
  check(A.size(), "A");
  check(B.size(), "B");
  check(E.size(), "E");
}

std::vector<Vec3> ExternalFields::magnetic_field(const field::Lattice& lattice,
                                                 field::DerivativeScheme scheme) const {
  if (!B.empty()) return B;
  if (!A.empty()) return field::curl(lattice, A, scheme);
  return {};
}

double ExternalFields::curl_mismatch(const field::Lattice& lattice) const {
  if (A.empty() || B.empty()) return 0.0;
  const auto c = field::curl(lattice, A);
  double m = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) m = std::max(m, (c[i] - B[i]).norm());
  return m;
}

void FieldSchedule::add_segment(double t_begin, double t_end, ExternalFields fields) {
  if (!(t_end > t_begin)) throw InvalidArgument("field segment needs t_end > t_begin");
  for (const auto& s : segments_) {
    if (t_begin < s.t_end && s.t_begin < t_end) throw InvalidArgument("field segments overlap");
  }
  segments_.push_back({t_begin, t_end, std::move(fields)});
}

int FieldSchedule::segment_at(double t) const {
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    if (t >= segments_[k].t_begin && t < segments_[k].t_end) return static_cast<int>(k);
  }
  return -1;
}

const ExternalFields& FieldSchedule::at(double t) const {
  const int k = segment_at(t);
  return k < 0 ? base_ : segments_[k].fields;
}

void FieldSchedule::validate(const field::Lattice& lattice) const {
  base_.validate(lattice);
  for (const auto& s : segments_) s.fields.validate(lattice);
}

ExternalFields reverse_fields(const ExternalFields& ext) {
  ExternalFields r = ext;
  for (auto& a : r.A) a = -a;
  for (auto& b : r.B) b = -b;
  return r;
}

}  // namespace edspin::dynamics
