#pragma once

#include <vector>

#include "edspin/common/vec3.hpp"
#include "edspin/field/derivatives.hpp"
#include "edspin/field/lattice.hpp"

namespace edspin::dynamics {

// External fields on a lattice. Empty arrays mean identically zero; B empty with A present
// means B = curl A.
struct ExternalFields {
  std::vector<double> V;
  std::vector<Vec3> A;
  std::vector<Vec3> B;
  std::vector<Vec3> E;
  double kappa_m = 0.0;
  double kappa_e = 0.0;

  bool has_vector_potential() const { return !A.empty(); }
  // Throws LatticeMismatch if a non-empty array has the wrong size.
  void validate(const field::Lattice& lattice) const;
  // B for the Zeeman and kappa_m terms: supplied B, else curl A, else empty.
  std::vector<Vec3> magnetic_field(const field::Lattice& lattice,
                                   field::DerivativeScheme scheme = field::DerivativeScheme::kCentral) const;
  // max |curl A - B| when both are supplied, else 0.
  double curl_mismatch(const field::Lattice& lattice) const;
};

// Piecewise-constant schedule: `base` everywhere except on the half-open windows
// [t_begin, t_end) of each segment, where the segment's fields apply.
class FieldSchedule {
 public:
  struct Segment {
    double t_begin;
    double t_end;
    ExternalFields fields;
  };

  FieldSchedule() = default;
  explicit FieldSchedule(ExternalFields base) : base_(std::move(base)) {}
  void add_segment(double t_begin, double t_end, ExternalFields fields);

  // -1 for the base fields, else the segment index active at t.
  int segment_at(double t) const;
  const ExternalFields& at(double t) const;
  const ExternalFields& base() const { return base_; }
  const std::vector<Segment>& segments() const { return segments_; }
  bool time_independent() const { return segments_.empty(); }
  void validate(const field::Lattice& lattice) const;

 private:
  ExternalFields base_;
  std::vector<Segment> segments_;
};

// A -> -A, B -> -B, E -> E, V -> V.
ExternalFields reverse_fields(const ExternalFields& ext);

}  // namespace edspin::dynamics
