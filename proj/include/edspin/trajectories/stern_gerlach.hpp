#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "json.hpp"

#include "edspin/common/units.hpp"
#include "edspin/field/derivatives.hpp"

namespace edspin::trajectories {

// One-dimensional reduction along the field axis. The lattice axis is the physical z axis and
// the field B_z = B' z acts impulsively on [t1, t2); transverse motion factorizes out. The
// field is supplied directly, so div B != 0 in this idealization.
struct SgConfig {
  double z0 = 0.0;
  double sigma0 = 1.0;
  double p0 = 0.0;
  double theta0 = 0.5 * 3.14159265358979323846;
  double phi0 = 0.0;
  double gradient = 100.0;
  double t1 = 0.0;
  double t2 = 0.1;
  // Free drift after t2.
  double drift = 4.0;
  double extent = 80.0;
  std::size_t points = 512;
  double dt = 0.005;
  double trajectory_dt = 0.005;
  std::size_t particles = 10000;
  std::uint64_t seed = 1;
  int threads = 1;
  field::DerivativeScheme derivative = field::DerivativeScheme::kSpectral;
  // Normalized overlap integral of |psi+| |psi-| above which the packets count as joined.
  double overlap_tolerance = 1e-3;
  // Local |s_z| below this counts as off the +-1 modes.
  double mode_threshold = 0.99;
  // Snapshots of every particle written to the trajectory CSV (0 disables).
  int trajectory_samples = 0;
};

struct SgParticle {
  double z_final = 0.0;
  // +1 for the upper packet, -1 for the lower.
  int packet = 0;
  double s_z = 0.0;
  Vec3 s;
  bool crossed_plane = false;
};

struct SgReport {
  double fraction_up = 0.0;
  double expected_up = 0.0;
  // Binomial standard error sqrt(p(1-p)/N) at the expected p.
  double binomial_sigma = 0.0;
  // Mean of packet * s_z over particles.
  double spin_correlation = 0.0;
  // Distance between the centroids of |psi+|^2 and |psi-|^2 (0 when one is empty).
  double packet_separation = 0.0;
  double overlap = 0.0;
  double midpoint = 0.0;
  // Fraction of particles with |s_z| < mode_threshold.
  double off_mode_fraction = 0.0;
  // Particles whose path changed side of the initial symmetry plane z0.
  std::size_t plane_crossings = 0;
  // Upper-packet particles with s_z <= threshold plus lower-packet with s_z >= -threshold.
  std::size_t correlation_violations = 0;
  double final_time = 0.0;
  std::vector<SgParticle> particles;

  nlohmann::json to_json(bool include_particles = true) const;
};

// Evolves the packet with split-step Fourier, integrates the particle ensemble along the
// drift velocity and classifies final positions by side of the density minimum between the
// packet peaks. Throws PacketsNotSeparated if the final overlap exceeds the tolerance.
// When `trajectory_csv` is non-null, writes particle_id,t,x,y,z,s_x,s_y,s_z rows.
SgReport stern_gerlach(const SgConfig& cfg, const Units& units = {},
                       std::ostream* trajectory_csv = nullptr);

}  // namespace edspin::trajectories
