#include "edspin/trajectories/stern_gerlach.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

#include "edspin/common/errors.hpp"
#include "edspin/dynamics/evolver.hpp"
#include "edspin/field/polar.hpp"
#include "edspin/trajectories/trajectories.hpp"

namespace edspin::trajectories {

namespace {

field::SpinorField initial_packet(const field::Lattice& lat, const SgConfig& cfg, const Units& u) {
  const Complex up(std::cos(0.5 * cfg.theta0), 0.0);
  const Complex down = std::polar(std::sin(0.5 * cfg.theta0), cfg.phi0);
  field::SpinorField f = field::SpinorField::sample(lat, [&](const Vec3& x) {
    const double d = x.x - cfg.z0;
    const Complex g = std::polar(std::exp(-d * d / (4.0 * cfg.sigma0 * cfg.sigma0)),
                                 cfg.p0 * x.x / u.hbar);
    return std::pair{g * up, g * down};
  });
  f.normalize();
  return f;
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

nlohmann::json SgReport::to_json(bool include_particles) const {
  nlohmann::json j = {{"fraction_up", fraction_up},
                      {"expected_up", expected_up},
                      {"binomial_sigma", binomial_sigma},
                      {"spin_correlation", spin_correlation},
                      {"packet_separation", packet_separation},
                      {"overlap", overlap},
                      {"midpoint", midpoint},
                      {"off_mode_fraction", off_mode_fraction},
                      {"plane_crossings", plane_crossings},
                      {"correlation_violations", correlation_violations},
                      {"final_time", final_time},
                      {"particle_count", particles.size()}};
  if (include_particles) {
    auto& arr = j["particles"] = nlohmann::json::array();
    for (const auto& p : particles) {
      arr.push_back({{"z", p.z_final},
                     {"packet", p.packet},
                     {"s", {p.s.x, p.s.y, p.s.z}},
                     {"crossed_plane", p.crossed_plane}});
    }
  }
  return j;
}

SgReport stern_gerlach(const SgConfig& cfg, const Units& units, std::ostream* trajectory_csv) {
  if (!(cfg.t2 > cfg.t1) || cfg.t1 < 0.0) throw InvalidArgument("SG window needs 0 <= t1 < t2");
  if (cfg.particles == 0) throw InvalidArgument("SG needs at least one particle");
  const field::Lattice lat({cfg.extent}, {cfg.points});
  field::SpinorField psi = initial_packet(lat, cfg, units);

  dynamics::ExternalFields kick;
  kick.B.resize(lat.size());
  for (std::size_t i = 0; i < lat.size(); ++i) kick.B[i] = {0.0, 0.0, cfg.gradient * lat.position(i).x};
  dynamics::FieldSchedule schedule;
  schedule.add_segment(cfg.t1, cfg.t2, std::move(kick));

  dynamics::EvolverConfig ecfg;
  ecfg.dt = cfg.dt;
  ecfg.scheme = dynamics::Scheme::kSplitStep;
  dynamics::Evolver evolver(lat, schedule, units, ecfg);

  const dynamics::ExternalFields none;
  VelocityHistory history(lat);
  std::vector<double> frame_times;
  std::vector<std::vector<Vec3>> spin_frames;
  const double t_final = cfg.t2 + cfg.drift;
  const std::vector<double> rho0 = field::born_extract(psi, units).rho;
  evolver.run(psi, t_final, 1, [&](const field::SpinorField& f) {
    history.add(f.time(), velocity_field(f, none, units, cfg.derivative));
    frame_times.push_back(f.time());
    spin_frames.push_back(field::born_extract(f, units).s);
  });

  SgReport r;
  r.final_time = psi.time();
  r.expected_up = std::pow(std::cos(0.5 * cfg.theta0), 2);

  // Packet geometry at the final time.
  const double w = lat.cell_weight();
  std::vector<double> up2(lat.size());
  std::vector<double> dn2(lat.size());
  std::vector<double> rho(lat.size());
  double n_up = 0.0, n_dn = 0.0, z_up = 0.0, z_dn = 0.0, cross = 0.0;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    up2[i] = std::norm(psi.up()[i]);
    dn2[i] = std::norm(psi.down()[i]);
    rho[i] = up2[i] + dn2[i];
    const double z = lat.position(i).x;
    n_up += w * up2[i];
    n_dn += w * dn2[i];
    z_up += w * up2[i] * z;
    z_dn += w * dn2[i] * z;
    cross += w * std::sqrt(up2[i] * dn2[i]);
  }
  constexpr double kEmpty = 1e-12;
  const bool both = n_up > kEmpty && n_dn > kEmpty;
  r.overlap = both ? cross / std::sqrt(n_up * n_dn) : 0.0;
  r.packet_separation = both ? std::abs(z_up / n_up - z_dn / n_dn) : 0.0;
  r.midpoint = cfg.z0;
  if (both) {
    std::size_t a = argmax(up2);
    std::size_t b = argmax(dn2);
    if (a > b) std::swap(a, b);
    std::size_t m = a;
    for (std::size_t i = a; i <= b; ++i) {
      if (rho[i] < rho[m]) m = i;
    }
    r.midpoint = lat.position(m).x;
  }
  if (r.overlap > cfg.overlap_tolerance) {
    throw PacketsNotSeparated("overlap " + std::to_string(r.overlap) + " at t = " +
                              std::to_string(r.final_time));
  }

  // Ensemble.
  Ensemble ensemble = sample_ensemble(lat, rho0, cfg.particles, cfg.seed, cfg.threads);
  r.particles.resize(cfg.particles);
  const int samples = std::max(cfg.trajectory_samples, 0);
  std::vector<std::vector<std::pair<double, Vec3>>> sampled(samples > 0 ? cfg.particles : 0);
  const VelocityFn v = [&history](const Vec3& x, double t) { return history.at(x, t); };
  const auto& s_final = spin_frames.back();
  parallel_for(cfg.particles, cfg.threads, [&](std::size_t i) {
    const Vec3 start = ensemble.positions[i];
    const Path path = integrate_trajectory(start, v, 0.0, r.final_time, cfg.trajectory_dt, &lat);
    SgParticle& p = r.particles[i];
    const double side = start.x - cfg.z0;
    for (const Vec3& x : path.x) {
      if ((x.x - cfg.z0) * side < 0.0) p.crossed_plane = true;
    }
    p.z_final = path.x.back().x;
    p.s = interpolate(lat, s_final, path.x.back());
    p.s_z = p.s.z;
    p.packet = p.z_final > r.midpoint ? 1 : -1;
    if (samples > 0) {
      for (int k = 0; k <= samples; ++k) {
        const std::size_t idx = (path.x.size() - 1) * static_cast<std::size_t>(k) / samples;
        sampled[i].emplace_back(path.t[idx], path.x[idx]);
      }
    }
  });

  std::size_t up = 0, off = 0, crossings = 0, violations = 0;
  double corr = 0.0;
  for (const SgParticle& p : r.particles) {
    if (p.packet > 0) ++up;
    if (std::abs(p.s_z) < cfg.mode_threshold) ++off;
    if (p.crossed_plane) ++crossings;
    if ((p.packet > 0 && p.s_z <= cfg.mode_threshold) ||
        (p.packet < 0 && p.s_z >= -cfg.mode_threshold)) {
      ++violations;
    }
    corr += p.packet * p.s_z;
  }
  const double n = static_cast<double>(cfg.particles);
  r.fraction_up = static_cast<double>(up) / n;
  r.binomial_sigma = std::sqrt(r.expected_up * (1.0 - r.expected_up) / n);
  r.spin_correlation = corr / n;
  r.off_mode_fraction = static_cast<double>(off) / n;
  r.plane_crossings = crossings;
  r.correlation_violations = violations;

  if (trajectory_csv != nullptr) {
    std::ostream& os = *trajectory_csv;
    os << "particle_id,t,x,y,z,s_x,s_y,s_z\n" << std::setprecision(12);
    for (std::size_t i = 0; i < sampled.size(); ++i) {
      for (const auto& [t, x] : sampled[i]) {
        const auto it = std::lower_bound(frame_times.begin(), frame_times.end(), t - 1e-12);
        const std::size_t k = std::min<std::size_t>(it - frame_times.begin(), frame_times.size() - 1);
        const Vec3 s = interpolate(lat, spin_frames[k], x);
        os << i << ',' << t << ",0,0," << x.x << ',' << s.x << ',' << s.y << ',' << s.z << '\n';
      }
    }
  }
  return r;
}

}  // namespace edspin::trajectories
