#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <iostream>
#include <random>
#include <sstream>

#include "checks.hpp"
#include "config.hpp"
#include "manifest.hpp"

#include "edspin/common/errors.hpp"
#include "edspin/dynamics/hamiltonian.hpp"
#include "edspin/dynamics/observables.hpp"
#include "edspin/field/polar.hpp"
#include "edspin/field/snapshot.hpp"

namespace edspin::cli {

using nlohmann::json;

namespace {

// Column table written as CSV or as {"columns": [...], "rows": [[...]]}.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void write(RunDirectory& run, const std::string& stem, Format format) const {
    if (format == Format::kJson) {
      run.write_json(stem + ".json", {{"columns", columns}, {"rows", rows}});
      return;
    }
    std::ofstream out = run.open(stem + ".csv");
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
    out << "\n";
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << r[c];
      out << "\n";
    }
  }
};

Scenario load(const Options& opt) {
  if (opt.config.empty()) throw ConfigError("(command line)", 0, "", "--config is required");
  Scenario s = load_scenario(opt.config);
  if (opt.seed) {
    s.seed = *opt.seed;
    if (s.sg) s.sg->seed = *opt.seed;
  }
  if (opt.threads) {
    s.ensemble.threads = *opt.threads;
    if (s.sg) s.sg->threads = *opt.threads;
  }
  return s;
}

std::string default_out(const Scenario& s, const std::string& command) { return s.name + "_" + command; }

json manifest_header(const Scenario& s, const std::string& command, const Options& opt) {
  return {{"tool", "edspin"},
          {"command", command},
          {"scenario", s.name},
          {"seed", s.seed},
          {"format", opt.format == Format::kJson ? "json" : "csv"},
          {"config_sha256", sha256_hex(s.source_text)}};
}

// Notices that do not stop the run.
void print_notices(const Scenario& s, std::ostream& log) {
  if (s.kappa_e_enabled()) {
    log << "notice: kappa_e != 0 adds an electric dipole coupling; the dynamics is no longer "
           "time-reversal symmetric\n";
  }
  if (s.lattice) {
    if (auto w = dynamics::cfl_warning(s.evolver, *s.lattice, s.units)) log << "notice: " << *w << "\n";
    const double mismatch = s.schedule.base().curl_mismatch(*s.lattice);
    if (mismatch > 1e-8) log << "notice: supplied B differs from curl A by up to " << mismatch << "\n";
  }
}

std::vector<double> row_of(const dynamics::LedgerRow& r) {
  return {r.t,
          r.norm,
          r.energy,
          r.mean_position.x,
          r.mean_position.y,
          r.mean_position.z,
          r.mean_momentum.x,
          r.mean_momentum.y,
          r.mean_momentum.z,
          r.total_spin.x,
          r.total_spin.y,
          r.total_spin.z};
}

const std::vector<std::string> kLedgerColumns = {"t",       "norm",    "energy",  "x_mean",
                                                 "y_mean",  "z_mean",  "px_mean", "py_mean",
                                                 "pz_mean", "Sx",      "Sy",      "Sz"};

std::string frame_name(std::size_t k) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "snapshots/frame_%06zu.bin", k);
  return buf;
}

}  // namespace

int run_evolve(const Options& opt, std::ostream& log) {
  Scenario s = load(opt);
  s.require("lattice");
  s.require("state");
  print_notices(s, log);
  const field::Lattice& lat = *s.lattice;
  RunDirectory run(opt.out.empty() ? default_out(s, "evolve") : opt.out, manifest_header(s, "evolve", opt));

  Table ledger{kLedgerColumns, {}};
  std::size_t frames = 0;
  double max_norm_step = 0.0, max_energy_drift = 0.0, max_continuity = 0.0;
  double last_norm = s.state->norm();
  const double e0 = dynamics::energy(*s.state, s.schedule.at(0.0), s.units);
  std::deque<field::SpinorField> window;

  field::SpinorField psi = *s.state;
  dynamics::Evolver ev(lat, s.schedule, s.units, s.evolver);
  ev.run(psi, s.t_end, s.record_every, [&](const field::SpinorField& f) {
    const auto& ext = s.schedule.at(f.time());
    const auto row = dynamics::ledger_row(f, ext, s.units);
    ledger.rows.push_back(row_of(row));
    max_norm_step = std::max(max_norm_step, std::abs(row.norm - last_norm));
    last_norm = row.norm;
    if (s.schedule.time_independent()) max_energy_drift = std::max(max_energy_drift, std::abs(row.energy - e0));
    if (s.wants("snapshots")) {
      std::ofstream out = run.open(frame_name(frames));
      field::write_snapshot(out, f);
    }
    ++frames;
    // Continuity on every equally spaced triple of recorded frames.
    window.push_back(f);
    if (window.size() > 3) window.pop_front();
    if (window.size() == 3 && s.schedule.time_independent()) {
      const double d1 = window[1].time() - window[0].time();
      const double d2 = window[2].time() - window[1].time();
      if (std::abs(d1 - d2) <= 1e-12 * d1) {
        std::vector<field::SpinorField> series(window.begin(), window.end());
        max_continuity = std::max(max_continuity, dynamics::continuity_residual(series, ext, s.units, s.derivative));
      }
    }
  });

  if (s.wants("ledger")) ledger.write(run, "ledger", opt.format);
  const auto& ext = s.schedule.at(psi.time());
  if (s.wants("snapshot_json")) run.write_json("final_state.json", field::snapshot_to_json(psi));
  if (s.wants("polar")) {
    const auto chart = field::polar_from_amplitudes(psi, s.units, s.rho_floor, s.pole_epsilon);
    Table t{{"x", "y", "z", "rho", "Phi", "theta", "phi", "singular"}, {}};
    for (std::size_t i = 0; i < lat.size(); ++i) {
      const Vec3 r = lat.position(i);
      t.rows.push_back({r.x, r.y, r.z, chart.rho[i], chart.Phi[i], chart.theta[i], chart.phi[i],
                        static_cast<double>(chart.singular[i])});
    }
    t.write(run, "polar", opt.format);
  }
  if (s.wants("velocity")) {
    const auto v = dynamics::drift_velocity(psi, ext, s.units, s.derivative, s.rho_floor);
    Table t{{"x", "y", "z", "vx", "vy", "vz", "singular"}, {}};
    for (std::size_t i = 0; i < lat.size(); ++i) {
      const Vec3 r = lat.position(i);
      t.rows.push_back({r.x, r.y, r.z, v.v[i].x, v.v[i].y, v.v[i].z, static_cast<double>(v.singular[i])});
    }
    t.write(run, "velocity", opt.format);
  }
  if (s.wants("diagnostics")) {
    json d = {{"frames", frames},
              {"final_time", psi.time()},
              {"final_norm", psi.norm()},
              {"max_norm_change_between_frames", max_norm_step},
              {"initial_energy", e0},
              {"max_energy_drift", s.schedule.time_independent() ? json(max_energy_drift) : json(nullptr)},
              {"max_relative_energy_drift", s.schedule.time_independent() && std::abs(e0) > 1e-12
                                                ? json(max_energy_drift / std::abs(e0))
                                                : json(nullptr)},
              {"max_continuity_residual", s.schedule.time_independent() ? json(max_continuity) : json(nullptr)},
              {"kappa_e_enabled", s.kappa_e_enabled()}};
    run.write_json("diagnostics.json", d);
  }
  run.finish();
  log << "evolve: " << frames << " frames to t = " << psi.time() << " in " << run.path().string() << "\n";
  return 0;
}

int run_trajectories(const Options& opt, std::ostream& log) {
  Scenario s = load(opt);
  s.require("lattice");
  s.require("state");
  print_notices(s, log);
  const field::Lattice& lat = *s.lattice;
  const EnsembleSpec& es = s.ensemble;
  RunDirectory run(opt.out.empty() ? default_out(s, "trajectories") : opt.out,
                   manifest_header(s, "trajectories", opt));

  // Field evolution with velocity frames, stopping exactly at every checkpoint.
  std::vector<double> checkpoints = es.born_times;
  if (checkpoints.empty() || checkpoints.back() < s.t_end) checkpoints.push_back(s.t_end);
  trajectories::VelocityHistory history(lat);
  std::vector<field::SpinorField> at_checkpoint;
  field::SpinorField psi = *s.state;
  const field::SpinorField initial = psi;
  dynamics::Evolver ev(lat, s.schedule, s.units, s.evolver);
  auto add_frame = [&](const field::SpinorField& f) {
    if (!history.times().empty() && !(f.time() > history.times().back())) return;
    history.add(f.time(), trajectories::velocity_field(f, s.schedule.at(f.time()), s.units, s.derivative, s.rho_floor));
  };
  for (double t : checkpoints) {
    ev.run(psi, t, es.frame_stride, add_frame);
    at_checkpoint.push_back(psi);
  }

  trajectories::Ensemble ens = trajectories::sample_ensemble(lat, field::born_extract(initial, s.units).rho,
                                                             es.particles, s.seed, es.threads);
  const std::size_t tracked = std::min(es.trajectory_samples, es.particles);
  Table paths{{"particle_id", "t", "x", "y", "z", "s_x", "s_y", "s_z"}, {}};
  auto record = [&](const field::SpinorField& f) {
    const auto spin = field::born_extract(f, s.units).s;
    for (std::size_t p = 0; p < tracked; ++p) {
      const Vec3 x = ens.positions[p];
      const Vec3 sp = trajectories::interpolate(lat, spin, x);
      paths.rows.push_back({static_cast<double>(p), f.time(), x.x, x.y, x.z, sp.x, sp.y, sp.z});
    }
  };
  json born = json::array();
  auto born_check = [&](const field::SpinorField& f) {
    const auto rep = trajectories::born_statistics(ens, lat, field::born_extract(f, s.units).rho,
                                                   es.significance, es.min_expected);
    json j = rep.to_json();
    j["t"] = f.time();
    born.push_back(j);
    return rep.passed;
  };
  record(initial);
  bool all_passed = born_check(initial);

  std::vector<std::mt19937_64> rngs;
  if (es.subquantum) {
    rngs.reserve(es.particles);
    // Streams disjoint from the sampling streams.
    for (std::size_t p = 0; p < es.particles; ++p) rngs.push_back(trajectories::particle_rng(s.seed + 1, p));
  }
  const auto velocity = [&](const Vec3& x, double t) { return history.at(x, t); };
  double t = 0.0;
  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    const double t1 = checkpoints[k];
    if (es.subquantum) {
      // dt_sub shrinks slightly so that each interval holds a whole number of steps.
      trajectories::SubQuantumParams p = es.subquantum_params;
      const long steps = std::max(1L, static_cast<long>(std::ceil((t1 - t) / p.dt_sub - 1e-9)));
      p.dt_sub = (t1 - t) / static_cast<double>(steps);
      trajectories::parallel_for(es.particles, es.threads, [&](std::size_t i) {
        Vec3 x = ens.positions[i];
        for (long n = 0; n < steps; ++n) {
          x = lat.wrap(trajectories::sample_subquantum_step(x, t + n * p.dt_sub, velocity, p, s.units, lat.dim(), rngs[i]));
        }
        ens.positions[i] = x;
      });
    } else {
      trajectories::propagate_ensemble(ens, history, t, t1, es.trajectory_dt, es.threads);
    }
    t = t1;
    record(at_checkpoint[k]);
    all_passed = born_check(at_checkpoint[k]) && all_passed;
  }

  if (s.wants("trajectories")) paths.write(run, "trajectories", opt.format);
  if (s.wants("born")) run.write_json("born.json", born);
  if (s.wants("diagnostics")) {
    run.write_json("diagnostics.json", {{"particles", es.particles},
                                        {"acceptance_rate", ens.acceptance_rate},
                                        {"velocity_frames", history.times().size()},
                                        {"subquantum", es.subquantum},
                                        {"born_all_passed", all_passed}});
  }
  run.finish();
  log << "trajectories: " << es.particles << " particles to t = " << t << "; Born checks "
      << (all_passed ? "passed" : "FAILED") << "\n";
  return 0;
}

int run_sg(const Options& opt, std::ostream& log) {
  Scenario s = load(opt);
  s.require("sg");
  print_notices(s, log);
  RunDirectory run(opt.out.empty() ? default_out(s, "sg") : opt.out, manifest_header(s, "sg", opt));
  const bool paths = s.sg->trajectory_samples > 0 && s.wants("trajectories");
  trajectories::SgReport report;
  if (paths) {
    std::ofstream csv = run.open("sg_trajectories.csv");
    report = trajectories::stern_gerlach(*s.sg, s.units, &csv);
  } else {
    report = trajectories::stern_gerlach(*s.sg, s.units);
  }
  run.write_json("sg_report.json", report.to_json(s.wants("particles")));
  run.finish();
  char line[160];
  std::snprintf(line, sizeof(line), "sg: fraction_up %.4f (expected %.4f +- %.4f), separation %.3f\n",
                report.fraction_up, report.expected_up, report.binomial_sigma, report.packet_separation);
  log << line;
  return 0;
}

int run_check(const Options& opt, std::ostream& log) {
  std::optional<Scenario> s;
  if (!opt.config.empty()) s = load(opt);
  CheckSettings settings;
  if (s) {
    settings.seed = s->seed;
    settings.flow = s->geometry.flow;
    settings.quartic_coupling = s->geometry.quartic_coupling;
  } else if (opt.seed) {
    settings.seed = *opt.seed;
  }
  std::vector<std::string> names;
  if (opt.suite == "all") {
    names = check_suite_names();
  } else {
    const auto all = check_suite_names();
    if (std::find(all.begin(), all.end(), opt.suite) == all.end()) {
      std::string list;
      for (const auto& n : all) list += (list.empty() ? "" : ", ") + n;
      throw ConfigError("(command line)", 0, "", "unknown suite '" + opt.suite + "'; expected all or one of: " + list);
    }
    names = {opt.suite};
  }
  json report = {{"suites", json::array()}};
  bool passed = true;
  for (const auto& name : names) {
    const json r = run_check_suite(name, settings);
    passed = passed && r.at("passed").get<bool>();
    report["suites"].push_back(r);
    log << (r.at("passed").get<bool>() ? "PASS " : "FAIL ") << name << "\n";
  }
  report["passed"] = passed;
  if (!opt.out.empty()) {
    json header = {{"tool", "edspin"}, {"command", "check"}, {"suite", opt.suite}, {"seed", settings.seed}};
    if (s) header["config_sha256"] = sha256_hex(s->source_text);
    RunDirectory run(opt.out, header);
    run.write_json("check_report.json", report);
    run.finish();
  }
  std::cout << report.dump(2) << "\n";
  return passed ? 0 : 1;
}

}  // namespace edspin::cli
