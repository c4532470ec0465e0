#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "edspin/common/units.hpp"
#include "edspin/dynamics/evolver.hpp"
#include "edspin/dynamics/fields.hpp"
#include "edspin/field/derivatives.hpp"
#include "edspin/field/lattice.hpp"
#include "edspin/field/spinor_field.hpp"
#include "edspin/geometry/generators.hpp"
#include "edspin/trajectories/stern_gerlach.hpp"
#include "edspin/trajectories/trajectories.hpp"

namespace edspin::cli {

// Bad configuration: reported with the file line (0 when unknown) and the JSON pointer.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& file, int line, const std::string& pointer, const std::string& what);
  int line() const { return line_; }
  const std::string& pointer() const { return pointer_; }

 private:
  int line_;
  std::string pointer_;
};

struct EnsembleSpec {
  std::size_t particles = 1000;
  int threads = 1;
  double trajectory_dt = 1e-2;
  // Velocity frames are kept every `frame_stride` evolver steps.
  int frame_stride = 1;
  std::vector<double> born_times;
  double significance = 0.01;
  double min_expected = 5.0;
  // Particles whose paths go to the trajectory CSV.
  std::size_t trajectory_samples = 100;
  bool subquantum = false;
  trajectories::SubQuantumParams subquantum_params;
};

struct GeometrySpec {
  geometry::HkFlowOptions flow;
  double quartic_coupling = 1.0;
};

struct Scenario {
  std::string name = "scenario";
  std::string source_path;
  std::string source_text;
  std::uint64_t seed = 1;
  Units units;
  std::map<std::string, double> constants;
  field::DerivativeScheme derivative = field::DerivativeScheme::kCentral;
  double rho_floor = 1e-300;
  double pole_epsilon = 1e-9;

  std::optional<field::Lattice> lattice;
  std::optional<field::SpinorField> state;
  dynamics::FieldSchedule schedule;
  bool has_fields = false;

  dynamics::EvolverConfig evolver;
  double t_end = 1.0;
  int record_every = 1;

  EnsembleSpec ensemble;
  std::optional<trajectories::SgConfig> sg;
  GeometrySpec geometry;
  std::vector<std::string> outputs;

  bool wants(const std::string& output) const;
  // Throws ConfigError pointing at a missing top-level block.
  void require(const std::string& block) const;
  bool kappa_e_enabled() const;
};

// Parses and validates a scenario file. Everything that can be checked without running the
// physics is checked here: types, ranges, enum names, unknown keys, expression syntax and the
// lattice compatibility of the state and fields.
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(const std::string& text, const std::string& source_name);

// Line of every JSON pointer in a well-formed document (1-based).
std::map<std::string, int> json_pointer_lines(const std::string& text);

}  // namespace edspin::cli
