#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "edspin/geometry/generators.hpp"

namespace edspin::cli {

struct CheckSettings {
  std::uint64_t seed = 1;
  // Flow options for the bilinear generator; the quartic one always uses RK4.
  geometry::HkFlowOptions flow;
  double quartic_coupling = 1.0;
};

// algebra, geometry, identity, conservation, timereversal, born.
std::vector<std::string> check_suite_names();

// {"suite", "passed", "checks": [{"name", "value", "limit", "relation", "passed"}]}.
nlohmann::json run_check_suite(const std::string& name, const CheckSettings& settings);

}  // namespace edspin::cli
