#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace edspin::cli {

enum class Format { kCsv, kJson };

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  Format format = Format::kCsv;
  std::string suite = "all";
};

// Each returns the process exit status; errors propagate as exceptions.
int run_evolve(const Options& opt, std::ostream& log);
int run_trajectories(const Options& opt, std::ostream& log);
int run_sg(const Options& opt, std::ostream& log);
int run_check(const Options& opt, std::ostream& log);

}  // namespace edspin::cli
