#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace edspin::cli {

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

// One output directory per run. The manifest is written first with status "running" and
// rewritten with per-file hashes and status "complete" by finish(), so an interrupted run
// is recognizable. Nothing time- or host-dependent goes into the manifest.
class RunDirectory {
 public:
  RunDirectory(std::filesystem::path dir, nlohmann::json header);

  // Registers `name` and opens it for writing (binary).
  std::ofstream open(const std::string& name);
  void write(const std::string& name, const std::string& content);
  void write_json(const std::string& name, const nlohmann::json& j);
  void finish();

  const std::filesystem::path& path() const { return dir_; }

 private:
  void write_manifest(const std::string& status) const;

  std::filesystem::path dir_;
  nlohmann::json header_;
  std::vector<std::string> files_;
};

}  // namespace edspin::cli
