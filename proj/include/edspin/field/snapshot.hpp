#pragma once

#include <filesystem>
#include <iosfwd>

#include "json.hpp"

#include "edspin/field/spinor_field.hpp"

namespace edspin::field {

// Binary layout, little-endian:
//   char[8]  magic "EDSPIN1\0"
//   uint32   dim
//   dim x { float64 extent, uint64 points, float64 spacing }
//   float64  time
//   size x { float64 Re psi+, Im psi+, Re psi-, Im psi- } in row-major point order
void write_snapshot(std::ostream& os, const SpinorField& field);
SpinorField read_snapshot(std::istream& is);
void write_snapshot(const std::filesystem::path& path, const SpinorField& field);
SpinorField read_snapshot(const std::filesystem::path& path);

inline constexpr std::size_t kJsonSnapshotLimit = 4096;

// {"dim", "extents", "points", "spacing", "time", "up": [[re, im]...], "down": [...]}.
// Throws InvalidArgument above kJsonSnapshotLimit points.
nlohmann::json snapshot_to_json(const SpinorField& field);
SpinorField snapshot_from_json(const nlohmann::json& j);

}  // namespace edspin::field
