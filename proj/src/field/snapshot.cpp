#include "edspin/field/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "edspin/common/errors.hpp"

namespace edspin::field {

namespace {

constexpr char kMagic[8] = {'E', 'D', 'S', 'P', 'I', 'N', '1', '\0'};

static_assert(std::endian::native == std::endian::little,
              "snapshot IO assumes a little-endian host");

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw Error("truncated snapshot");
  return v;
}

}  // namespace

void write_snapshot(std::ostream& os, const SpinorField& field) {
  const Lattice& lat = field.lattice();
  os.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(lat.dim()));
  for (int a = 0; a < lat.dim(); ++a) {
    put<double>(os, lat.extent(a));
    put<std::uint64_t>(os, lat.points(a));
    put<double>(os, lat.spacing(a));
  }
  put<double>(os, field.time());
  for (std::size_t i = 0; i < field.size(); ++i) {
    put<double>(os, field.up()[i].real());
    put<double>(os, field.up()[i].imag());
    put<double>(os, field.down()[i].real());
    put<double>(os, field.down()[i].imag());
  }
  if (!os) throw Error("failed writing snapshot");
}

SpinorField read_snapshot(std::istream& is) {
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) throw Error("bad snapshot magic");
  const auto dim = get<std::uint32_t>(is);
  if (dim < 1 || dim > 3) throw Error("bad snapshot dimension");
  std::vector<double> extents;
  std::vector<std::size_t> points;
  for (std::uint32_t a = 0; a < dim; ++a) {
    extents.push_back(get<double>(is));
    points.push_back(get<std::uint64_t>(is));
    get<double>(is);  // spacing is implied by extent / points
  }
  SpinorField f{Lattice(extents, points)};
  f.set_time(get<double>(is));
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double ur = get<double>(is);
    const double ui = get<double>(is);
    const double dr = get<double>(is);
    const double di = get<double>(is);
    f.up()[i] = {ur, ui};
    f.down()[i] = {dr, di};
  }
  return f;
}

void write_snapshot(const std::filesystem::path& path, const SpinorField& field) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path.string());
  write_snapshot(os, field);
}

SpinorField read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path.string());
  return read_snapshot(is);
}

nlohmann::json snapshot_to_json(const SpinorField& field) {
  if (field.size() > kJsonSnapshotLimit) {
    throw InvalidArgument("JSON snapshots are limited to 4096 lattice points");
  }
  const Lattice& lat = field.lattice();
  nlohmann::json j;
  j["dim"] = lat.dim();
  for (int a = 0; a < lat.dim(); ++a) {
    j["extents"].push_back(lat.extent(a));
    j["points"].push_back(lat.points(a));
    j["spacing"].push_back(lat.spacing(a));
  }
  j["time"] = field.time();
  auto& up = j["up"] = nlohmann::json::array();
  auto& down = j["down"] = nlohmann::json::array();
  for (std::size_t i = 0; i < field.size(); ++i) {
    up.push_back({field.up()[i].real(), field.up()[i].imag()});
    down.push_back({field.down()[i].real(), field.down()[i].imag()});
  }
  return j;
}

SpinorField snapshot_from_json(const nlohmann::json& j) {
  SpinorField f{Lattice(j.at("extents").get<std::vector<double>>(),
                        j.at("points").get<std::vector<std::size_t>>())};
  f.set_time(j.value("time", 0.0));
  const auto& up = j.at("up");
  const auto& down = j.at("down");
  if (up.size() != f.size() || down.size() != f.size()) {
    throw LatticeMismatch("JSON snapshot amplitude count");
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.up()[i] = {up[i][0].get<double>(), up[i][1].get<double>()};
    f.down()[i] = {down[i][0].get<double>(), down[i][1].get<double>()};
  }
  return f;
}

}  // namespace edspin::field
