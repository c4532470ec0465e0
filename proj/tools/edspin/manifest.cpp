#include "manifest.hpp"

#include <array>
#include <cstdio>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace edspin::cli {

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw std::runtime_error("SHA-256 initialisation failed");
    }
  }
  void update(const char* data, std::size_t n) { EVP_DigestUpdate(ctx_.get(), data, n); }
  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_.get(), md.data(), &len);
    std::string out;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
      std::snprintf(buf, sizeof(buf), "%02x", md[i]);
      out += buf;
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  Sha256 h;
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

RunDirectory::RunDirectory(std::filesystem::path dir, nlohmann::json header)
    : dir_(std::move(dir)), header_(std::move(header)) {
  std::filesystem::create_directories(dir_);
  write_manifest("running");
}

std::ofstream RunDirectory::open(const std::string& name) {
  files_.push_back(name);
  std::filesystem::create_directories((dir_ / name).parent_path());
  std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
  out.precision(17);
  return out;
}

void RunDirectory::write(const std::string& name, const std::string& content) {
  std::ofstream out = open(name);
  out << content;
}

void RunDirectory::write_json(const std::string& name, const nlohmann::json& j) {
  write(name, j.dump(2) + "\n");
}

void RunDirectory::finish() { write_manifest("complete"); }

void RunDirectory::write_manifest(const std::string& status) const {
  nlohmann::json m = header_;
  m["status"] = status;
  auto& list = m["files"] = nlohmann::json::array();
  for (const auto& name : files_) {
    const auto p = dir_ / name;
    nlohmann::json entry = {{"path", name}};
    if (status == "complete") {
      entry["bytes"] = std::filesystem::file_size(p);
      entry["sha256"] = sha256_file(p);
    }
    list.push_back(entry);
  }
  // Write then rename so the manifest itself is never half-written.
  const auto tmp = dir_ / "manifest.json.tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << m.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, dir_ / "manifest.json");
}

}  // namespace edspin::cli
