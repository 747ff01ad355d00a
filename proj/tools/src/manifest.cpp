#include "navfield_cli/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "json.hpp"

#ifndef NAVFIELD_VERSION
#define NAVFIELD_VERSION "unknown"
#endif

namespace navfield::cli {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string() + " for hashing");

  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw std::runtime_error("SHA-256 init failed");

  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);

  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(len * 2);
  for (unsigned int k = 0; k < len; ++k) {
    hex.push_back(kHex[digest[k] >> 4]);
    hex.push_back(kHex[digest[k] & 0xf]);
  }
  return hex;
}

std::string manifest_to_json(const RunManifest& m) {
  using nlohmann::json;
  json doc;
  doc["version"] = NAVFIELD_VERSION;
  doc["command"] = m.command;
  doc["args"] = m.args;
  doc["seed"] = m.seed;
  doc["config"] = m.config_json.empty() ? json::object() : json::parse(m.config_json);
  auto files = [](const std::vector<std::filesystem::path>& paths) {
    json arr = json::array();
    for (const auto& p : paths) arr.push_back({{"path", p.string()}, {"sha256", sha256_file(p)}});
    return arr;
  };
  doc["inputs"] = files(m.inputs);
  doc["outputs"] = files(m.outputs);
  return doc.dump(2) + "\n";
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  const std::string text = manifest_to_json(m);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace navfield::cli
