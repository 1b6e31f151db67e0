#pragma once

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dstoch::cli {

inline std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::string hex;
  for (unsigned int k = 0; k < len; ++k) {
    std::array<char, 3> b{};
    std::snprintf(b.data(), b.size(), "%02x", md[k]);
    hex += b.data();
  }
  return hex;
}

inline std::string file_sha256(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "' for digest");
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return sha256_hex(data);
}

/// key=value record of one run. Settings first, then a digest per output
/// (files and stdout).
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> settings;
  std::vector<std::pair<std::string, std::string>> outputs;  // name, sha256

  void output_file(const std::string& path) { outputs.emplace_back(path, file_sha256(path)); }
  void output_text(const std::string& name, std::string_view text) { outputs.emplace_back(name, sha256_hex(text)); }

  void write(std::ostream& os) const {
    os << "manifest=1\n" << "command=" << command << "\n";
    for (const auto& [k, v] : settings) os << k << "=" << v << "\n";
    for (const auto& [name, digest] : outputs) os << "sha256:" << name << "=" << digest << "\n";
  }
};

}  // namespace dstoch::cli
