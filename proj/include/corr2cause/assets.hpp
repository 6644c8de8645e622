#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "corr2cause/embedded_assets.hpp"
#include "corr2cause/errors.hpp"

namespace c2c {

// Built-in text assets, keyed by their path under assets/ (e.g. "pc_subq/subq3.txt").
inline std::string_view asset(std::string_view key) {
  for (const auto& [k, v] : assets::kEmbedded)
    if (k == key) return v;
  throw LookupError("no embedded asset '" + std::string(key) + "'");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace c2c
