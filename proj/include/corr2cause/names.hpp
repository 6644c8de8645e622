#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "corr2cause/errors.hpp"

namespace c2c {

using VarId = int;

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  return true;
}

// Display names for the variables of one system, indexed by VarId.
class NameScheme {
 public:
  NameScheme() = default;

  explicit NameScheme(std::vector<std::string> names) : names_(std::move(names)) { validate(); }

  static std::string default_name(int i) {
    if (i < 26) return std::string(1, static_cast<char>('A' + i));
    return "V" + std::to_string(i);
  }

  static NameScheme forward(int n) {
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) v.push_back(default_name(i));
    return NameScheme(std::move(v));
  }

  // Z, Y, X, ... used by the refactoring perturbation.
  static NameScheme refactored(int n) {
    if (n > 26) throw RangeError("refactored scheme supports at most 26 variables");
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) v.push_back(std::string(1, static_cast<char>('Z' - i)));
    return NameScheme(std::move(v));
  }

  int size() const { return static_cast<int>(names_.size()); }
  bool empty() const { return names_.empty(); }
  const std::vector<std::string>& names() const { return names_; }

  const std::string& name(VarId v) const {
    if (v < 0 || v >= size()) throw RangeError("variable index " + std::to_string(v) + " out of range");
    return names_[static_cast<std::size_t>(v)];
  }

  // Single-letter schemes render edges without a space after the comma.
  bool compact() const {
    return std::all_of(names_.begin(), names_.end(), [](const std::string& s) { return s.size() == 1; });
  }

  bool single_capitals() const {
    return std::all_of(names_.begin(), names_.end(), [](const std::string& s) {
      return s.size() == 1 && std::isupper(static_cast<unsigned char>(s[0]));
    });
  }

  std::optional<VarId> find(std::string_view s) const {
    for (int i = 0; i < size(); ++i)
      if (names_[static_cast<std::size_t>(i)] == s) return i;
    for (int i = 0; i < size(); ++i)
      if (iequals(names_[static_cast<std::size_t>(i)], s)) return i;
    return std::nullopt;
  }

  VarId index(std::string_view s) const {
    auto v = find(s);
    if (!v) throw LookupError("unknown variable name '" + std::string(s) + "'");
    return *v;
  }

  bool operator==(const NameScheme&) const = default;

 private:
  void validate() const {
    std::unordered_set<std::string> seen;
    for (const auto& s : names_) {
      if (s.empty()) throw ValidationError("empty variable name");
      if (!seen.insert(to_lower(s)).second) throw ValidationError("duplicate variable name '" + s + "'");
    }
  }

  std::vector<std::string> names_;
};

// "A, B and C" / "A and B" / "A"
inline std::string join_and(const std::vector<std::string>& items) {
  if (items.empty()) return "";
  if (items.size() == 1) return items[0];
  std::string out;
  for (std::size_t i = 0; i + 1 < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out + " and " + items.back();
}

inline std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace c2c
