#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "corr2cause/errors.hpp"
#include "corr2cause/graph/dag.hpp"

namespace c2c {

// Reachability ("Bayes ball") form of d-separation.
inline bool d_separated(const Dag& g, int x, int y, Mask z) {
  const int n = g.n();
  check_var(x, n);
  check_var(y, n);
  if (z & ~g.all()) throw RangeError("conditioning set references a variable out of range");
  if (x == y) throw ArgumentError("d-separation query needs two distinct variables");
  if (z & (bit(x) | bit(y))) throw ArgumentError("query endpoints must not be in the conditioning set");

  const Mask anc = g.ancestors_of(z);
  // visited[0]: reached travelling up (from a child), visited[1]: travelling down (from a parent)
  Mask visited[2] = {0, 0};
  std::vector<std::pair<int, int>> stack{{x, 0}};
  while (!stack.empty()) {
    auto [v, down] = stack.back();
    stack.pop_back();
    if (visited[down] & bit(v)) continue;
    visited[down] |= bit(v);
    const bool observed = z & bit(v);
    if (v == y && !observed) return false;
    if (!down) {
      if (observed) continue;
      for_each_bit(g.parents(v), [&](int p) { stack.emplace_back(p, 0); });
      for_each_bit(g.children(v), [&](int c) { stack.emplace_back(c, 1); });
    } else {
      if (!observed) for_each_bit(g.children(v), [&](int c) { stack.emplace_back(c, 1); });
      if (anc & bit(v)) for_each_bit(g.parents(v), [&](int p) { stack.emplace_back(p, 0); });
    }
  }
  return true;
}

inline bool d_separated(const Dag& g, int x, int y, const std::vector<int>& z) {
  Mask m = 0;
  for (int v : z) {
    check_var(v, g.n());
    m |= bit(v);
  }
  return d_separated(g, x, y, m);
}

// x is independent of y given z; canonical when x < y.
struct CiStatement {
  int x = 0;
  int y = 0;
  Mask z = 0;

  CiStatement() = default;
  CiStatement(int a, int b, Mask given = 0) : x(std::min(a, b)), y(std::max(a, b)), z(given) {
    if (a == b) throw ArgumentError("independence statement needs two distinct variables");
    if (given & (bit(a) | bit(b))) throw ArgumentError("statement endpoints must not be in the conditioning set");
  }

  std::vector<int> given() const { return bits_of(z); }
  bool marginal() const { return z == 0; }
  bool operator==(const CiStatement&) const = default;
};

// Pair first, then the sorted conditioning members compared as sequences, so {B} < {B,D} < {B,D,E} < {B,E}.
inline bool ci_less(const CiStatement& a, const CiStatement& b) {
  if (a.x != b.x) return a.x < b.x;
  if (a.y != b.y) return a.y < b.y;
  Mask p = a.z, q = b.z;
  while (p && q) {
    int i = std::countr_zero(p), j = std::countr_zero(q);
    if (i != j) return i < j;
    p &= p - 1;
    q &= q - 1;
  }
  return !p && q;
}

class CiSet {
 public:
  CiSet() = default;

  // Sorts into canonical order; duplicate statements are rejected.
  explicit CiSet(std::vector<CiStatement> stmts) : stmts_(std::move(stmts)) {
    std::sort(stmts_.begin(), stmts_.end(), ci_less);
    for (std::size_t i = 1; i < stmts_.size(); ++i)
      if (stmts_[i] == stmts_[i - 1]) throw ValidationError("duplicate independence statement");
  }

  const std::vector<CiStatement>& statements() const { return stmts_; }
  std::size_t size() const { return stmts_.size(); }
  bool empty() const { return stmts_.empty(); }
  auto begin() const { return stmts_.begin(); }
  auto end() const { return stmts_.end(); }

  std::vector<CiStatement> for_pair(int a, int b) const {
    int x = std::min(a, b), y = std::max(a, b);
    std::vector<CiStatement> out;
    for (const auto& s : stmts_)
      if (s.x == x && s.y == y) out.push_back(s);
    return out;
  }

  bool separable(int a, int b) const {
    int x = std::min(a, b), y = std::max(a, b);
    return std::any_of(stmts_.begin(), stmts_.end(), [&](const CiStatement& s) { return s.x == x && s.y == y; });
  }

  bool marginally_independent(int a, int b) const {
    int x = std::min(a, b), y = std::max(a, b);
    return std::any_of(stmts_.begin(), stmts_.end(),
                       [&](const CiStatement& s) { return s.x == x && s.y == y && s.z == 0; });
  }

  int max_var() const {
    int m = -1;
    for (const auto& s : stmts_) {
      m = std::max(m, s.y);
      if (s.z) m = std::max(m, 63 - std::countl_zero(s.z));
    }
    return m;
  }

  void check_range(int n) const {
    if (max_var() >= n) throw RangeError("independence statement references a variable outside 0.." + std::to_string(n - 1));
  }

  bool operator==(const CiSet&) const = default;

 private:
  std::vector<CiStatement> stmts_;
};

inline CiSet implied_ci_set(const Dag& g) {
  const int n = g.n();
  std::vector<CiStatement> out;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      const Mask rest = g.all() & ~(bit(x) | bit(y));
      // every subset of rest, including the empty set
      Mask z = 0;
      do {
        if (d_separated(g, x, y, z)) out.emplace_back(x, y, z);
        z = (z - rest) & rest;
      } while (z);
    }
  return CiSet(std::move(out));
}

}  // namespace c2c
