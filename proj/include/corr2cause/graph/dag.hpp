#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corr2cause/errors.hpp"
#include "corr2cause/names.hpp"

namespace c2c {

using Mask = std::uint64_t;
inline constexpr int kMaxVars = 64;

inline Mask bit(int i) { return Mask{1} << i; }

template <class F>
void for_each_bit(Mask m, F&& f) {
  while (m) {
    int i = std::countr_zero(m);
    f(i);
    m &= m - 1;
  }
}

inline std::vector<int> bits_of(Mask m) {
  std::vector<int> out;
  for_each_bit(m, [&](int i) { out.push_back(i); });
  return out;
}

inline void check_var(int v, int n) {
  if (v < 0 || v >= n) throw RangeError("variable " + std::to_string(v) + " out of range for n=" + std::to_string(n));
}

// Ordered pairs (0,1),(0,2),...,(1,0),(1,2),... numbered 0..n(n-1)-1.
inline int pair_index(int i, int j, int n) { return i * (n - 1) + (j < i ? j : j - 1); }

inline std::pair<int, int> pair_at(int k, int n) {
  int i = k / (n - 1);
  int j = k % (n - 1);
  return {i, j < i ? j : j + 1};
}

class Dag {
 public:
  Dag() = default;

  explicit Dag(int n) : n_(n), children_(static_cast<std::size_t>(n), 0), parents_(static_cast<std::size_t>(n), 0) {
    if (n < 0 || n > kMaxVars) throw RangeError("Dag supports 0.." + std::to_string(kMaxVars) + " variables");
  }

  Dag(int n, const std::vector<std::pair<int, int>>& edges) : Dag(n) {
    for (auto [a, b] : edges) add_edge_unchecked(a, b);
    if (!acyclic()) throw ValidationError("graph has a directed cycle");
  }

  static std::optional<Dag> try_make(int n, const std::vector<std::pair<int, int>>& edges) {
    Dag g(n);
    for (auto [a, b] : edges) g.add_edge_unchecked(a, b);
    if (!g.acyclic()) return std::nullopt;
    return g;
  }

  // Decode an edge code (bit k set for ordered pair k); n <= 8.
  static Dag from_code(int n, std::uint64_t code) {
    Dag g(n);
    for_each_bit(code, [&](int k) {
      auto [a, b] = pair_at(k, n);
      g.add_edge_unchecked(a, b);
    });
    return g;
  }

  std::uint64_t code() const {
    if (n_ > 8) throw RangeError("edge codes are limited to n <= 8");
    std::uint64_t c = 0;
    for (int a = 0; a < n_; ++a) for_each_bit(children_[a], [&](int b) { c |= bit(pair_index(a, b, n_)); });
    return c;
  }

  int n() const { return n_; }
  Mask children(int v) const { return children_[static_cast<std::size_t>(v)]; }
  Mask parents(int v) const { return parents_[static_cast<std::size_t>(v)]; }
  Mask all() const { return n_ == 64 ? ~Mask{0} : bit(n_) - 1; }

  bool has_edge(int a, int b) const {
    check_var(a, n_);
    check_var(b, n_);
    return children_[static_cast<std::size_t>(a)] & bit(b);
  }

  bool adjacent(int a, int b) const { return has_edge(a, b) || has_edge(b, a); }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < n_; ++a) for_each_bit(children_[a], [&](int b) { out.emplace_back(a, b); });
    return out;
  }

  std::size_t edge_count() const {
    std::size_t c = 0;
    for (auto m : children_) c += static_cast<std::size_t>(std::popcount(m));
    return c;
  }

  // Ancestors of the set, including the set itself.
  Mask ancestors_of(Mask set) const {
    Mask seen = set, frontier = set;
    while (frontier) {
      Mask next = 0;
      for_each_bit(frontier, [&](int v) { next |= parents_[v]; });
      frontier = next & ~seen;
      seen |= next;
    }
    return seen;
  }

  Mask descendants_of(int v) const {
    Mask seen = bit(v), frontier = bit(v);
    while (frontier) {
      Mask next = 0;
      for_each_bit(frontier, [&](int u) { next |= children_[u]; });
      frontier = next & ~seen;
      seen |= next;
    }
    return seen;
  }

  bool acyclic() const {
    std::vector<int> indeg(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) indeg[v] = std::popcount(parents_[v]);
    std::vector<int> stack;
    for (int v = 0; v < n_; ++v)
      if (!indeg[v]) stack.push_back(v);
    int seen = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      ++seen;
      for_each_bit(children_[v], [&](int c) {
        if (--indeg[c] == 0) stack.push_back(c);
      });
    }
    return seen == n_;
  }

  std::string to_string(const NameScheme& names) const {
    std::string out;
    for (auto [a, b] : edges()) {
      if (!out.empty()) out += ", ";
      out += names.name(a) + " -> " + names.name(b);
    }
    return out;
  }

  bool operator==(const Dag&) const = default;

 private:
  void add_edge_unchecked(int a, int b) {
    check_var(a, n_);
    check_var(b, n_);
    if (a == b) throw ValidationError("self-loop on variable " + std::to_string(a));
    children_[static_cast<std::size_t>(a)] |= bit(b);
    parents_[static_cast<std::size_t>(b)] |= bit(a);
  }

  int n_ = 0;
  std::vector<Mask> children_;
  std::vector<Mask> parents_;
};

namespace detail {

struct DagSearch {
  int n;
  int pairs;
  std::function<void(std::uint64_t)>* sink;

  // reach[v]: vertices reachable from v through at least one edge
  void go(int k, std::uint64_t code, const std::array<Mask, 8>& reach) {
    if (k < 0) {
      (*sink)(code);
      return;
    }
    go(k - 1, code, reach);
    auto [a, b] = pair_at(k, n);
    if (reach[b] & bit(a)) return;
    if ((code >> pair_index(b, a, n)) & 1) return;
    std::array<Mask, 8> next = reach;
    Mask gain = bit(b) | reach[b];
    for (int v = 0; v < n; ++v)
      if (v == a || (reach[v] & bit(a))) next[v] |= gain;
    go(k - 1, code | (std::uint64_t{1} << k), next);
  }
};

}  // namespace detail

// Visits the edge code of every labeled DAG on n nodes, in ascending code order.
inline void for_each_dag_code(int n, std::function<void(std::uint64_t)> fn) {
  if (n < 1 || n > 6) throw RangeError("DAG enumeration supports 1 <= n <= 6, got " + std::to_string(n));
  if (n == 1) {
    fn(0);
    return;
  }
  detail::DagSearch s{n, n * (n - 1), &fn};
  s.go(s.pairs - 1, 0, {});
}

inline void for_each_dag(int n, const std::function<void(const Dag&)>& fn) {
  for_each_dag_code(n, [&](std::uint64_t code) { fn(Dag::from_code(n, code)); });
}

inline std::vector<Dag> enumerate_dags(int n) {
  std::vector<Dag> out;
  for_each_dag(n, [&](const Dag& g) { out.push_back(g); });
  return out;
}

inline std::uint64_t count_dags(int n) {
  std::uint64_t c = 0;
  for_each_dag_code(n, [&](std::uint64_t) { ++c; });
  return c;
}

}  // namespace c2c
