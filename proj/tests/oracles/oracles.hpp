#pragma once

// Slow, obviously-correct reference implementations used only by the tests.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "corr2cause/graph/ci.hpp"
#include "corr2cause/graph/dag.hpp"
#include "corr2cause/graph/mec.hpp"
#include "corr2cause/graph/pdag.hpp"

namespace oracle {

using c2c::Dag;
using c2c::Mask;

// Enumerates every simple path between x and y in the skeleton and applies the blocking rule verbatim:
// a path is open iff each collider has itself or a descendant in z and no non-collider is in z.
inline bool d_separated(const Dag& g, int x, int y, Mask z) {
  const int n = g.n();
  std::vector<Mask> desc(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) desc[v] = g.descendants_of(v);
  std::vector<int> path{x};
  std::vector<bool> on(static_cast<std::size_t>(n), false);
  on[x] = true;
  bool open_found = false;
  std::function<void(int)> dfs = [&](int u) {
    if (open_found) return;
    if (u == y) {
      bool open = true;
      for (std::size_t i = 1; i + 1 < path.size() && open; ++i) {
        const int prev = path[i - 1], w = path[i], next = path[i + 1];
        const bool collider = g.has_edge(prev, w) && g.has_edge(next, w);
        if (collider) open = (desc[w] & z) != 0;
        else open = (z & c2c::bit(w)) == 0;
      }
      if (open) open_found = true;
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (on[v] || !g.adjacent(u, v)) continue;
      on[v] = true;
      path.push_back(v);
      dfs(v);
      path.pop_back();
      on[v] = false;
    }
  };
  dfs(x);
  return !open_found;
}

// Every (x<y, z) that the path oracle separates.
inline std::vector<std::tuple<int, int, Mask>> ci_relation(const Dag& g) {
  std::vector<std::tuple<int, int, Mask>> out;
  const int n = g.n();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      for (Mask z = 0; z < (Mask{1} << n); ++z)
        if (!(z & (c2c::bit(x) | c2c::bit(y))) && oracle::d_separated(g, x, y, z)) out.emplace_back(x, y, z);
  return out;
}

// a(n) = sum_{k=1..n} (-1)^(k+1) C(n,k) 2^(k(n-k)) a(n-k)
inline long long robinson(int n) {
  std::vector<long long> a(static_cast<std::size_t>(n + 1), 0);
  a[0] = 1;
  for (int m = 1; m <= n; ++m) {
    long long s = 0, c = 1;
    for (int k = 1; k <= m; ++k) {
      c = c * (m - k + 1) / k;
      const long long term = c * (1LL << (k * (m - k))) * a[m - k];
      s += (k % 2 == 1) ? term : -term;
    }
    a[m] = s;
  }
  return a[n];
}

// Filters all 3^(n choose 2) pair assignments for acyclicity; returns sorted edge lists.
inline std::set<std::vector<std::pair<int, int>>> all_dags_by_filter(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  std::set<std::vector<std::pair<int, int>>> out;
  long long total = 1;
  for (std::size_t i = 0; i < pairs.size(); ++i) total *= 3;
  for (long long code = 0; code < total; ++code) {
    std::vector<std::pair<int, int>> es;
    long long c = code;
    for (auto [a, b] : pairs) {
      const int t = static_cast<int>(c % 3);
      c /= 3;
      if (t == 1) es.emplace_back(a, b);
      if (t == 2) es.emplace_back(b, a);
    }
    // Kahn
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : es) ++indeg[v];
    std::vector<int> q;
    for (int v = 0; v < n; ++v)
      if (!indeg[v]) q.push_back(v);
    int seen = 0;
    while (!q.empty()) {
      int u = q.back();
      q.pop_back();
      ++seen;
      for (auto [s, t] : es)
        if (s == u && --indeg[t] == 0) q.push_back(t);
    }
    if (seen != n) continue;
    std::sort(es.begin(), es.end());
    out.insert(es);
  }
  return out;
}

// Partition of DAG codes by equality of the path-oracle CI relation.
inline std::set<std::set<std::uint64_t>> cluster_by_ci(const std::vector<Dag>& dags) {
  std::map<std::vector<std::tuple<int, int, Mask>>, std::set<std::uint64_t>> groups;
  for (const auto& g : dags) groups[ci_relation(g)].insert(g.code());
  std::set<std::set<std::uint64_t>> out;
  for (auto& [k, v] : groups) out.insert(v);
  return out;
}

// Random DAG: random topological order, each forward pair an edge with probability p.
inline Dag random_dag(int n, std::mt19937_64& rng, double p = 0.4) {
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) es.emplace_back(order[i], order[j]);
  return Dag(n, es);
}

// Random mixed graph over n nodes; each pair absent, undirected, or directed either way.
inline c2c::Pdag random_pdag(int n, std::mt19937_64& rng) {
  c2c::Pdag g(n);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) switch (pick(rng)) {
        case 1: g.add_undirected(a, b); break;
        case 2: g.add_directed(a, b); break;
        case 3: g.add_directed(b, a); break;
        default: break;
      }
  std::vector<c2c::Edge> es = g.edges();
  std::shuffle(es.begin(), es.end(), rng);
  return c2c::Pdag(n, es);
}

inline Mask random_subset(Mask universe, std::mt19937_64& rng) {
  Mask z = 0;
  for (int v = 0; v < 64; ++v)
    if ((universe >> v & 1) && (rng() & 1)) z |= c2c::bit(v);
  return z;
}

}  // namespace oracle
