#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corr2cause/errors.hpp"
#include "corr2cause/graph/ci.hpp"
#include "corr2cause/graph/pdag.hpp"
#include "corr2cause/hypothesis.hpp"

namespace c2c {

// Path of length two x - z - y; z is the middle node.
struct Path2 {
  int x = 0;
  int z = 0;
  int y = 0;

  Path2() = default;
  Path2(int a, int mid, int b) : x(a), z(mid), y(b) {
    if (a == mid || b == mid || a == b) throw ValidationError("path of length 2 needs three distinct nodes");
  }

  Path2 canonical() const { return x < y ? *this : Path2(y, z, x); }
  bool operator==(const Path2&) const = default;
};

using DirectedEdges = std::vector<std::pair<int, int>>;

inline Pdag initial_complete_graph(int n) {
  if (n < 1) throw RangeError("need at least one variable");
  Pdag g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) g.add_undirected(a, b);
  return g;
}

inline Pdag skeleton_from_ci(const CiSet& ci, int n) {
  ci.check_range(n);
  Pdag g = initial_complete_graph(n);
  for (const auto& s : ci) g.remove(s.x, s.y);
  return g;
}

// Walks unordered pairs of edges in graph order; a shared node yields (other end of e1, shared, other end of e2).
inline std::vector<Path2> paths_length2(const Pdag& g) {
  std::vector<Path2> out;
  const auto& es = g.edges();
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      const Edge& e1 = es[i];
      const Edge& e2 = es[j];
      int mid = -1;
      if (e1.touches(e2.a)) mid = e2.a;
      else if (e1.touches(e2.b)) mid = e2.b;
      if (mid < 0) continue;
      out.emplace_back(e1.other(mid), mid, e2.other(mid));
    }
  return out;
}

inline std::vector<Path2> candidate_v_structures(const std::vector<Path2>& paths, const Pdag& g) {
  std::vector<Path2> out;
  for (const auto& p : paths)
    if (!g.adjacent(p.x, p.y)) out.push_back(p);
  return out;
}

inline bool in_some_sepset(const CiSet& ci, int x, int y, int z) {
  for (const auto& s : ci.for_pair(x, y))
    if (s.z & bit(z)) return true;
  return false;
}

inline DirectedEdges orient_v_structures(const std::vector<Path2>& cands, const CiSet& ci) {
  DirectedEdges out;
  auto push = [&](int a, int b) {
    if (std::find(out.begin(), out.end(), std::pair(a, b)) == out.end()) out.emplace_back(a, b);
  };
  for (const auto& c : cands) {
    if (!ci.separable(c.x, c.y))
      throw InconsistencyError("v-structure candidate whose endpoints have no independence statement");
    if (in_some_sepset(ci, c.x, c.y, c.z)) continue;
    push(c.x, c.z);
    push(c.y, c.z);
  }
  return out;
}

// When two v-structures disagree on one edge the first orientation is kept.
inline Pdag merge_orientations(const Pdag& skeleton, const DirectedEdges& dir) {
  Pdag g = skeleton;
  for (auto [a, b] : dir) {
    const Edge* e = g.find(a, b);
    if (!e) throw InconsistencyError("directed edge is not part of the skeleton");
    if (!e->directed) g.orient(a, b);
  }
  return g;
}

enum class PathCase {
  BothUndirected,
  BothDirected,
  IntoMiddle,          // orient the other edge away from the middle
  IntoMiddleShielded,  // as above but the outer nodes are adjacent, so nothing to do
  TowardsOuter,
  NotInGraph,
};

struct PathVerdict {
  PathCase kind;
  std::optional<std::pair<int, int>> orient;  // set only for IntoMiddle
  int from = -1;                              // outer node of the directed edge
};

inline PathVerdict classify_path(const Pdag& g, const Path2& p) {
  const Edge* e1 = g.find(p.x, p.z);
  const Edge* e2 = g.find(p.z, p.y);
  if (!e1 || !e2) return {PathCase::NotInGraph, std::nullopt};
  if (!e1->directed && !e2->directed) return {PathCase::BothUndirected, std::nullopt};
  if (e1->directed && e2->directed) return {PathCase::BothDirected, std::nullopt};
  const Edge* d = e1->directed ? e1 : e2;
  int outer = e1->directed ? p.x : p.y;
  int other = e1->directed ? p.y : p.x;
  if (d->b != p.z) return {PathCase::TowardsOuter, std::nullopt, outer};
  if (g.adjacent(outer, other)) return {PathCase::IntoMiddleShielded, std::nullopt, outer};
  return {PathCase::IntoMiddle, std::pair(p.z, other), outer};
}

// One pass judges every path against the incoming graph; with fixpoint the pass repeats until stable.
inline Pdag propagate_orientations(const Pdag& g, const std::vector<Path2>& paths, bool fixpoint = true) {
  Pdag cur = g;
  for (;;) {
    Pdag next = cur;
    bool changed = false;
    for (const auto& p : paths) {
      auto v = classify_path(cur, p);
      if (!v.orient) continue;
      auto [a, b] = *v.orient;
      if (next.has_undirected(a, b)) {
        next.orient(a, b);
        changed = true;
      }
    }
    cur = std::move(next);
    if (!fixpoint || !changed) return cur;
  }
}

struct PcOptions {
  bool fixpoint = true;
};

inline Pdag run_pc(const CiSet& ci, int n, PcOptions opt = {}) {
  Pdag skel = skeleton_from_ci(ci, n);
  auto paths = paths_length2(skel);
  auto cands = candidate_v_structures(paths, skel);
  auto dir = orient_v_structures(cands, ci);
  Pdag g = merge_orientations(skel, dir);
  return propagate_orientations(g, paths, opt.fixpoint).sorted();
}

// v-structures whose two arrows are already directed in g and whose tails are non-adjacent.
inline std::vector<VStructure> directed_v_structures(const Pdag& g) {
  std::vector<VStructure> out;
  const int n = g.n();
  for (int z = 0; z < n; ++z)
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        if (g.has_directed(x, z) && g.has_directed(y, z) && !g.adjacent(x, y)) out.push_back({x, z, y});
  std::sort(out.begin(), out.end());
  return out;
}

inline constexpr std::size_t kMaxExtensionEdges = 24;

// Calls fn for every DAG that orients the undirected edges of g without creating a cycle or a new v-structure.
template <class F>
void for_each_consistent_extension(const Pdag& g, F&& fn) {
  auto und = g.undirected_edges();
  if (und.size() > kMaxExtensionEdges) throw RangeError("too many undirected edges to enumerate extensions");
  const auto target = directed_v_structures(g);
  const auto base = g.directed_edges();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << und.size()); ++bits) {
    std::vector<std::pair<int, int>> es;
    for (const auto& e : base) es.emplace_back(e.a, e.b);
    for (std::size_t k = 0; k < und.size(); ++k) {
      if ((bits >> k) & 1) es.emplace_back(und[k].b, und[k].a);
      else es.emplace_back(und[k].a, und[k].b);
    }
    auto cand = Dag::try_make(g.n(), es);
    if (!cand) continue;
    if (v_structures_of(*cand) != target) continue;
    fn(*cand);
  }
}

// True/false when every consistent extension agrees on h; nullopt when no extension exists.
inline std::optional<bool> holds_in_all_extensions(const Pdag& g, const Hypothesis& h) {
  bool any = false, all = true;
  for_each_consistent_extension(g, [&](const Dag& d) {
    any = true;
    if (all && !holds_in_dag(d, h)) all = false;
  });
  if (!any) return std::nullopt;
  return all;
}

// Membership reading of h on a graph: only directed edges count.
inline bool holds_in_pdag(const Pdag& g, const Hypothesis& h) {
  check_var(h.a, g.n());
  check_var(h.b, g.n());
  return holds_with(g.n(), h, [&](int u, int v) { return g.has_directed(u, v); });
}

}  // namespace c2c
