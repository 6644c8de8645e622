#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corr2cause/errors.hpp"
#include "corr2cause/graph/dag.hpp"
#include "corr2cause/graph/mec.hpp"

namespace c2c {

enum class HypothesisKind { DirectCause, TogetherCause, CommonCause, Mediation };

inline constexpr std::array<HypothesisKind, 4> kAllKinds = {HypothesisKind::DirectCause, HypothesisKind::TogetherCause,
                                                           HypothesisKind::CommonCause, HypothesisKind::Mediation};

inline std::string_view kind_name(HypothesisKind k) {
  switch (k) {
    case HypothesisKind::DirectCause: return "direct_cause";
    case HypothesisKind::TogetherCause: return "together_cause";
    case HypothesisKind::CommonCause: return "common_cause";
    case HypothesisKind::Mediation: return "mediation";
  }
  return "";
}

inline HypothesisKind parse_kind(std::string_view s) {
  for (auto k : kAllKinds)
    if (kind_name(k) == s) return k;
  throw ParseError("unknown hypothesis kind '" + std::string(s) + "'");
}

inline bool ordered_kind(HypothesisKind k) {
  return k == HypothesisKind::DirectCause || k == HypothesisKind::Mediation;
}

struct Hypothesis {
  HypothesisKind kind = HypothesisKind::DirectCause;
  int a = 0;
  int b = 1;

  Hypothesis() = default;
  Hypothesis(HypothesisKind k, int x, int y) : kind(k), a(x), b(y) {
    if (x == y) throw ArgumentError("hypothesis needs two distinct variables");
    if (!ordered_kind(k) && a > b) std::swap(a, b);
  }

  bool operator==(const Hypothesis&) const = default;
};

// Every hypothesis instance of the given kinds over n variables: ordered pairs for directed kinds,
// unordered pairs otherwise.
inline std::vector<Hypothesis> all_hypotheses(int n, const std::vector<HypothesisKind>& kinds) {
  std::vector<Hypothesis> out;
  for (auto k : kinds) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b || (!ordered_kind(k) && a > b)) continue;
        out.emplace_back(k, a, b);
      }
  }
  return out;
}

enum class Semantics { DirectEdge, Ancestral };

// Evaluates h against an edge oracle; edge(u, v) reports u -> v.
template <class EdgeFn>
bool holds_with(int n, const Hypothesis& h, EdgeFn&& edge) {
  auto through = [&](auto&& test) {
    for (int w = 0; w < n; ++w)
      if (w != h.a && w != h.b && test(w)) return true;
    return false;
  };
  switch (h.kind) {
    case HypothesisKind::DirectCause: return edge(h.a, h.b);
    case HypothesisKind::TogetherCause: return through([&](int w) { return edge(h.a, w) && edge(h.b, w); });
    case HypothesisKind::CommonCause: return through([&](int w) { return edge(w, h.a) && edge(w, h.b); });
    case HypothesisKind::Mediation: return through([&](int w) { return edge(h.a, w) && edge(w, h.b); });
  }
  return false;
}

inline bool holds_in_dag(const Dag& g, const Hypothesis& h, Semantics sem = Semantics::DirectEdge) {
  check_var(h.a, g.n());
  check_var(h.b, g.n());
  if (sem == Semantics::DirectEdge || h.kind == HypothesisKind::DirectCause)
    return holds_with(g.n(), h, [&](int u, int v) { return g.has_edge(u, v); });
  // Ancestral: for the three witness kinds a directed path u ~> v stands in for each edge test.
  std::vector<Mask> desc(static_cast<std::size_t>(g.n()));
  for (int v = 0; v < g.n(); ++v) desc[v] = g.descendants_of(v) & ~bit(v);
  return holds_with(g.n(), h, [&](int u, int v) { return (desc[u] & bit(v)) != 0; });
}

inline int label(const Mec& mec, const Hypothesis& h, Semantics sem = Semantics::DirectEdge) {
  check_var(h.a, mec.n());
  check_var(h.b, mec.n());
  for (auto code : mec.member_codes())
    if (!holds_in_dag(Dag::from_code(mec.n(), code), h, sem)) return 0;
  return 1;
}

}  // namespace c2c
