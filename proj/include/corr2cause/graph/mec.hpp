#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "corr2cause/graph/ci.hpp"
#include "corr2cause/graph/dag.hpp"

namespace c2c {

using VStructure = std::array<int, 3>;  // (x, z, y) with x < y, x -> z <- y

struct MecSignature {
  std::vector<std::pair<int, int>> skeleton;  // (a, b) with a < b, sorted
  std::vector<VStructure> v_structures;       // sorted

  auto operator<=>(const MecSignature&) const = default;
  bool operator==(const MecSignature&) const = default;
};

inline std::vector<VStructure> v_structures_of(const Dag& g) {
  std::vector<VStructure> out;
  for (int x = 0; x < g.n(); ++x)
    for (int y = x + 1; y < g.n(); ++y) {
      if (g.adjacent(x, y)) continue;
      for_each_bit(g.children(x) & g.children(y), [&](int z) { out.push_back({x, z, y}); });
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline MecSignature mec_signature(const Dag& g) {
  MecSignature s;
  for (int a = 0; a < g.n(); ++a)
    for (int b = a + 1; b < g.n(); ++b)
      if (g.adjacent(a, b)) s.skeleton.emplace_back(a, b);
  s.v_structures = v_structures_of(g);
  return s;
}

// Signature after renaming every variable v to perm[v].
inline MecSignature relabel(const MecSignature& s, const std::vector<int>& perm) {
  MecSignature out;
  for (auto [a, b] : s.skeleton) out.skeleton.emplace_back(std::min(perm[a], perm[b]), std::max(perm[a], perm[b]));
  for (const auto& v : s.v_structures) {
    int x = perm[v[0]], y = perm[v[2]];
    if (x > y) std::swap(x, y);
    out.v_structures.push_back({x, perm[v[1]], y});
  }
  std::sort(out.skeleton.begin(), out.skeleton.end());
  std::sort(out.v_structures.begin(), out.v_structures.end());
  return out;
}

// Smallest relabelled signature; equal for classes that differ only by variable names.
inline MecSignature canonical_signature(const MecSignature& s, int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[i] = i;
  MecSignature best = s;
  while (std::next_permutation(perm.begin(), perm.end())) {
    auto r = relabel(s, perm);
    if (r < best) best = std::move(r);
  }
  return best;
}

class Mec {
 public:
  Mec(int n, MecSignature sig, std::vector<std::uint64_t> member_codes)
      : n_(n), sig_(std::move(sig)), codes_(std::move(member_codes)) {
    if (codes_.empty()) throw ValidationError("an equivalence class needs at least one member");
    ci_ = implied_ci_set(Dag::from_code(n_, codes_.front()));
  }

  int n() const { return n_; }
  const MecSignature& signature() const { return sig_; }
  const CiSet& ci_set() const { return ci_; }
  std::size_t size() const { return codes_.size(); }
  const std::vector<std::uint64_t>& member_codes() const { return codes_; }
  Dag member(std::size_t i) const { return Dag::from_code(n_, codes_.at(i)); }

  std::vector<Dag> members() const {
    std::vector<Dag> out;
    out.reserve(codes_.size());
    for (auto c : codes_) out.push_back(Dag::from_code(n_, c));
    return out;
  }

 private:
  int n_;
  MecSignature sig_;
  std::vector<std::uint64_t> codes_;
  CiSet ci_;
};

// Partition by signature; classes come out sorted by signature.
inline std::vector<Mec> cluster_mecs(const std::vector<Dag>& dags) {
  if (dags.empty()) return {};
  const int n = dags.front().n();
  std::map<MecSignature, std::vector<std::uint64_t>> groups;
  for (const auto& g : dags) {
    if (g.n() != n) throw ArgumentError("all DAGs passed to cluster_mecs must share n");
    groups[mec_signature(g)].push_back(g.code());
  }
  std::vector<Mec> out;
  out.reserve(groups.size());
  for (auto& [sig, codes] : groups) out.emplace_back(n, sig, std::move(codes));
  return out;
}

// Same partition built straight from the enumeration stream; avoids materialising every Dag.
inline std::vector<Mec> enumerate_mecs(int n) {
  std::map<MecSignature, std::vector<std::uint64_t>> groups;
  for_each_dag_code(n, [&](std::uint64_t code) { groups[mec_signature(Dag::from_code(n, code))].push_back(code); });
  std::vector<Mec> out;
  out.reserve(groups.size());
  for (auto& [sig, codes] : groups) out.emplace_back(n, sig, std::move(codes));
  return out;
}

}  // namespace c2c
