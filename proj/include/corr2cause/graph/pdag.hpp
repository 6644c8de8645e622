#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "corr2cause/errors.hpp"
#include "corr2cause/graph/dag.hpp"
#include "corr2cause/names.hpp"

namespace c2c {

struct Edge {
  int a = 0;
  int b = 0;
  bool directed = false;  // a -> b when directed, otherwise (a,b) with a < b

  int lo() const { return std::min(a, b); }
  int hi() const { return std::max(a, b); }
  bool touches(int v) const { return a == v || b == v; }
  int other(int v) const { return a == v ? b : a; }
  bool operator==(const Edge&) const = default;
};

inline Edge undirected(int a, int b) { return {std::min(a, b), std::max(a, b), false}; }
inline Edge directed(int a, int b) { return {a, b, true}; }

// Mixed graph. Keeps edges in insertion order because answers echo the order they were given in;
// equality ignores that order.
class Pdag {
 public:
  Pdag() = default;
  explicit Pdag(int n) : n_(n) {
    if (n < 0 || n > kMaxVars) throw RangeError("Pdag supports 0.." + std::to_string(kMaxVars) + " variables");
  }

  Pdag(int n, const std::vector<Edge>& edges) : Pdag(n) {
    for (const auto& e : edges) add(e);
  }

  static Pdag from_dag(const Dag& g) {
    Pdag p(g.n());
    for (auto [a, b] : g.edges()) p.add_directed(a, b);
    return p.sorted();
  }

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  void add(const Edge& e) {
    check_var(e.a, n_);
    check_var(e.b, n_);
    if (e.a == e.b) throw ValidationError("self-loop on variable " + std::to_string(e.a));
    if (adjacent(e.a, e.b)) throw ValidationError("pair already connected");
    edges_.push_back(e.directed ? e : undirected(e.a, e.b));
  }

  void add_undirected(int a, int b) { add(undirected(a, b)); }
  void add_directed(int a, int b) { add(directed(a, b)); }

  const Edge* find(int a, int b) const {
    for (const auto& e : edges_)
      if (e.lo() == std::min(a, b) && e.hi() == std::max(a, b)) return &e;
    return nullptr;
  }

  bool adjacent(int a, int b) const { return find(a, b) != nullptr; }

  bool has_directed(int a, int b) const {
    auto e = find(a, b);
    return e && e->directed && e->a == a;
  }

  bool has_undirected(int a, int b) const {
    auto e = find(a, b);
    return e && !e->directed;
  }

  // Turns the undirected edge between a and b into a -> b, keeping its position.
  void orient(int a, int b) {
    for (auto& e : edges_)
      if (e.lo() == std::min(a, b) && e.hi() == std::max(a, b)) {
        e = directed(a, b);
        return;
      }
    throw InconsistencyError("cannot orient a missing edge");
  }

  void remove(int a, int b) {
    auto it = std::find_if(edges_.begin(), edges_.end(),
                           [&](const Edge& e) { return e.lo() == std::min(a, b) && e.hi() == std::max(a, b); });
    if (it != edges_.end()) edges_.erase(it);
  }

  std::size_t directed_count() const {
    return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.directed; }));
  }

  std::vector<Edge> directed_edges() const {
    std::vector<Edge> out;
    for (const auto& e : edges_)
      if (e.directed) out.push_back(e);
    return out;
  }

  std::vector<Edge> undirected_edges() const {
    std::vector<Edge> out;
    for (const auto& e : edges_)
      if (!e.directed) out.push_back(e);
    return out;
  }

  // Lexicographic by unordered pair.
  Pdag sorted() const {
    Pdag p = *this;
    std::sort(p.edges_.begin(), p.edges_.end(), [](const Edge& x, const Edge& y) {
      return std::pair(x.lo(), x.hi()) < std::pair(y.lo(), y.hi());
    });
    return p;
  }

  bool operator==(const Pdag& o) const {
    if (n_ != o.n_ || edges_.size() != o.edges_.size()) return false;
    for (const auto& e : edges_) {
      auto f = o.find(e.a, e.b);
      if (!f || !(*f == e)) return false;
    }
    return true;
  }

  // Byte-exact order-preserving form, e.g. "(A,B), A -> C".
  std::string render(const NameScheme& names) const { return render_edges(edges_, names); }

  static std::string render_edge(const Edge& e, const NameScheme& names) {
    if (e.directed) return names.name(e.a) + " -> " + names.name(e.b);
    return "(" + names.name(e.a) + (names.compact() ? "," : ", ") + names.name(e.b) + ")";
  }

  static std::string render_edges(const std::vector<Edge>& edges, const NameScheme& names) {
    std::string out;
    for (const auto& e : edges) {
      if (!out.empty()) out += ", ";
      out += render_edge(e, names);
    }
    return out;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

}  // namespace c2c
