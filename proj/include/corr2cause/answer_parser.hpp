#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "corr2cause/errors.hpp"
#include "corr2cause/graph/ci.hpp"
#include "corr2cause/graph/pdag.hpp"
#include "corr2cause/names.hpp"
#include "corr2cause/pc_engine.hpp"
#include "corr2cause/verbalizer.hpp"

namespace c2c {

enum class Sentinel { Paths, VStructures, Directed, Edges };

inline constexpr std::string_view kNoPaths = "No paths of length 2 found.";
inline constexpr std::string_view kNoVStructures = "No possible v-structures found";
inline constexpr std::string_view kNoDirected = "No directed edges found";
inline constexpr std::string_view kNoEdges = "No edges found";  // a graph with no edges at all

inline std::string_view sentinel_text(Sentinel s) {
  switch (s) {
    case Sentinel::Paths: return kNoPaths;
    case Sentinel::VStructures: return kNoVStructures;
    case Sentinel::Directed: return kNoDirected;
    case Sentinel::Edges: return kNoEdges;
  }
  return "";
}

inline std::optional<Sentinel> find_sentinel(std::string_view line) {
  const std::string low = to_lower(line);
  if (low.find("no paths of length 2 found") != std::string::npos) return Sentinel::Paths;
  if (low.find("no possible v-structures found") != std::string::npos) return Sentinel::VStructures;
  if (low.find("no directed edges found") != std::string::npos) return Sentinel::Directed;
  if (low.find("no edges found") != std::string::npos) return Sentinel::Edges;
  return std::nullopt;
}

// Unicode and LaTeX arrows become "->".
inline std::string normalize_arrows(std::string_view text) {
  std::string s(text);
  s = replace_all(s, "\xE2\x86\x92", "->");
  s = replace_all(s, "\\rightarrow", "->");
  s = replace_all(s, "$", "");
  return s;
}

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    out.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

// Splits on commas that are not inside parentheses.
inline std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') depth = std::max(0, depth - 1);
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  out.erase(std::remove(out.begin(), out.end(), std::string{}), out.end());
  return out;
}

namespace detail {

// Collects names in order of appearance and turns them into a scheme when none was supplied.
class NameResolver {
 public:
  explicit NameResolver(const NameScheme* scheme) : scheme_(scheme) {}

  // Returns a provisional index; final indices come from finish().
  int resolve(const std::string& raw) {
    std::string nm = trim(raw);
    if (nm.empty()) throw ParseError("empty variable name");
    if (scheme_) {
      auto v = scheme_->find(nm);
      if (!v) throw ParseError("unknown variable '" + nm + "'");
      return *v;
    }
    for (std::size_t i = 0; i < seen_.size(); ++i)
      if (seen_[i] == nm) return static_cast<int>(i);
    seen_.push_back(nm);
    return static_cast<int>(seen_.size() - 1);
  }

  // Scheme plus the mapping from provisional to final indices.
  std::pair<NameScheme, std::vector<int>> finish() const {
    if (scheme_) {
      std::vector<int> id(static_cast<std::size_t>(scheme_->size()));
      for (int i = 0; i < scheme_->size(); ++i) id[i] = i;
      return {*scheme_, id};
    }
    std::vector<std::string> names = seen_;
    bool letters = std::all_of(names.begin(), names.end(), [](const std::string& s) {
      return s.size() == 1 && std::isupper(static_cast<unsigned char>(s[0]));
    });
    std::vector<int> map(names.size());
    if (letters) {
      // single capitals fill the alphabet up to the largest letter seen, so A..D stays A..D even if B is absent
      char hi = 'A';
      for (const auto& s : names) hi = std::max(hi, s[0]);
      std::vector<std::string> full;
      for (char c = 'A'; c <= hi; ++c) full.emplace_back(1, c);
      for (std::size_t i = 0; i < names.size(); ++i) map[i] = names[i][0] - 'A';
      return {NameScheme(full), map};
    }
    for (std::size_t i = 0; i < names.size(); ++i) map[i] = static_cast<int>(i);
    try {
      return {NameScheme(names), map};
    } catch (const ValidationError& e) {
      throw ParseError(e.what());
    }
  }

 private:
  const NameScheme* scheme_;
  std::vector<std::string> seen_;
};

inline std::string answer_payload(std::string line) {
  line = trim(line);
  // drop a leading "Answer:" or prose prefix such as "So the final graph is:"
  auto colon = line.rfind(':');
  if (colon != std::string::npos) {
    std::string rest = line.substr(colon + 1);
    if (rest.find('(') != std::string::npos || rest.find("->") != std::string::npos) line = rest;
  }
  line = trim(line);
  while (!line.empty() && (line.back() == '.' || line.back() == '}')) line.pop_back();
  while (!line.empty() && line.front() == '{') line.erase(line.begin());
  return trim(line);
}

inline bool has_edge_tokens(std::string_view line) {
  static const std::regex re(R"(\([^()]*,[^()]*\)|->)");
  return std::regex_search(line.begin(), line.end(), re);
}

}  // namespace detail

struct GraphAnswer {
  std::optional<Sentinel> sentinel;
  Pdag graph;
  NameScheme names;
};

struct EdgeTokens {
  std::optional<Sentinel> sentinel;
  std::vector<Edge> edges;  // as written, duplicates kept
  NameScheme names;
};

// Reads the last line that carries edge tokens or a sentinel phrase.
inline EdgeTokens parse_edge_tokens(std::string_view text, const NameScheme* names = nullptr) {
  auto lines = split_lines(normalize_arrows(text));
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    const bool edges = detail::has_edge_tokens(*it);
    auto sent = find_sentinel(*it);
    if (sent && !edges) {
      EdgeTokens t;
      t.sentinel = sent;
      t.names = names ? *names : NameScheme();
      return t;
    }
    if (!edges) continue;
    std::string payload = detail::answer_payload(*it);
    detail::NameResolver res(names);
    std::vector<Edge> raw;
    for (const auto& tok : split_top_level(payload)) {
      if (tok.front() == '(' && tok.back() == ')') {
        auto inner = split_top_level(std::string_view(tok).substr(1, tok.size() - 2));
        if (inner.size() != 2) throw ParseError("malformed undirected edge '" + tok + "'");
        raw.push_back({res.resolve(inner[0]), res.resolve(inner[1]), false});
        continue;
      }
      auto arrow = tok.find("->");
      if (arrow == std::string::npos) throw ParseError("unrecognised edge token '" + tok + "'");
      raw.push_back({res.resolve(tok.substr(0, arrow)), res.resolve(tok.substr(arrow + 2)), true});
    }
    auto [scheme, map] = res.finish();
    EdgeTokens t;
    t.names = scheme;
    for (const auto& r : raw) {
      if (map[r.a] == map[r.b]) throw ParseError("self-loop in answer");
      t.edges.push_back({map[r.a], map[r.b], r.directed});
    }
    return t;
  }
  throw ParseError("no edge tokens or sentinel in answer");
}

inline GraphAnswer parse_graph_answer(std::string_view text, const NameScheme* names = nullptr) {
  auto t = parse_edge_tokens(text, names);
  GraphAnswer g;
  g.sentinel = t.sentinel;
  g.names = t.names;
  g.graph = Pdag(t.names.size());
  try {
    for (const auto& e : t.edges) g.graph.add(e);
  } catch (const Error& e) {
    throw ParseError(std::string("inconsistent graph answer: ") + e.what());
  }
  return g;
}

struct DirectedAnswer {
  std::optional<Sentinel> sentinel;
  DirectedEdges edges;  // first occurrence order, duplicates removed
  NameScheme names;
};

inline DirectedAnswer parse_directed_edges(std::string_view text, const NameScheme* names = nullptr) {
  auto t = parse_edge_tokens(text, names);
  DirectedAnswer d;
  d.sentinel = t.sentinel;
  d.names = t.names;
  for (const auto& e : t.edges) {
    if (!e.directed) throw ParseError("undirected edge where directed edges were expected");
    if (std::find(d.edges.begin(), d.edges.end(), std::pair(e.a, e.b)) == d.edges.end()) d.edges.emplace_back(e.a, e.b);
  }
  return d;
}

struct PathsAnswer {
  std::optional<Sentinel> sentinel;
  std::vector<Path2> paths;
  NameScheme names;
};

inline PathsAnswer parse_paths_answer(std::string_view text, const NameScheme* names = nullptr) {
  auto lines = split_lines(normalize_arrows(text));
  static const std::regex triple(R"(\([^()]*,[^()]*,[^()]*\))");
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    const bool has = std::regex_search(*it, triple);
    auto sent = find_sentinel(*it);
    if (sent && !has) {
      PathsAnswer p;
      p.sentinel = sent;
      p.names = names ? *names : NameScheme();
      return p;
    }
    if (!has) continue;
    std::string payload = detail::answer_payload(*it);
    detail::NameResolver res(names);
    std::vector<std::array<int, 3>> raw;
    for (const auto& tok : split_top_level(payload)) {
      if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')') throw ParseError("malformed path token '" + tok + "'");
      auto inner = split_top_level(std::string_view(tok).substr(1, tok.size() - 2));
      if (inner.size() != 3) throw ParseError("path token '" + tok + "' does not have three nodes");
      raw.push_back({res.resolve(inner[0]), res.resolve(inner[1]), res.resolve(inner[2])});
    }
    auto [scheme, map] = res.finish();
    PathsAnswer p;
    p.names = scheme;
    try {
      for (const auto& r : raw) p.paths.emplace_back(map[r[0]], map[r[1]], map[r[2]]);
    } catch (const Error& e) {
      throw ParseError(std::string("malformed path: ") + e.what());
    }
    return p;
  }
  throw ParseError("no paths or sentinel in answer");
}

inline std::string render_paths(const std::vector<Path2>& paths, const NameScheme& names) {
  const std::string sep = names.compact() ? "," : ", ";
  std::string out;
  for (const auto& p : paths) {
    if (!out.empty()) out += ", ";
    out += "(" + names.name(p.x) + sep + names.name(p.z) + sep + names.name(p.y) + ")";
  }
  return out;
}

inline std::string render_directed(const DirectedEdges& es, const NameScheme& names) {
  std::string out;
  for (auto [a, b] : es) {
    if (!out.empty()) out += ", ";
    out += names.name(a) + " -> " + names.name(b);
  }
  return out;
}

// Last standalone 0/1; True/False only when no digit is present.
inline int parse_label_answer(std::string_view text) {
  const std::string s(text);
  static const std::regex digit(R"((^|[^0-9A-Za-z_.])([01])(?=$|[^0-9A-Za-z_]|\.(?![0-9])))");
  int found = -1;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), digit); it != std::sregex_iterator(); ++it)
    found = (*it)[2].str() == "1";
  if (found >= 0) return found;
  static const std::regex word(R"(\b(true|false)\b)", std::regex::icase);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), word); it != std::sregex_iterator(); ++it)
    found = to_lower((*it)[1].str()) == "true";
  if (found >= 0) return found;
  throw ParseError("no 0/1 or True/False in answer");
}

struct PremiseStatement {
  CiStatement stmt;
  std::string text;  // the sentence as written, with its final period
};

struct ParsedPremise {
  CiSet ci;
  int n = 0;
  NameScheme names;
  std::vector<PremiseStatement> statements;  // premise order
  std::vector<std::pair<int, int>> correlations;

  std::vector<std::string> texts_for_pair(int a, int b) const {
    std::vector<std::string> out;
    for (const auto& s : statements)
      if (s.stmt.x == std::min(a, b) && s.stmt.y == std::max(a, b)) out.push_back(s.text);
    return out;
  }
};

namespace detail {

inline std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t i = 0; i < text.size(); ++i) {
    cur += text[i];
    if (text[i] == '.' && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      out.push_back(trim(cur));
      cur.clear();
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

inline std::vector<std::string> split_name_list(std::string s) {
  s = trim(s);
  if (!s.empty() && s.back() == '.') s.pop_back();
  std::vector<std::string> out;
  for (auto& part : split_top_level(s)) {
    std::string p = trim(part);
    if (p.rfind("and ", 0) == 0) p = trim(p.substr(4));
    out.push_back(p);
  }
  // the last comma-separated item may hold "X and Y"
  std::vector<std::string> fin;
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto pos = out[i].rfind(" and ");
    if (i + 1 == out.size() && pos != std::string::npos) {
      fin.push_back(trim(out[i].substr(0, pos)));
      fin.push_back(trim(out[i].substr(pos + 5)));
    } else {
      fin.push_back(out[i]);
    }
  }
  return fin;
}

inline int number_word(const std::string& w) {
  static const char* words[] = {"zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"};
  for (int i = 0; i < 11; ++i)
    if (iequals(w, words[i])) return i;
  try {
    return std::stoi(w);
  } catch (...) {
    return -1;
  }
}

// Parses "X", "X and Y", "X, Y and Z" by greedily matching the longest known name at each step.
inline std::optional<Mask> match_name_list(std::string_view s, const NameScheme& names) {
  Mask out = 0;
  std::string t = trim(s);
  std::size_t i = 0;
  for (;;) {
    std::optional<std::pair<int, std::size_t>> best;
    for (int v = 0; v < names.size(); ++v) {
      const auto& nm = names.name(v);
      if (i + nm.size() <= t.size() && iequals(std::string_view(t).substr(i, nm.size()), nm) &&
          (!best || nm.size() > best->second))
        best = std::pair(v, nm.size());
    }
    if (!best) return std::nullopt;
    out |= bit(best->first);
    i += best->second;
    if (i == t.size()) return out;
    std::string_view rest = std::string_view(t).substr(i);
    std::size_t skip = 0;
    for (std::string_view sep : {std::string_view(", and "), std::string_view(", "), std::string_view(" and ")})
      if (rest.substr(0, sep.size()) == sep) {
        skip = sep.size();
        break;
      }
    if (!skip) return std::nullopt;
    i += skip;
  }
}

inline std::optional<int> exact_name(std::string_view s, const NameScheme& names) {
  return names.find(trim(s));
}

// Tries every split of s at `sep` so that both halves are names.
inline std::optional<std::pair<int, int>> split_pair(const std::string& s, std::string_view sep, const NameScheme& names) {
  std::size_t pos = 0;
  while ((pos = s.find(sep, pos)) != std::string::npos) {
    auto a = exact_name(std::string_view(s).substr(0, pos), names);
    auto b = exact_name(std::string_view(s).substr(pos + sep.size()), names);
    if (a && b && *a != *b) return std::pair(*a, *b);
    pos += 1;
  }
  return std::nullopt;
}

}  // namespace detail

// Inverse of verbalize_premise, tolerant of the hand-written story variants.
inline ParsedPremise parse_premise(std::string_view text, std::optional<int> n_hint = std::nullopt,
                                   const NameScheme* names_hint = nullptr) {
  std::string body = trim(text);
  if (body.rfind("Premise:", 0) == 0) body = trim(body.substr(8));
  body = replace_all(body, "\xE2\x80\x99", "'");
  auto sentences = detail::split_sentences(body);
  if (sentences.empty()) throw ParseError("empty premise");

  ParsedPremise out;
  static const std::regex header(R"(^Suppose there is a closed system of (\d+) variables,? (.+)\.$)", std::regex::icase);
  static const std::regex header2(R"(^Let's consider (\w+) (?:factors|variables): (.+)\.$)", std::regex::icase);
  std::smatch m;
  int declared = -1;
  std::vector<std::string> header_names;
  if (std::regex_match(sentences[0], m, header)) {
    declared = std::stoi(m[1].str());
    header_names = detail::split_name_list(m[2].str());
  } else if (std::regex_match(sentences[0], m, header2)) {
    declared = detail::number_word(m[1].str());
    header_names = detail::split_name_list(m[2].str());
  } else if (!names_hint) {
    throw ParseError("premise does not start with a recognised header", 0);
  }

  if (names_hint) {
    out.names = *names_hint;
  } else {
    try {
      out.names = NameScheme(header_names);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), 0);
    }
  }
  out.n = out.names.size();
  if (declared >= 0 && declared != static_cast<int>(header_names.size()))
    throw ParseError("header declares " + std::to_string(declared) + " variables but lists " +
                         std::to_string(header_names.size()), 0);
  if (n_hint && *n_hint != out.n)
    throw ParseError("premise has " + std::to_string(out.n) + " variables, expected " + std::to_string(*n_hint), 0);

  static const std::regex relations(R"(^All the statistical relations among these \d+ variables are as follows:\s*(.*)$)",
                                    std::regex::icase);
  static const std::regex corr(R"(^(.+?) correlates? with (.+?)\.$)", std::regex::icase);
  static const std::regex corr_between(R"(^There is a correlation between (.+)\.$)", std::regex::icase);
  static const std::regex indep_of(R"(^(.+?) is independent of (.+?)(?: given (.+?))?\.$)", std::regex::icase);
  static const std::regex indep_and(R"(^(.+) are independent(?: given (.+?))?\.$)", std::regex::icase);
  static const std::regex indep_each(R"(^(.+) are independent from each other\.$)", std::regex::icase);

  std::vector<CiStatement> stmts;
  const std::size_t first = (declared >= 0) ? 1 : 0;
  for (std::size_t idx = first; idx < sentences.size(); ++idx) {
    std::string s = sentences[idx];
    if (std::regex_match(s, m, relations)) {
      s = trim(m[1].str());
      if (s.empty()) continue;
    }
    if (s.rfind("However, ", 0) == 0 || s.rfind("however, ", 0) == 0) s = trim(s.substr(9));

    auto pair_of = [&](const std::string& a, const std::string& b) -> std::optional<std::pair<int, int>> {
      auto x = detail::exact_name(a, out.names);
      auto y = detail::exact_name(b, out.names);
      if (x && y && *x != *y) return std::pair(*x, *y);
      return std::nullopt;
    };
    auto add_stmt = [&](int a, int b, Mask z) {
      try {
        CiStatement st(a, b, z);
        stmts.push_back(st);
        out.statements.push_back({st, s});
      } catch (const Error& e) {
        throw ParseError(e.what(), idx);
      }
    };
    auto given_mask = [&](const std::string& g) -> Mask {
      if (g.empty()) return 0;
      auto z = detail::match_name_list(g, out.names);
      if (!z) throw ParseError("unknown conditioning variables '" + g + "'", idx);
      return *z;
    };

    if (std::regex_match(s, m, corr)) {
      auto p = pair_of(m[1].str(), m[2].str());
      if (!p) throw ParseError("correlation between unknown variables", idx);
      out.correlations.push_back(*p);
      continue;
    }
    if (std::regex_match(s, m, corr_between)) {
      // "X and Y, and between U and V"
      std::string rest = m[1].str();
      std::vector<std::string> chunks;
      std::size_t pos;
      while ((pos = rest.find(", and between ")) != std::string::npos) {
        chunks.push_back(rest.substr(0, pos));
        rest = rest.substr(pos + 14);
      }
      chunks.push_back(rest);
      for (const auto& c : chunks) {
        auto p = detail::split_pair(c, " and ", out.names);
        if (!p) throw ParseError("correlation between unknown variables", idx);
        out.correlations.push_back(*p);
      }
      continue;
    }
    if (std::regex_match(s, m, indep_each)) {
      auto p = detail::split_pair(m[1].str(), " and ", out.names);
      if (!p) throw ParseError("independence between unknown variables", idx);
      add_stmt(p->first, p->second, 0);
      continue;
    }
    if (std::regex_match(s, m, indep_of)) {
      auto p = pair_of(m[1].str(), m[2].str());
      if (p) {
        add_stmt(p->first, p->second, given_mask(m[3].matched ? m[3].str() : ""));
        continue;
      }
    }
    if (std::regex_match(s, m, indep_and)) {
      auto p = detail::split_pair(m[1].str(), " and ", out.names);
      if (!p) throw ParseError("independence between unknown variables", idx);
      add_stmt(p->first, p->second, given_mask(m[2].matched ? m[2].str() : ""));
      continue;
    }
    throw ParseError("unrecognised premise sentence '" + s + "'", idx);
  }
  try {
    out.ci = CiSet(stmts);
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
  return out;
}

// Graphs with no edges render as the empty-graph sentinel so that downstream prompts never embed an empty slot.
inline std::string render_graph(const Pdag& g, const NameScheme& names) {
  return g.empty() ? std::string(kNoEdges) : g.render(names);
}

struct GraphValue {
  Pdag graph;
};
struct PathsValue {
  std::vector<Path2> paths;
};
struct CandidatesValue {
  std::vector<Path2> paths;
};
struct DirectedValue {
  DirectedEdges edges;
};
struct LabelValue {
  int label = 0;
};
struct SentinelValue {
  Sentinel kind;
};

using ParsedValue = std::variant<GraphValue, PathsValue, CandidatesValue, DirectedValue, LabelValue, SentinelValue>;

struct ParsedAnswer {
  int subq = 0;
  ParsedValue value;
  NameScheme names;
};

// Interprets the answer of subquestion `subq` (1..8) as the value its consumers expect.
inline ParsedAnswer parse_subq_answer(int subq, std::string_view text, const NameScheme* names = nullptr) {
  ParsedAnswer out;
  out.subq = subq;
  auto expect_sentinel = [](std::optional<Sentinel> got, Sentinel want) {
    if (got && *got != want) throw ParseError("unexpected '" + std::string(sentinel_text(*got)) + "'");
  };
  switch (subq) {
    case 1:
    case 2:
    case 6:
    case 7: {
      auto g = parse_graph_answer(text, names);
      expect_sentinel(g.sentinel, Sentinel::Edges);
      out.value = GraphValue{g.graph};
      out.names = g.names;
      return out;
    }
    case 3:
    case 4: {
      auto p = parse_paths_answer(text, names);
      const Sentinel want = subq == 3 ? Sentinel::Paths : Sentinel::VStructures;
      expect_sentinel(p.sentinel, want);
      if (p.sentinel) out.value = SentinelValue{want};
      else if (subq == 3) out.value = PathsValue{p.paths};
      else out.value = CandidatesValue{p.paths};
      out.names = p.names;
      return out;
    }
    case 5: {
      auto d = parse_directed_edges(text, names);
      expect_sentinel(d.sentinel, Sentinel::Directed);
      if (d.sentinel) out.value = SentinelValue{Sentinel::Directed};
      else out.value = DirectedValue{d.edges};
      out.names = d.names;
      return out;
    }
    case 8:
      out.value = LabelValue{parse_label_answer(text)};
      if (names) out.names = *names;
      return out;
    default:
      throw RangeError("subquestion index must be 1..8");
  }
}

inline std::string render_parsed(const ParsedAnswer& a) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, GraphValue>) return render_graph(v.graph.sorted(), a.names);
        else if constexpr (std::is_same_v<T, PathsValue> || std::is_same_v<T, CandidatesValue>)
          return render_paths(v.paths, a.names);
        else if constexpr (std::is_same_v<T, DirectedValue>) return render_directed(v.edges, a.names);
        else if constexpr (std::is_same_v<T, LabelValue>) return std::to_string(v.label);
        else return std::string(sentinel_text(v.kind));
      },
      a.value);
}

namespace detail {

inline std::vector<std::array<std::string, 3>> path_keys(const std::vector<Path2>& ps, const NameScheme& names) {
  std::vector<std::array<std::string, 3>> out;
  for (const auto& p : ps) {
    auto c = p.canonical();
    std::array<std::string, 3> k{names.name(c.x), names.name(c.z), names.name(c.y)};
    if (k[0] > k[2]) std::swap(k[0], k[2]);
    out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> edge_keys(const Pdag& g, const NameScheme& names) {
  std::vector<std::string> out;
  for (const auto& e : g.edges()) {
    if (e.directed) {
      out.push_back(to_lower(names.name(e.a)) + " -> " + to_lower(names.name(e.b)));
    } else {
      auto a = to_lower(names.name(e.a)), b = to_lower(names.name(e.b));
      out.push_back("(" + std::min(a, b) + "," + std::max(a, b) + ")");
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Order-insensitive comparison by variable name, so answers parsed under different inferred schemes compare fairly.
inline bool same_answer(const ParsedAnswer& x, const ParsedAnswer& y) {
  auto empty_of = [](const ParsedValue& v) {
    if (auto s = std::get_if<SentinelValue>(&v)) return s->kind == Sentinel::Paths || s->kind == Sentinel::VStructures;
    if (auto p = std::get_if<PathsValue>(&v)) return p->paths.empty();
    if (auto c = std::get_if<CandidatesValue>(&v)) return c->paths.empty();
    return false;
  };
  if (x.value.index() != y.value.index()) {
    if (x.subq == y.subq && (x.subq == 3 || x.subq == 4)) return empty_of(x.value) && empty_of(y.value);
    if (x.subq == 5 && y.subq == 5) {
      auto dx = std::get_if<DirectedValue>(&x.value), dy = std::get_if<DirectedValue>(&y.value);
      return (dx && dx->edges.empty()) || (dy && dy->edges.empty());
    }
    return false;
  }
  return std::visit(
      [&](const auto& a) -> bool {
        using T = std::decay_t<decltype(a)>;
        const auto& b = std::get<T>(y.value);
        if constexpr (std::is_same_v<T, GraphValue>) {
          return detail::edge_keys(a.graph, x.names) == detail::edge_keys(b.graph, y.names);
        } else if constexpr (std::is_same_v<T, PathsValue> || std::is_same_v<T, CandidatesValue>) {
          return detail::path_keys(a.paths, x.names) == detail::path_keys(b.paths, y.names);
        } else if constexpr (std::is_same_v<T, DirectedValue>) {
          auto keys = [](const DirectedEdges& es, const NameScheme& n) {
            std::vector<std::pair<std::string, std::string>> k;
            for (auto [u, v] : es) k.emplace_back(to_lower(n.name(u)), to_lower(n.name(v)));
            std::sort(k.begin(), k.end());
            k.erase(std::unique(k.begin(), k.end()), k.end());
            return k;
          };
          return keys(a.edges, x.names) == keys(b.edges, y.names);
        } else if constexpr (std::is_same_v<T, LabelValue>) {
          return a.label == b.label;
        } else {
          return a.kind == b.kind;
        }
      },
      x.value);
}

}  // namespace c2c
