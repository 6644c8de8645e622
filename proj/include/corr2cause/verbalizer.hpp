#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corr2cause/assets.hpp"
#include "corr2cause/errors.hpp"
#include "corr2cause/graph/ci.hpp"
#include "corr2cause/hypothesis.hpp"
#include "corr2cause/names.hpp"
#include "corr2cause/record.hpp"

namespace c2c {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  if (from.empty()) return s;
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

// Hypothesis and premise sentence templates with {A}, {B} and {Z} placeholders.
struct PhraseBook {
  std::string name;
  std::map<HypothesisKind, std::string> hypothesis;
  std::string correlation = "{A} correlates with {B}.";
  std::string marginal = "{A} is independent of {B}.";
  std::string conditional = "{A} and {B} are independent given {Z}.";

  // "key = value" lines; '#' starts a comment line.
  static PhraseBook parse(std::string_view text) {
    PhraseBook book;
    std::size_t start = 0;
    int lineno = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string line = trim(text.substr(start, end - start));
      start = end + 1;
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) throw ConfigError("phrase book line " + std::to_string(lineno) + " has no '='");
      std::string key = trim(std::string_view(line).substr(0, eq));
      std::string value = trim(std::string_view(line).substr(eq + 1));
      if (key == "name") book.name = value;
      else if (key == "correlation") book.correlation = value;
      else if (key == "marginal") book.marginal = value;
      else if (key == "conditional") book.conditional = value;
      else {
        try {
          book.hypothesis[parse_kind(key)] = value;
        } catch (const ParseError&) {
          throw ConfigError("phrase book line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
      }
    }
    return book;
  }

  static const PhraseBook& standard() {
    static const PhraseBook b = parse(asset("phrases/standard.txt"));
    return b;
  }

  static const PhraseBook& paraphrased() {
    static const PhraseBook b = parse(asset("phrases/paraphrase.txt"));
    return b;
  }

  static const PhraseBook& by_name(std::string_view name) {
    if (name == "standard") return standard();
    if (name == "paraphrase") return paraphrased();
    throw ConfigError("unknown phrase book '" + std::string(name) + "'");
  }

  const std::string& for_kind(HypothesisKind k) const {
    auto it = hypothesis.find(k);
    if (it == hypothesis.end())
      throw ConfigError("phrase book '" + name + "' has no entry for " + std::string(kind_name(k)));
    return it->second;
  }
};

inline std::string fill_template(std::string_view tmpl, std::string_view a, std::string_view b, std::string_view z = {}) {
  std::string out = replace_all(std::string(tmpl), "{A}", a);
  out = replace_all(out, "{B}", b);
  return replace_all(out, "{Z}", z);
}

inline std::string statement_text(const CiStatement& s, const NameScheme& names,
                                  const PhraseBook& book = PhraseBook::standard()) {
  if (s.marginal()) return fill_template(book.marginal, names.name(s.x), names.name(s.y));
  std::vector<std::string> given;
  for (int v : s.given()) given.push_back(names.name(v));
  return fill_template(book.conditional, names.name(s.x), names.name(s.y), join_and(given));
}

inline std::string premise_header(int n, const NameScheme& names) {
  const std::string count = std::to_string(n);
  return "Suppose there is a closed system of " + count + " variables, " + join_and(names.names()) +
         ". All the statistical relations among these " + count + " variables are as follows:";
}

inline std::string verbalize_premise(const CiSet& ci, int n, const NameScheme& names,
                                     const PhraseBook& book = PhraseBook::standard()) {
  if (names.size() != n) throw ArgumentError("name scheme size does not match n");
  ci.check_range(n);
  std::vector<std::string> sentences;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (!ci.marginally_independent(x, y)) sentences.push_back(fill_template(book.correlation, names.name(x), names.name(y)));
  const bool any_correlation = !sentences.empty();
  bool first = true;
  for (const auto& s : ci) {
    std::string text = statement_text(s, names, book);
    if (first && any_correlation) text = "However, " + text;
    first = false;
    sentences.push_back(std::move(text));
  }
  std::string out = premise_header(n, names);
  for (const auto& s : sentences) out += " " + s;
  return out;
}

inline std::string verbalize_hypothesis(const Hypothesis& h, const NameScheme& names,
                                        const PhraseBook& book = PhraseBook::standard()) {
  return fill_template(book.for_kind(h.kind), names.name(h.a), names.name(h.b));
}

namespace detail {

inline std::string regex_escape(std::string_view s) {
  static const std::string special = R"(\^$.|?*+()[]{})";
  std::string out;
  for (char c : s) {
    if (special.find(c) != std::string::npos) out += '\\';
    out += c;
  }
  return out;
}

struct HypothesisPattern {
  HypothesisKind kind;
  std::regex re;
  bool a_first;  // whether {A} is captured before {B}
};

inline HypothesisPattern compile_pattern(HypothesisKind kind, std::string tmpl) {
  tmpl = trim(tmpl);
  if (!tmpl.empty() && tmpl.back() == '.') tmpl.pop_back();
  auto pa = tmpl.find("{A}"), pb = tmpl.find("{B}");
  if (pa == std::string::npos || pb == std::string::npos) throw ConfigError("hypothesis template needs {A} and {B}");
  bool a_first = pa < pb;
  std::string re = "^\\s*";
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    auto next = std::min(tmpl.find("{A}", pos), tmpl.find("{B}", pos));
    if (next == std::string::npos) {
      re += regex_escape(tmpl.substr(pos));
      break;
    }
    re += regex_escape(tmpl.substr(pos, next - pos)) + "(.+?)";
    pos = next + 3;
  }
  re += "\\s*\\.?\\s*$";
  return {kind, std::regex(re, std::regex::icase | std::regex::ECMAScript), a_first};
}

inline const std::vector<HypothesisPattern>& hypothesis_patterns() {
  static const std::vector<HypothesisPattern> pats = [] {
    std::vector<HypothesisPattern> v;
    for (const auto* book : {&PhraseBook::standard(), &PhraseBook::paraphrased()})
      for (const auto& [k, t] : book->hypothesis) v.push_back(compile_pattern(k, t));
    // grammatical variants seen in hand-written records
    const std::pair<HypothesisKind, const char*> extra[] = {
        {HypothesisKind::DirectCause, "{A} directly affect {B}."},
        {HypothesisKind::DirectCause, "{A} directly cause {B}."},
        {HypothesisKind::TogetherCause, "{A} and {B} together causes some other variable(s)."},
        {HypothesisKind::TogetherCause, "{A} and {B} together cause some other variable."},
        {HypothesisKind::CommonCause, "Some variable(s) cause(s) both {A} and {B}."},
        {HypothesisKind::CommonCause, "Some variables cause both {A} and {B}."},
        {HypothesisKind::Mediation, "{A} influence {B} through some mediator(s)."},
        {HypothesisKind::Mediation, "{A} cause something else which causes {B}."},
    };
    for (const auto& [k, t] : extra) v.push_back(compile_pattern(k, t));
    return v;
  }();
  return pats;
}

}  // namespace detail

// Recognises both shipped phrase books plus a few grammatical variants; names resolve case-insensitively.
inline Hypothesis parse_hypothesis(std::string_view text, const NameScheme& names) {
  const std::string s = trim(text);
  std::smatch m;
  for (const auto& p : detail::hypothesis_patterns()) {
    if (!std::regex_match(s, m, p.re)) continue;
    auto first = names.find(trim(m[1].str()));
    auto second = names.find(trim(m[2].str()));
    if (!first || !second || *first == *second) continue;
    int a = p.a_first ? *first : *second;
    int b = p.a_first ? *second : *first;
    return Hypothesis(p.kind, a, b);
  }
  throw ParseError("unrecognised hypothesis: '" + s + "'");
}

struct RawHypothesis {
  HypothesisKind kind;
  std::string a;
  std::string b;
};

// Same patterns, but the variable names are returned as written.
inline RawHypothesis match_hypothesis(std::string_view text) {
  const std::string s = trim(text);
  std::smatch m;
  for (const auto& p : detail::hypothesis_patterns()) {
    if (!std::regex_match(s, m, p.re)) continue;
    std::string first = trim(m[1].str()), second = trim(m[2].str());
    if (first.empty() || second.empty() || iequals(first, second)) continue;
    return p.a_first ? RawHypothesis{p.kind, first, second} : RawHypothesis{p.kind, second, first};
  }
  throw ParseError("unrecognised hypothesis: '" + s + "'");
}

namespace detail {

inline bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline bool boundary_before(std::string_view t, std::size_t i) { return i == 0 || !word_char(t[i - 1]); }
inline bool boundary_after(std::string_view t, std::size_t i) { return i >= t.size() || !word_char(t[i]); }

// Finds the longest name starting at position i (word-bounded, case-insensitive).
inline std::optional<std::pair<int, std::size_t>> match_name(std::string_view t, std::size_t i,
                                                             const NameScheme& names, bool exact_case) {
  if (!boundary_before(t, i)) return std::nullopt;
  std::optional<std::pair<int, std::size_t>> best;
  for (int v = 0; v < names.size(); ++v) {
    const auto& nm = names.name(v);
    if (i + nm.size() > t.size()) continue;
    auto piece = t.substr(i, nm.size());
    bool ok = exact_case ? piece == nm : iequals(piece, nm);
    if (!ok || !boundary_after(t, i + nm.size())) continue;
    if (!best || nm.size() > best->second) best = std::pair(v, nm.size());
  }
  return best;
}

}  // namespace detail

// Replaces every variable token of `from` by the corresponding name in `to`, in one left-to-right pass.
// Single capital letters must match exactly; longer names match case-insensitively.
inline std::string refactor_text(std::string_view text, const NameScheme& from, const NameScheme& to) {
  if (from.size() != to.size()) throw ValidationError("name schemes differ in size");
  const bool exact = from.single_capitals();
  // A target token already present in the text would make the inverse mapping ambiguous.
  for (std::size_t i = 0; i < text.size(); ++i) {
    auto hit = detail::match_name(text, i, to, exact || to.single_capitals());
    if (!hit) continue;
    auto src = detail::match_name(text, i, from, exact);
    if (!src) throw ValidationError("text already contains target name '" + to.name(hit->first) + "'");
  }
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    auto hit = detail::match_name(text, i, from, exact);
    if (!hit) {
      out += text[i++];
      continue;
    }
    std::string repl = to.name(hit->first);
    const char first = text[i];
    if (!exact && std::isupper(static_cast<unsigned char>(first)) && !repl.empty() &&
        std::islower(static_cast<unsigned char>(from.name(hit->first)[0])))
      repl[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(repl[0])));
    out += repl;
    i += hit->second;
  }
  return out;
}

inline BenchmarkRecord refactor_names(const BenchmarkRecord& r, const NameScheme& scheme) {
  if (scheme.size() != r.n) throw ValidationError("scheme has " + std::to_string(scheme.size()) + " names for n=" + std::to_string(r.n));
  BenchmarkRecord out = r;
  out.premise = refactor_text(r.premise, r.names, scheme);
  out.hypothesis_text = refactor_text(r.hypothesis_text, r.names, scheme);
  out.names = scheme;
  out.name_scheme = scheme == NameScheme::refactored(r.n) ? "refactored"
                    : scheme == NameScheme::forward(r.n)  ? "default"
                                                          : "custom";
  out.perturbations.push_back("refactor");
  return out;
}

inline BenchmarkRecord paraphrase(const BenchmarkRecord& r, const PhraseBook& book) {
  bool delta = false;
  for (auto k : kAllKinds) {
    auto it = book.hypothesis.find(k);
    if (it != book.hypothesis.end() && it->second != PhraseBook::standard().for_kind(k)) delta = true;
  }
  if (!delta) throw ValidationError("phrase book '" + book.name + "' does not differ from the standard book");
  Hypothesis h = r.hypothesis ? *r.hypothesis : parse_hypothesis(r.hypothesis_text, r.names);
  BenchmarkRecord out = r;
  out.hypothesis = h;
  out.hypothesis_text = verbalize_hypothesis(h, r.names, book);
  out.phrase_book = book.name;
  out.perturbations.push_back("paraphrase");
  return out;
}

}  // namespace c2c
