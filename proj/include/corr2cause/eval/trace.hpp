#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "corr2cause/backends/symbolic.hpp"
#include "corr2cause/chain/chain.hpp"

namespace c2c {

enum class TraceMode { Strict, Propagated };

inline TraceMode parse_trace_mode(std::string_view s) {
  if (s == "strict") return TraceMode::Strict;
  if (s == "propagated") return TraceMode::Propagated;
  throw ConfigError("trace mode must be strict or propagated");
}

enum class Verdict { Match, Mismatch, Missing, Unverifiable };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Match: return "match";
    case Verdict::Mismatch: return "mismatch";
    case Verdict::Missing: return "missing";
    case Verdict::Unverifiable: return "unverifiable";
  }
  return "";
}

struct StepVerdict {
  int index = 0;
  Verdict verdict = Verdict::Missing;
  std::string expected;
  std::string got;
  std::string note;
};

struct TraceReport {
  std::string id;
  TraceMode mode = TraceMode::Propagated;
  std::vector<StepVerdict> steps;
  std::optional<int> first_mismatch;  // subquestion index, 0 for a single-prompt baseline
};

namespace detail {

inline const TraceStep* step_of(const ChainTrace& t, int k) {
  for (const auto& s : t.steps)
    if (s.index == k && !s.error) return &s;
  return nullptr;
}

inline StepVerdict judge(int k, const std::string& expected, const std::string& got) {
  StepVerdict v{k, Verdict::Match, expected, got, ""};
  try {
    const auto pe = parse_subq_answer(k, expected);
    const auto pg = parse_subq_answer(k, got);
    v.expected = render_parsed(pe);
    v.got = render_parsed(pg);
    if (!same_answer(pe, pg)) v.verdict = Verdict::Mismatch;
  } catch (const ParseError& e) {
    v.verdict = Verdict::Mismatch;
    v.note = std::string("answer does not parse: ") + e.what();
  }
  return v;
}

}  // namespace detail

// Compares each recorded answer with the oracle's. Strict mode feeds the oracle its own earlier answers;
// propagated mode feeds it the recorded ones, so an early slip is not charged to every later step.
inline TraceReport trace_report(const ChainTrace& t, TraceMode mode) {
  TraceReport rep{t.record_id, mode, {}, std::nullopt};
  auto mark = [&](const StepVerdict& v) {
    if (!rep.first_mismatch && v.verdict != Verdict::Match) rep.first_mismatch = v.index;
    rep.steps.push_back(v);
  };

  if (t.strategy != strategy_name(Strategy::PcSubQ)) {
    const TraceStep* s = detail::step_of(t, 0);
    StepVerdict v{0, Verdict::Missing, "", s ? s->answer : std::to_string(t.predicted), s ? "" : "no prompt answer recorded"};
    try {
      v.expected = symbolic::baseline(t.premise, t.hypothesis).answer;
      const int got = s ? parse_label_answer(s->answer) : t.predicted;
      v.verdict = std::to_string(got) == v.expected ? Verdict::Match : Verdict::Mismatch;
    } catch (const Error& e) {
      v.verdict = Verdict::Unverifiable;
      v.note = e.what();
    }
    mark(v);
    return rep;
  }

  ChainContext oracle{t.premise, t.hypothesis, {}};
  ChainContext recorded{t.premise, t.hypothesis, {}};
  for (const auto& spec : pc_subq_specs()) {
    const int k = spec.index;
    const TraceStep* s = detail::step_of(t, k);
    if (s) recorded.answers[k] = s->answer;
    StepVerdict v{k, Verdict::Missing, "", s ? s->answer : "", ""};
    std::optional<std::string> expected;
    try {
      expected = SymbolicBackend::solve(live_question(spec, mode == TraceMode::Strict ? oracle : recorded)).answer;
    } catch (const SequencingError& e) {
      v.note = e.what();
    } catch (const Error& e) {
      v.verdict = Verdict::Unverifiable;
      v.note = e.what();
    }
    if (expected) oracle.answers[k] = *expected;
    if (expected && s) v = detail::judge(k, *expected, s->answer);
    else if (expected) v.expected = *expected;
    if (!s && v.note.empty()) v.note = "no answer recorded";
    mark(v);
  }
  return rep;
}

inline TraceReport trace_report(const std::vector<ChainTrace>& traces, const std::string& id, TraceMode mode) {
  for (const auto& t : traces)
    if (t.record_id == id) return trace_report(t, mode);
  throw LookupError("no trace with id '" + id + "'");
}

inline std::string render_report(const TraceReport& r) {
  std::ostringstream os;
  os << "trace " << r.id << " (" << (r.mode == TraceMode::Strict ? "strict" : "propagated") << ")\n";
  for (const auto& s : r.steps) {
    const bool first = r.first_mismatch && *r.first_mismatch == s.index;
    os << (first ? "=> " : "   ") << (s.index ? "SubQ" + std::to_string(s.index) : std::string("prompt")) << ": "
       << verdict_name(s.verdict);
    if (s.verdict != Verdict::Match) os << " (expected: " << s.expected << "; got: " << s.got << ")";
    if (!s.note.empty()) os << " [" << s.note << "]";
    os << '\n';
  }
  if (r.first_mismatch) os << "first divergence at " << (*r.first_mismatch ? "SubQ" + std::to_string(*r.first_mismatch) : "the prompt") << '\n';
  else os << "all steps match\n";
  return os.str();
}

inline nlohmann::json to_json(const TraceReport& r) {
  nlohmann::json j{{"id", r.id}, {"mode", r.mode == TraceMode::Strict ? "strict" : "propagated"}};
  j["steps"] = nlohmann::json::array();
  for (const auto& s : r.steps)
    j["steps"].push_back({{"index", s.index}, {"verdict", verdict_name(s.verdict)}, {"expected", s.expected}, {"got", s.got}, {"note", s.note}});
  j["first_mismatch"] = r.first_mismatch ? nlohmann::json(*r.first_mismatch) : nlohmann::json(nullptr);
  return j;
}

}  // namespace c2c
