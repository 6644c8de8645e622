#pragma once

#include <optional>
#include <string>
#include <vector>

#include "corr2cause/answer_parser.hpp"
#include "corr2cause/backends/backend.hpp"
#include "corr2cause/chain/baselines.hpp"
#include "corr2cause/chain/subq.hpp"
#include "corr2cause/record.hpp"

namespace c2c {

struct CallMeta {
  double latency_ms = 0;
  int prompt_tokens = -1;
  int completion_tokens = -1;
};

struct TraceStep {
  int index = 0;  // 1..8 for the chain, 0 for a baseline prompt
  std::string prompt;
  std::string reasoning;
  std::string answer;
  std::string parsed;
  std::optional<std::string> error;
  std::vector<CallMeta> calls;
};

struct ChainTrace {
  std::string record_id;
  std::string strategy;
  std::string premise;
  std::string hypothesis;
  std::vector<std::string> names;
  std::vector<TraceStep> steps;
  int predicted = 0;
  int gold = -1;
  bool abstained = false;
  std::optional<std::string> error;
};

struct ChainOptions {
  int max_tokens = 1024;
  double temperature = 0.0;
};

namespace detail {

inline CallMeta meta_of(const Completion& c) { return {c.latency_ms, c.prompt_tokens, c.completion_tokens}; }

inline std::string first_line(std::string_view text) {
  for (const auto& l : split_lines(text)) {
    auto t = trim(l);
    if (!t.empty()) return t;
  }
  return "";
}

// Reasoning up to "Answer:", then a second call that reads the answer after it.
inline void two_calls(Backend& backend, TraceStep& step, const ChainOptions& opt) {
  CompletionRequest first{step.prompt, {"Answer:"}, opt.max_tokens, opt.temperature};
  auto c1 = backend.complete(first);
  step.calls.push_back(meta_of(c1));
  step.reasoning = trim(truncate_at_stop(c1.text, {"Answer:", "\nQuestion:"}));
  CompletionRequest second{step.prompt + " " + step.reasoning + "\nAnswer:", {"\nQuestion:", "\n\n"}, opt.max_tokens,
                           opt.temperature};
  auto c2 = backend.complete(second);
  step.calls.push_back(meta_of(c2));
  step.answer = first_line(truncate_at_stop(c2.text, second.stop));
}

inline std::optional<NameScheme> record_names(const BenchmarkRecord& r) {
  if (!r.names.empty()) return r.names;
  try {
    return parse_premise(r.premise).names;
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

}  // namespace detail

inline ChainTrace new_trace(const BenchmarkRecord& r, Strategy s) {
  ChainTrace t;
  t.record_id = r.id;
  t.strategy = std::string(strategy_name(s));
  t.premise = r.premise;
  t.hypothesis = r.hypothesis_text;
  t.names = r.names.names();
  t.gold = r.label;
  return t;
}

// Runs SubQ1..8 in order; the first failure is recorded and the record abstains (predicts 0).
inline ChainTrace run_chain(const BenchmarkRecord& record, Backend& backend, const ChainOptions& opt = {}) {
  ChainTrace trace = new_trace(record, Strategy::PcSubQ);
  auto names = detail::record_names(record);
  const NameScheme* np = names ? &*names : nullptr;
  ChainContext ctx{record.premise, record.hypothesis_text, {}};
  for (const auto& spec : pc_subq_specs()) {
    TraceStep step;
    step.index = spec.index;
    try {
      step.prompt = build_subq_prompt(spec, ctx);
      detail::two_calls(backend, step, opt);
      auto parsed = parse_subq_answer(spec.index, step.answer, spec.index == 8 ? nullptr : np);
      step.parsed = render_parsed(parsed);
      ctx.answers[spec.index] = step.answer;
      if (spec.index == 8) trace.predicted = std::get<LabelValue>(parsed.value).label;
      trace.steps.push_back(std::move(step));
    } catch (const Error& e) {
      step.error = e.what();
      trace.error = "subquestion " + std::to_string(spec.index) + ": " + e.what();
      trace.steps.push_back(std::move(step));
      trace.abstained = true;
      trace.predicted = 0;
      return trace;
    }
  }
  return trace;
}

inline ChainTrace run_strategy(Strategy s, const BenchmarkRecord& record, Backend* backend, const ChainOptions& opt = {}) {
  if (s == Strategy::AlwaysMajority) {
    ChainTrace t = new_trace(record, s);
    t.predicted = 0;
    return t;
  }
  if (!backend) throw ArgumentError(std::string(strategy_name(s)) + " needs a backend");
  if (s == Strategy::PcSubQ) return run_chain(record, *backend, opt);
  ChainTrace t = new_trace(record, s);
  TraceStep step;
  try {
    step.prompt = build_baseline_prompt(s, record);
    if (s == Strategy::FewShotCot) {
      detail::two_calls(*backend, step, opt);
    } else {
      CompletionRequest req{step.prompt, {}, opt.max_tokens, opt.temperature};
      if (s == Strategy::FewShot) req.stop = {"\nQuestion:", "\n\n"};
      auto c = backend->complete(req);
      step.calls.push_back(detail::meta_of(c));
      step.answer = trim(truncate_at_stop(c.text, req.stop));
    }
    t.predicted = parse_label_answer(step.answer);
    step.parsed = std::to_string(t.predicted);
  } catch (const Error& e) {
    step.error = e.what();
    t.error = e.what();
    t.abstained = true;
    t.predicted = 0;
  }
  t.steps.push_back(std::move(step));
  return t;
}

}  // namespace c2c
