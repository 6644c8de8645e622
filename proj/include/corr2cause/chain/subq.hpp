#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corr2cause/assets.hpp"
#include "corr2cause/chain/shots.hpp"
#include "corr2cause/errors.hpp"

namespace c2c {

inline constexpr int kSubQCount = 8;

// Premise, Hypothesis and Ans1..Ans7 as they appear inside templates.
inline std::string answer_slot(int k) { return "Ans" + std::to_string(k); }

struct SubQSpec {
  int index = 0;
  std::vector<std::string> inputs;
  ShotLibrary library;
};

// Which earlier values each subquestion consumes.
inline const std::array<std::vector<std::string>, kSubQCount>& subq_wiring() {
  static const std::array<std::vector<std::string>, kSubQCount> w = {{
      {"Premise"},
      {"Premise", "Ans1"},
      {"Ans2"},
      {"Ans3", "Ans2"},
      {"Premise", "Ans4"},
      {"Ans2", "Ans5"},
      {"Ans6", "Ans3"},
      {"Ans7", "Hypothesis"},
  }};
  return w;
}

inline SubQSpec make_subq_spec(int index, const ShotLibrary& lib) {
  if (index < 1 || index > kSubQCount) throw RangeError("subquestion index must be 1..8");
  SubQSpec spec{index, subq_wiring()[index - 1], lib};
  auto slots = template_slots(lib.question_template);
  auto a = slots, b = spec.inputs;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw ConfigError("template of subquestion " + std::to_string(index) + " does not use exactly its wired inputs");
  for (const auto& s : spec.inputs) {
    if (s == "Premise" || s == "Hypothesis") continue;
    if (std::stoi(s.substr(3)) >= index) throw ConfigError("subquestion " + std::to_string(index) + " reads a later answer");
  }
  return spec;
}

inline const std::vector<SubQSpec>& pc_subq_specs() {
  static const std::vector<SubQSpec> specs = [] {
    std::vector<SubQSpec> v;
    for (int i = 1; i <= kSubQCount; ++i)
      v.push_back(make_subq_spec(i, ShotLibrary::parse(asset("pc_subq/subq" + std::to_string(i) + ".txt"))));
    return v;
  }();
  return specs;
}

// Answers are embedded without their closing period; premise and hypothesis go in verbatim.
inline std::string embed_answer(std::string_view answer) {
  std::string s = trim(answer);
  while (!s.empty() && s.back() == '.') s.pop_back();
  return trim(s);
}

struct ChainContext {
  std::string premise;
  std::string hypothesis;
  std::array<std::optional<std::string>, kSubQCount + 1> answers;  // answers[k] is Ans k

  std::map<std::string, std::string> values_for(const SubQSpec& spec) const {
    std::map<std::string, std::string> v;
    for (const auto& s : spec.inputs) {
      if (s == "Premise") v[s] = premise;
      else if (s == "Hypothesis") v[s] = hypothesis;
      else {
        const int k = std::stoi(s.substr(3));
        if (!answers[k]) throw SequencingError("subquestion " + std::to_string(spec.index) + " needs " + s + " which is not available yet");
        v[s] = embed_answer(*answers[k]);
      }
    }
    return v;
  }
};

inline std::string live_question(const SubQSpec& spec, const ChainContext& ctx) {
  return fill_slots(spec.library.question_template, ctx.values_for(spec));
}

// Exemplars in table order, then the live question and the reasoning cue.
inline std::string build_subq_prompt(const SubQSpec& spec, const ChainContext& ctx) {
  std::string q = live_question(spec, ctx);
  std::string out;
  for (const auto& s : spec.library.shots) out += format_exemplar(s, true);
  return out + "Question: " + q + "\nReasoning:";
}

}  // namespace c2c
