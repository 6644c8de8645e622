#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <string_view>

#include "corr2cause/assets.hpp"
#include "corr2cause/chain/shots.hpp"
#include "corr2cause/errors.hpp"
#include "corr2cause/record.hpp"
#include "corr2cause/verbalizer.hpp"

namespace c2c {

enum class Strategy { PcSubQ, ZeroShot, ZeroShotCot, ZeroShotCotPc, FewShot, FewShotCot, AlwaysMajority };

inline constexpr std::array<Strategy, 7> kAllStrategies = {Strategy::PcSubQ,  Strategy::ZeroShot,   Strategy::ZeroShotCot,
                                                           Strategy::ZeroShotCotPc, Strategy::FewShot, Strategy::FewShotCot,
                                                           Strategy::AlwaysMajority};

inline std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::PcSubQ: return "pc_subq";
    case Strategy::ZeroShot: return "zero_shot";
    case Strategy::ZeroShotCot: return "zero_shot_cot";
    case Strategy::ZeroShotCotPc: return "zero_shot_cot_pc";
    case Strategy::FewShot: return "few_shot";
    case Strategy::FewShotCot: return "few_shot_cot";
    case Strategy::AlwaysMajority: return "always_majority";
  }
  return "";
}

inline Strategy parse_strategy(std::string_view s) {
  for (auto st : kAllStrategies)
    if (strategy_name(st) == s) return st;
  throw ConfigError("unknown strategy '" + std::string(s) + "'");
}

inline bool needs_backend(Strategy s) { return s != Strategy::AlwaysMajority; }

inline const ShotLibrary& baseline_library() {
  static const ShotLibrary lib = [] {
    auto l = ShotLibrary::parse(asset("baselines/shots.txt"));
    auto slots = template_slots(l.question_template);
    std::sort(slots.begin(), slots.end());
    if (slots != std::vector<std::string>{"Hypothesis", "Premise"})
      throw ConfigError("baseline template must use exactly {Premise} and {Hypothesis}");
    return l;
  }();
  return lib;
}

inline const std::map<std::string, std::string>& baseline_cues() {
  static const std::map<std::string, std::string> cues = [] {
    std::map<std::string, std::string> m;
    for (const auto& line : split_lines(asset("baselines/cues.txt"))) {
      std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      auto eq = t.find('=');
      if (eq == std::string::npos) throw ConfigError("cue line without '='");
      m[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    for (const char* k : {"zero_shot_cot", "zero_shot_cot_pc"})
      if (!m.count(k)) throw ConfigError(std::string("missing cue ") + k);
    return m;
  }();
  return cues;
}

inline std::string baseline_question(std::string_view premise, std::string_view hypothesis) {
  return fill_slots(baseline_library().question_template,
                    {{"Premise", std::string(premise)}, {"Hypothesis", std::string(hypothesis)}});
}

// Zero-shot variants are the bare question (plus a cue); few-shot variants wrap it in Question/Answer blocks.
inline std::string build_baseline_prompt(Strategy s, std::string_view premise, std::string_view hypothesis) {
  const std::string q = baseline_question(premise, hypothesis);
  std::string out;
  switch (s) {
    case Strategy::ZeroShot: return q;
    case Strategy::ZeroShotCot: return q + " " + baseline_cues().at("zero_shot_cot");
    case Strategy::ZeroShotCotPc: return q + " " + baseline_cues().at("zero_shot_cot_pc");
    case Strategy::FewShot:
      for (const auto& shot : baseline_library().shots) out += format_exemplar(shot, false);
      return out + "Question: " + q + "\nAnswer:";
    case Strategy::FewShotCot:
      for (const auto& shot : baseline_library().shots) out += format_exemplar(shot, true);
      return out + "Question: " + q + "\nReasoning:";
    case Strategy::PcSubQ:
    case Strategy::AlwaysMajority: break;
  }
  throw ArgumentError(std::string(strategy_name(s)) + " has no single baseline prompt");
}

inline std::string build_baseline_prompt(Strategy s, const BenchmarkRecord& r) {
  return build_baseline_prompt(s, r.premise, r.hypothesis_text);
}

}  // namespace c2c
