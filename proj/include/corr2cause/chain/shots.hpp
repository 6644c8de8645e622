#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corr2cause/answer_parser.hpp"
#include "corr2cause/errors.hpp"
#include "corr2cause/verbalizer.hpp"

namespace c2c {

struct Shot {
  std::string question;
  std::string reasoning;  // empty when the exemplar carries none
  std::string answer;
};

// Exemplars plus the live question template of one prompt family.
struct ShotLibrary {
  std::string title;
  int version = 0;
  std::vector<Shot> shots;
  std::string question_template;

  // Blocks of "Question:" / "Reasoning:" / "Answer:" separated by blank lines, then a "Template:" line.
  // Questions and reasonings may span several lines.
  static ShotLibrary parse(std::string_view text) {
    ShotLibrary lib;
    enum class Field { None, Question, Reasoning };
    Field field = Field::None;
    std::optional<Shot> cur;
    int lineno = 0;
    auto finish = [&] {
      if (!cur) return;
      if (cur->answer.empty()) throw ConfigError("exemplar ending near line " + std::to_string(lineno) + " has no answer");
      lib.shots.push_back(*cur);
      cur.reset();
      field = Field::None;
    };
    for (const auto& raw : split_lines(text)) {
      ++lineno;
      std::string line = raw;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (lineno == 1 && line.rfind("#", 0) == 0) {
        lib.title = trim(line.substr(1));
        auto v = lib.title.rfind("version ");
        if (v != std::string::npos) lib.version = std::stoi(lib.title.substr(v + 8));
        continue;
      }
      if (line.rfind("Question: ", 0) == 0) {
        finish();
        cur = Shot{line.substr(10), "", ""};
        field = Field::Question;
      } else if (line.rfind("Reasoning:", 0) == 0) {
        if (!cur) throw ConfigError("line " + std::to_string(lineno) + ": reasoning outside an exemplar");
        cur->reasoning = trim(line.substr(10));
        field = Field::Reasoning;
      } else if (line.rfind("Answer:", 0) == 0) {
        if (!cur) throw ConfigError("line " + std::to_string(lineno) + ": answer outside an exemplar");
        cur->answer = trim(line.substr(7));
        field = Field::None;
      } else if (line.rfind("Template: ", 0) == 0) {
        finish();
        lib.question_template = line.substr(10);
      } else if (trim(line).empty()) {
        finish();
      } else if (field == Field::Question) {
        cur->question += "\n" + line;
      } else if (field == Field::Reasoning) {
        cur->reasoning += "\n" + line;
      } else {
        throw ConfigError("line " + std::to_string(lineno) + ": unexpected text '" + line + "'");
      }
    }
    finish();
    if (lib.question_template.empty()) throw ConfigError("shot library has no Template line");
    return lib;
  }
};

inline std::string format_exemplar(const Shot& s, bool with_reasoning) {
  std::string out = "Question: " + s.question + "\n";
  if (with_reasoning) out += "Reasoning: " + s.reasoning + "\n";
  return out + "Answer: " + s.answer + "\n\n";
}

namespace detail {

struct TemplatePiece {
  bool slot;
  std::string text;  // literal text, or the slot name without braces
};

inline std::vector<TemplatePiece> split_template(std::string_view tmpl) {
  std::vector<TemplatePiece> out;
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    auto open = tmpl.find('{', pos);
    if (open == std::string_view::npos) {
      out.push_back({false, std::string(tmpl.substr(pos))});
      break;
    }
    auto close = tmpl.find('}', open);
    if (close == std::string_view::npos) throw ConfigError("unterminated placeholder in template");
    if (open > pos) out.push_back({false, std::string(tmpl.substr(pos, open - pos))});
    out.push_back({true, std::string(tmpl.substr(open + 1, close - open - 1))});
    pos = close + 1;
  }
  return out;
}

}  // namespace detail

inline std::vector<std::string> template_slots(std::string_view tmpl) {
  std::vector<std::string> out;
  for (const auto& p : detail::split_template(tmpl))
    if (p.slot) out.push_back(p.text);
  return out;
}

inline std::string fill_slots(std::string_view tmpl, const std::map<std::string, std::string>& values) {
  std::string out;
  for (const auto& p : detail::split_template(tmpl)) {
    if (!p.slot) {
      out += p.text;
      continue;
    }
    auto it = values.find(p.text);
    if (it == values.end()) throw SequencingError("no value for placeholder {" + p.text + "}");
    out += it->second;
  }
  return out;
}

// Inverse of fill_slots: each slot extends to the first occurrence of the literal after it,
// except the last one, which runs to the template's closing literal at the very end.
inline std::optional<std::map<std::string, std::string>> match_template(std::string_view tmpl, std::string_view text) {
  auto pieces = detail::split_template(tmpl);
  std::map<std::string, std::string> out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    if (!p.slot) {
      if (text.substr(pos, p.text.size()) != p.text) return std::nullopt;
      pos += p.text.size();
      continue;
    }
    const bool last_slot = [&] {
      for (std::size_t j = i + 1; j < pieces.size(); ++j)
        if (pieces[j].slot) return false;
      return true;
    }();
    std::string tail;
    if (i + 1 < pieces.size() && !pieces[i + 1].slot) tail = pieces[i + 1].text;
    std::size_t end;
    if (last_slot) {
      std::string rest;
      for (std::size_t j = i + 1; j < pieces.size(); ++j) rest += pieces[j].text;
      if (text.size() < pos + rest.size() || text.substr(text.size() - rest.size()) != rest) return std::nullopt;
      end = text.size() - rest.size();
    } else {
      if (tail.empty()) throw ConfigError("adjacent placeholders in template");
      end = text.find(tail, pos);
      if (end == std::string_view::npos) return std::nullopt;
    }
    out[p.text] = std::string(text.substr(pos, end - pos));
    pos = end;
  }
  if (pos != text.size()) return std::nullopt;
  return out;
}

}  // namespace c2c
