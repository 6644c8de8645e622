#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "corr2cause/answer_parser.hpp"
#include "corr2cause/errors.hpp"
#include "corr2cause/graph/mec.hpp"
#include "corr2cause/hypothesis.hpp"
#include "corr2cause/record.hpp"
#include "corr2cause/verbalizer.hpp"

namespace c2c {

struct DatasetOptions {
  int n_min = 2;
  int n_max = 4;
  std::vector<HypothesisKind> kinds{kAllKinds.begin(), kAllKinds.end()};
  std::uint64_t seed = 0;
  std::optional<std::size_t> subsample;  // keep K records chosen uniformly without replacement
  bool allow_large = false;              // full n=5, and any n=6
  bool collapse_isomorphic = false;      // keep one class per relabelling orbit
  Semantics semantics = Semantics::DirectEdge;
  std::function<void(const std::string&)> progress;
};

inline void check_dataset_options(const DatasetOptions& o) {
  if (o.n_min < 2 || o.n_max > 6 || o.n_min > o.n_max)
    throw RangeError("n range must lie within 2..6, got " + std::to_string(o.n_min) + ".." + std::to_string(o.n_max));
  if (o.kinds.empty()) throw ArgumentError("at least one hypothesis kind is required");
  if (o.allow_large) return;
  if (o.n_max >= 6) throw ArgumentError("n=6 enumerates 3781503 DAGs; pass allow_large to proceed");
  if (o.n_max >= 5 && !o.subsample) throw ArgumentError("full n=5 generation needs allow_large (or a subsample)");
}

// Chooses k of total indices; the result is sorted so the dataset keeps generation order.
inline std::vector<std::size_t> subsample_indices(std::size_t total, std::size_t k, std::uint64_t seed) {
  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (k >= total) return idx;
  std::mt19937_64 rng(seed);
  // partial Fisher-Yates; the modulo keeps output independent of the standard library's distributions
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng() % (total - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

inline BenchmarkRecord make_record(const Mec& mec, int mec_id, const Hypothesis& h, const NameScheme& names,
                                   const std::string& premise, Semantics sem = Semantics::DirectEdge) {
  BenchmarkRecord r;
  r.n = mec.n();
  r.mec_id = mec_id;
  r.hypothesis = h;
  r.premise = premise;
  r.hypothesis_text = verbalize_hypothesis(h, names);
  r.label = label(mec, h, sem);
  r.semantics = sem;
  r.names = names;
  r.id = record_id(r.n, mec_id, h, names);
  return r;
}

inline std::vector<BenchmarkRecord> generate_dataset(const DatasetOptions& opt) {
  check_dataset_options(opt);
  struct Block {
    int n;
    std::vector<Mec> mecs;
    std::vector<int> ids;  // class id of each kept class
    std::vector<Hypothesis> hyps;
    std::size_t size() const { return mecs.size() * hyps.size(); }
  };
  std::vector<Block> blocks;
  std::size_t total = 0;
  for (int n = opt.n_min; n <= opt.n_max; ++n) {
    if (opt.progress && n >= 5) opt.progress("enumerating DAGs for n=" + std::to_string(n));
    Block b{n, enumerate_mecs(n), {}, all_hypotheses(n, opt.kinds)};
    for (int i = 0; i < static_cast<int>(b.mecs.size()); ++i) b.ids.push_back(i);
    if (opt.collapse_isomorphic) {
      std::set<MecSignature> seen;
      std::vector<Mec> kept;
      std::vector<int> ids;
      for (std::size_t i = 0; i < b.mecs.size(); ++i)
        if (seen.insert(canonical_signature(b.mecs[i].signature(), n)).second) {
          kept.push_back(b.mecs[i]);
          ids.push_back(static_cast<int>(i));
        }
      b.mecs = std::move(kept);
      b.ids = std::move(ids);
    }
    if (opt.progress && n >= 5)
      opt.progress("n=" + std::to_string(n) + ": " + std::to_string(b.mecs.size()) + " classes, " + std::to_string(b.size()) +
                   " records");
    total += b.size();
    blocks.push_back(std::move(b));
  }
  std::vector<std::size_t> chosen = subsample_indices(total, opt.subsample.value_or(total), opt.seed);

  std::vector<BenchmarkRecord> out;
  out.reserve(chosen.size());
  std::size_t base = 0, next = 0;
  for (const auto& b : blocks) {
    const NameScheme names = NameScheme::forward(b.n);
    for (std::size_t m = 0; m < b.mecs.size() && next < chosen.size(); ++m) {
      const std::size_t lo = base + m * b.hyps.size(), hi = lo + b.hyps.size();
      if (chosen[next] >= hi) continue;
      const std::string premise = verbalize_premise(b.mecs[m].ci_set(), b.n, names);
      while (next < chosen.size() && chosen[next] < hi) {
        out.push_back(make_record(b.mecs[m], b.ids[m], b.hyps[chosen[next] - lo], names, premise, opt.semantics));
        ++next;
      }
      if (opt.progress && b.n >= 5 && m % 1000 == 999)
        opt.progress("n=" + std::to_string(b.n) + ": " + std::to_string(m + 1) + "/" + std::to_string(b.mecs.size()) + " classes");
    }
    base += b.size();
  }
  return out;
}

// Recomputes the gold label from the stored class id. Ingested records (mec_id < 0) are skipped.
inline void verify_label(const BenchmarkRecord& r, const std::vector<Mec>& mecs_for_n) {
  if (r.mec_id < 0 || !r.hypothesis) return;
  if (r.mec_id >= static_cast<int>(mecs_for_n.size())) throw ValidationError(r.id + ": mec id out of range");
  if (label(mecs_for_n[static_cast<std::size_t>(r.mec_id)], *r.hypothesis, r.semantics) != r.label)
    throw ValidationError(r.id + ": stored label disagrees with its equivalence class");
}

// JSONL. Fields are a superset of the external benchmark's {input, label}.

inline nlohmann::json to_json(const BenchmarkRecord& r) {
  nlohmann::json j;
  j["id"] = r.id;
  j["n"] = r.n;
  j["mec_id"] = r.mec_id;
  if (r.hypothesis) {
    j["kind"] = kind_name(r.hypothesis->kind);
    j["a"] = r.names.name(r.hypothesis->a);
    j["b"] = r.names.name(r.hypothesis->b);
  }
  j["premise"] = r.premise;
  j["hypothesis"] = r.hypothesis_text;
  j["input"] = "Premise: " + r.premise + "\nHypothesis: " + r.hypothesis_text;
  j["label"] = r.label;
  j["num_variables"] = r.n;
  j["names"] = r.names.names();
  j["name_scheme"] = r.name_scheme;
  j["phrase_book"] = r.phrase_book;
  j["perturbations"] = r.perturbations;
  if (r.semantics == Semantics::Ancestral) j["semantics"] = "ancestral";
  return j;
}

inline BenchmarkRecord record_from_json(const nlohmann::json& j, std::size_t line_no) {
  BenchmarkRecord r;
  try {
    if (j.contains("premise") && j.contains("hypothesis")) {
      r.premise = j.at("premise").get<std::string>();
      r.hypothesis_text = j.at("hypothesis").get<std::string>();
    } else if (j.contains("input")) {
      const std::string in = j.at("input").get<std::string>();
      auto pos = in.rfind("Hypothesis:");
      if (pos == std::string::npos) throw ParseError("input has no 'Hypothesis:' part");
      std::string prem = trim(in.substr(0, pos));
      if (prem.rfind("Premise:", 0) == 0) prem = trim(prem.substr(8));
      r.premise = prem;
      r.hypothesis_text = trim(in.substr(pos + 11));
    } else {
      throw ParseError("record needs premise+hypothesis or input");
    }
    const auto& lab = j.at("label");
    r.label = lab.is_boolean() ? static_cast<int>(lab.get<bool>()) : lab.get<int>();
    if (r.label != 0 && r.label != 1) throw ParseError("label must be 0 or 1");
    r.id = j.contains("id") ? j["id"].get<std::string>() : "ext-" + std::to_string(line_no);
    r.mec_id = j.value("mec_id", -1);
    if (j.contains("names")) r.names = NameScheme(j["names"].get<std::vector<std::string>>());
    r.name_scheme = j.value("name_scheme", std::string(j.contains("names") ? "custom" : "default"));
    r.phrase_book = j.value("phrase_book", std::string("standard"));
    r.perturbations = j.value("perturbations", std::vector<std::string>{});
    const std::string sem = j.value("semantics", std::string("direct_edge"));
    if (sem != "direct_edge" && sem != "ancestral") throw ParseError("semantics must be direct_edge or ancestral");
    r.semantics = sem == "ancestral" ? Semantics::Ancestral : Semantics::DirectEdge;
    if (r.names.empty()) {
      try {
        auto p = parse_premise(r.premise);
        r.names = p.names;
        r.n = p.n;
      } catch (const ParseError&) {
      }
    }
    r.n = j.value("n", j.value("num_variables", r.names.size()));
    if (j.contains("kind") && j.contains("a") && j.contains("b") && !r.names.empty()) {
      r.hypothesis = Hypothesis(parse_kind(j["kind"].get<std::string>()), r.names.index(j["a"].get<std::string>()),
                                r.names.index(j["b"].get<std::string>()));
    } else if (!r.names.empty()) {
      try {
        r.hypothesis = parse_hypothesis(r.hypothesis_text, r.names);
      } catch (const Error&) {
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
  } catch (const Error& e) {
    throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
  }
  return r;
}

inline void write_jsonl(std::ostream& os, const std::vector<BenchmarkRecord>& records) {
  for (const auto& r : records) os << to_json(r).dump() << '\n';
}

inline std::vector<BenchmarkRecord> read_jsonl(std::istream& is) {
  std::vector<BenchmarkRecord> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(is, line)) {
    ++no;
    if (trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("line " + std::to_string(no) + ": " + e.what());
    }
    out.push_back(record_from_json(j, no));
  }
  return out;
}

inline void save_dataset(const std::string& path, const std::vector<BenchmarkRecord>& records) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path);
  write_jsonl(os, records);
}

inline std::vector<BenchmarkRecord> load_dataset(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read " + path);
  return read_jsonl(is);
}

}  // namespace c2c
