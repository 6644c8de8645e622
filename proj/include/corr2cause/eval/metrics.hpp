#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "corr2cause/errors.hpp"
#include "corr2cause/record.hpp"

namespace c2c {

struct Confusion {
  long tp = 0, fp = 0, tn = 0, fn = 0;

  long total() const { return tp + fp + tn + fn; }
  double f1() const {
    const long d = 2 * tp + fp + fn;
    return d == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(d);
  }
  double accuracy() const { return total() == 0 ? 0.0 : static_cast<double>(tp + tn) / static_cast<double>(total()); }

  void add(int gold, int pred) {
    if ((gold != 0 && gold != 1) || (pred != 0 && pred != 1)) throw ArgumentError("labels must be 0 or 1");
    if (gold == 1) (pred == 1 ? tp : fn)++;
    else (pred == 1 ? fp : tn)++;
  }

  Confusion& operator+=(const Confusion& o) {
    tp += o.tp, fp += o.fp, tn += o.tn, fn += o.fn;
    return *this;
  }
  bool operator==(const Confusion&) const = default;
};

struct Metrics {
  Confusion overall;
  std::map<std::string, Confusion> by_kind;
  std::map<int, Confusion> by_n;
  long abstained = 0;
};

inline Confusion compute_metrics(const std::vector<int>& golds, const std::vector<int>& preds) {
  if (golds.size() != preds.size())
    throw ArgumentError("golds and preds differ in length (" + std::to_string(golds.size()) + " vs " +
                        std::to_string(preds.size()) + ")");
  Confusion c;
  for (std::size_t i = 0; i < golds.size(); ++i) c.add(golds[i], preds[i]);
  return c;
}

inline std::string partition_kind(const BenchmarkRecord& r) {
  return r.hypothesis ? std::string(kind_name(r.hypothesis->kind)) : "unknown";
}

inline Metrics compute_partitioned(const std::vector<BenchmarkRecord>& records, const std::vector<int>& preds,
                                   const std::vector<bool>& abstained = {}) {
  if (records.size() != preds.size()) throw ArgumentError("records and preds differ in length");
  Metrics m;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    m.overall.add(r.label, preds[i]);
    m.by_kind[partition_kind(r)].add(r.label, preds[i]);
    m.by_n[r.n].add(r.label, preds[i]);
    if (i < abstained.size() && abstained[i]) ++m.abstained;
  }
  return m;
}

inline nlohmann::json to_json(const Confusion& c) {
  return {{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn}, {"total", c.total()}, {"f1", c.f1()}, {"accuracy", c.accuracy()}};
}

inline nlohmann::json to_json(const Metrics& m) {
  nlohmann::json j;
  j["overall"] = to_json(m.overall);
  j["by_kind"] = nlohmann::json::object();
  for (const auto& [k, c] : m.by_kind) j["by_kind"][k] = to_json(c);
  j["by_n"] = nlohmann::json::object();
  for (const auto& [n, c] : m.by_n) j["by_n"][std::to_string(n)] = to_json(c);
  j["abstained"] = m.abstained;
  return j;
}

}  // namespace c2c
