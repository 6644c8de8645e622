#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "corr2cause/hypothesis.hpp"
#include "corr2cause/names.hpp"

namespace c2c {

struct BenchmarkRecord {
  std::string id;
  int n = 0;
  int mec_id = -1;  // index into the sorted class list for n; -1 for ingested records
  std::optional<Hypothesis> hypothesis;
  std::string premise;
  std::string hypothesis_text;
  int label = 0;
  NameScheme names;
  std::string name_scheme = "default";  // default | refactored | custom
  std::string phrase_book = "standard";
  Semantics semantics = Semantics::DirectEdge;  // how the gold label reads the witness kinds
  std::vector<std::string> perturbations;
};

inline std::string record_id(int n, int mec_id, const Hypothesis& h, const NameScheme& names) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "n%d-m%04d-", n, mec_id);
  return std::string(buf) + std::string(kind_name(h.kind)) + "-" + names.name(h.a) + "-" + names.name(h.b);
}

}  // namespace c2c
