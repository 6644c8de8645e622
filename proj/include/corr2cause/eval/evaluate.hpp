#pragma once

#include <atomic>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "corr2cause/chain/chain.hpp"
#include "corr2cause/eval/metrics.hpp"

namespace c2c {

inline nlohmann::json to_json(const ChainTrace& t) {
  nlohmann::json j;
  j["id"] = t.record_id;
  j["strategy"] = t.strategy;
  j["premise"] = t.premise;
  j["hypothesis"] = t.hypothesis;
  j["names"] = t.names;
  j["subq"] = nlohmann::json::array();
  for (const auto& s : t.steps) {
    nlohmann::json js{{"index", s.index}, {"prompt", s.prompt}, {"reasoning", s.reasoning}, {"answer", s.answer},
                      {"parsed", s.parsed}};
    if (s.error) js["error"] = *s.error;
    js["calls"] = nlohmann::json::array();
    for (const auto& c : s.calls)
      js["calls"].push_back({{"latency_ms", c.latency_ms}, {"prompt_tokens", c.prompt_tokens}, {"completion_tokens", c.completion_tokens}});
    j["subq"].push_back(std::move(js));
  }
  j["predicted"] = t.predicted;
  j["gold"] = t.gold;
  j["abstained"] = t.abstained;
  if (t.error) j["error"] = *t.error;
  return j;
}

inline ChainTrace trace_from_json(const nlohmann::json& j) {
  ChainTrace t;
  t.record_id = j.at("id").get<std::string>();
  t.strategy = j.value("strategy", std::string("pc_subq"));
  t.premise = j.value("premise", std::string());
  t.hypothesis = j.value("hypothesis", std::string());
  t.names = j.value("names", std::vector<std::string>{});
  int k = 0;
  for (const auto& js : j.at("subq")) {
    TraceStep s;
    s.index = js.value("index", ++k);
    k = s.index;
    s.prompt = js.value("prompt", std::string());
    s.reasoning = js.value("reasoning", std::string());
    s.answer = js.value("answer", std::string());
    s.parsed = js.value("parsed", std::string());
    if (js.contains("error")) s.error = js["error"].get<std::string>();
    if (js.contains("calls"))
      for (const auto& c : js["calls"])
        s.calls.push_back({c.value("latency_ms", 0.0), c.value("prompt_tokens", -1), c.value("completion_tokens", -1)});
    t.steps.push_back(std::move(s));
  }
  t.predicted = j.value("predicted", 0);
  t.gold = j.value("gold", -1);
  t.abstained = j.value("abstained", false);
  if (j.contains("error")) t.error = j["error"].get<std::string>();
  return t;
}

inline std::vector<ChainTrace> load_traces(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read " + path);
  std::vector<ChainTrace> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(is, line)) {
    ++no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(trace_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("trace line " + std::to_string(no) + ": " + e.what());
    }
  }
  return out;
}

// Serialises trace writes from worker threads; one JSON object per line.
class TraceSink {
 public:
  explicit TraceSink(std::ostream* os) : os_(os) {}

  void write(const ChainTrace& t) {
    if (!os_) return;
    const std::string line = to_json(t).dump();
    std::lock_guard lk(mu_);
    *os_ << line << '\n';
  }

 private:
  std::ostream* os_;
  std::mutex mu_;
};

struct EvalOptions {
  int concurrency = 4;
  ChainOptions chain;
  std::function<void(std::size_t done, std::size_t total)> progress;
};

struct EvalResult {
  Metrics metrics;
  std::vector<int> predictions;
  std::vector<bool> abstained;
  std::vector<std::string> errors;  // per record, empty when fine
};

// Runs every record through the strategy. Per-record failures are scored as abstentions, never fatal.
inline EvalResult evaluate(const std::vector<BenchmarkRecord>& records, Strategy strategy, Backend* backend,
                           const EvalOptions& opt = {}, TraceSink* sink = nullptr) {
  if (needs_backend(strategy) && !backend) throw ArgumentError(std::string(strategy_name(strategy)) + " needs a backend");
  if (opt.concurrency < 1) throw ArgumentError("concurrency must be >= 1");
  EvalResult res;
  res.predictions.assign(records.size(), 0);
  res.abstained.assign(records.size(), false);
  res.errors.assign(records.size(), "");

  std::atomic<std::size_t> next{0}, done{0};
  std::mutex progress_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= records.size()) return;
      ChainTrace t;
      try {
        t = run_strategy(strategy, records[i], backend, opt.chain);
      } catch (const std::exception& e) {
        t = new_trace(records[i], strategy);
        t.abstained = true;
        t.error = e.what();
      }
      res.predictions[i] = t.predicted;
      res.abstained[i] = t.abstained;
      if (t.error) res.errors[i] = *t.error;
      if (sink) sink->write(t);
      const std::size_t d = done.fetch_add(1) + 1;
      if (opt.progress) {
        std::lock_guard lk(progress_mu);
        opt.progress(d, records.size());
      }
    }
  };
  const std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(opt.concurrency), std::max<std::size_t>(1, records.size()));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < nthreads; ++k) pool.emplace_back(worker);
  }
  res.metrics = compute_partitioned(records, res.predictions, res.abstained);
  return res;
}

inline nlohmann::json report_json(const EvalResult& r, Strategy s, const std::string& backend_name, std::size_t records) {
  nlohmann::json j = to_json(r.metrics);
  j["strategy"] = strategy_name(s);
  j["backend"] = backend_name;
  j["records"] = records;
  return j;
}

}  // namespace c2c
