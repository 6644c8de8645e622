// Prints one [PASS]/[FAIL] line per acceptance criterion; exits non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "corr2cause/backends/factory.hpp"
#include "corr2cause/eval/dataset.hpp"
#include "corr2cause/eval/evaluate.hpp"
#include "corr2cause/eval/trace.hpp"
#include "fixtures/tracing_case.hpp"
#include "oracles/oracles.hpp"

using namespace c2c;

namespace {

struct Check {
  std::vector<std::string> problems;
  std::vector<std::string> notes;
  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(prec);
  os << v;
  return os.str();
}

std::string squash(const std::string& s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

void exactness(Check& c) {
  SymbolicBackend sym;
  EvalOptions opt;
  opt.concurrency = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  auto t0 = std::chrono::steady_clock::now();
  DatasetOptions d;
  d.n_min = 2;
  d.n_max = 4;
  auto small = generate_dataset(d);
  auto r = evaluate(small, Strategy::PcSubQ, &sym, opt);
  const double secs = seconds_since(t0);
  const auto& o = r.metrics.overall;
  c.expect(o.f1() == 1.0 && o.accuracy() == 1.0, "n=2..4: f1=" + fmt(o.f1()) + " accuracy=" + fmt(o.accuracy()));
  c.expect(secs < 120, "n=2..4 took " + fmt(secs, 1) + "s");
  c.note("n=2..4: " + std::to_string(small.size()) + " records, f1=" + fmt(o.f1()) + ", accuracy=" + fmt(o.accuracy()) + ", " +
         fmt(secs, 1) + "s");

  t0 = std::chrono::steady_clock::now();
  DatasetOptions d5;
  d5.n_min = d5.n_max = 5;
  d5.subsample = 500;
  d5.seed = 7;
  auto five = generate_dataset(d5);
  auto r5 = evaluate(five, Strategy::PcSubQ, &sym, opt);
  const double secs5 = seconds_since(t0);
  const auto& o5 = r5.metrics.overall;
  c.expect(five.size() == 500, "n=5 subsample has " + std::to_string(five.size()) + " records");
  c.expect(o5.f1() == 1.0 && o5.accuracy() == 1.0, "n=5: f1=" + fmt(o5.f1()) + " accuracy=" + fmt(o5.accuracy()));
  c.expect(secs5 < 300, "n=5 took " + fmt(secs5, 1) + "s");
  c.note("n=5 subsample (seed 7): 500 records, " + std::to_string(o5.tp + o5.fn) + " positive, f1=" + fmt(o5.f1()) + ", " +
         fmt(secs5, 1) + "s");
}

void dsep(Check& c) {
  long queries = 0, bad = 0;
  for (int n = 2; n <= 4; ++n)
    for_each_dag(n, [&](const Dag& g) {
      for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
          const Mask rest = g.all() & ~(bit(x) | bit(y));
          for (Mask z = 0; z <= rest; ++z) {
            if (z & ~rest) continue;
            ++queries;
            bad += d_separated(g, x, y, z) != oracle::d_separated(g, x, y, z);
          }
        }
    });
  std::mt19937_64 rng(20240);
  for (int i = 0; i < 10000; ++i) {
    Dag g = oracle::random_dag(5, rng);
    const int x = static_cast<int>(rng() % 5);
    int y = static_cast<int>(rng() % 4);
    if (y >= x) ++y;
    const Mask z = oracle::random_subset(g.all() & ~(bit(x) | bit(y)), rng);
    ++queries;
    bad += d_separated(g, x, y, z) != oracle::d_separated(g, x, y, z);
  }
  c.expect(bad == 0, std::to_string(bad) + " disagreements");
  c.note(std::to_string(queries) + " queries (exhaustive n<=4, 10000 random at n=5), " + std::to_string(bad) + " disagreements");
}

void mec(Check& c) {
  for (int n = 2; n <= 4; ++n) {
    std::set<std::set<std::uint64_t>> by_sig;
    for (const auto& m : enumerate_mecs(n)) by_sig.insert({m.member_codes().begin(), m.member_codes().end()});
    const auto by_ci = oracle::cluster_by_ci(enumerate_dags(n));
    c.expect(by_sig == by_ci, "n=" + std::to_string(n) + ": signature and CI partitions differ");
    c.note("n=" + std::to_string(n) + ": " + std::to_string(by_sig.size()) + " classes by signature, " +
           std::to_string(by_ci.size()) + " by CI relation");
  }
  const std::uint64_t expected[] = {0, 1, 3, 25, 543, 29281, 3781503};
  std::string counts;
  for (int n = 2; n <= 6; ++n) {
    const auto got = count_dags(n);
    c.expect(got == expected[n], "count_dags(" + std::to_string(n) + ") = " + std::to_string(got));
    c.expect(static_cast<long long>(got) == oracle::robinson(n), "Robinson disagrees at n=" + std::to_string(n));
    counts += (counts.empty() ? "" : "/") + std::to_string(got);
  }
  c.note("DAG counts n=2..6: " + counts + " (enumerated, equal to the Robinson recurrence)");
}

void fidelity(Check& c) {
  int shots = 0;
  std::vector<std::string> final_step_diffs;
  for (const auto& spec : pc_subq_specs())
    for (std::size_t i = 0; i < spec.library.shots.size(); ++i) {
      const auto& s = spec.library.shots[i];
      std::string got;
      try {
        got = SymbolicBackend::solve(s.question).answer;
      } catch (const Error& e) {
        got = std::string("error: ") + e.what();
      }
      const std::string where = "SubQ" + std::to_string(spec.index) + " shot " + std::to_string(i + 1);
      if (spec.index == 8) {
        // the final-step exemplars are reported, not scored
        if (squash(got) != squash(s.answer)) final_step_diffs.push_back(where + " exemplar " + s.answer + ", oracle " + got);
        continue;
      }
      c.expect(squash(got) == squash(s.answer), where + ": got '" + got + "'");
      ++shots;
    }
  c.note(std::to_string(shots) + " SubQ1-7 exemplar answers reproduced");
  for (const auto& d : final_step_diffs) c.note("SubQ8 divergence, class-based label kept: " + d);

  SymbolicBackend sym;
  BenchmarkRecord collider;
  collider.n = 3;
  collider.names = NameScheme::forward(3);
  collider.premise =
      "Suppose there is a closed system of 3 variables, A, B and C. All the statistical relations among these 3 variables "
      "are as follows: A correlates with C. B correlates with C. However, A is independent of B.";
  collider.hypothesis_text = "A directly affects C.";
  collider.label = 1;
  auto t = run_chain(collider, sym);
  c.expect(!t.abstained && t.predicted == 1, "collider record predicted " + std::to_string(t.predicted));

  auto chain5 = run_chain(fixture::chain5_record(), sym);
  c.expect(chain5.steps.size() == 8 && chain5.steps[6].answer == "(A,B), (A,E), (B,C), (C,D)",
           "five-variable SubQ7 graph: " + (chain5.steps.size() > 6 ? chain5.steps[6].answer : std::string("missing")));
  c.expect(chain5.predicted == 0, "five-variable final label " + std::to_string(chain5.predicted));
  auto rep = trace_report(fixture::erroneous_final_step_trace(), TraceMode::Strict);
  c.expect(rep.first_mismatch == 8, "flipped final answer not isolated to SubQ8");

  auto stories = load_dataset(std::string(C2C_SAMPLES_DIR) + "/natural_stories.jsonl");
  std::string labels;
  for (const auto& r : stories) {
    auto st = run_chain(r, sym);
    c.expect(!st.abstained && st.predicted == r.label, r.id + ": predicted " + std::to_string(st.predicted));
    labels += (labels.empty() ? "" : ", ") + r.id + "=" + std::to_string(st.predicted);
  }
  c.expect(stories.size() == 2, "expected two stories");
  c.note("collider record -> 1; five-variable graph " + chain5.steps[6].answer + " -> " + std::to_string(chain5.predicted) +
         "; stories: " + labels);
}

void robustness(Check& c) {
  DatasetOptions d;
  d.n_min = 2;
  d.n_max = 4;
  auto base = generate_dataset(d);
  std::vector<BenchmarkRecord> zyx, para;
  for (const auto& r : base) {
    zyx.push_back(refactor_names(r, NameScheme::refactored(r.n)));
    para.push_back(paraphrase(r, PhraseBook::paraphrased()));
  }
  // through JSONL, as the CLI does
  std::stringstream io;
  write_jsonl(io, zyx);
  zyx = read_jsonl(io);
  SymbolicBackend sym;
  EvalOptions opt;
  opt.concurrency = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto a = evaluate(base, Strategy::PcSubQ, &sym, opt);
  auto b = evaluate(zyx, Strategy::PcSubQ, &sym, opt);
  auto p = evaluate(para, Strategy::PcSubQ, &sym, opt);
  long gold_changes = 0;
  for (std::size_t i = 0; i < base.size(); ++i) gold_changes += (zyx[i].label != base[i].label) + (para[i].label != base[i].label);
  c.expect(a.predictions == b.predictions, "refactored predictions differ");
  c.expect(a.predictions == p.predictions, "paraphrased predictions differ");
  c.expect(gold_changes == 0, std::to_string(gold_changes) + " gold labels changed");
  c.note(std::to_string(base.size()) + " records; predictions identical under refactor and paraphrase; gold labels unchanged");
}

void round_trips(Check& c) {
  long premises = 0, bad_p = 0;
  for (int n = 2; n <= 4; ++n)
    for (const auto& m : enumerate_mecs(n))
      for (const auto& names : {NameScheme::forward(n), NameScheme::refactored(n)}) {
        ++premises;
        try {
          auto p = parse_premise(verbalize_premise(m.ci_set(), n, names));
          bad_p += !(p.ci == m.ci_set() && p.n == n && p.names == names);
        } catch (const Error&) {
          ++bad_p;
        }
      }
  std::mt19937_64 rng(6);
  long graphs = 0, bad_g = 0;
  while (graphs < 10000) {
    const int n = 2 + static_cast<int>(rng() % 5);
    Pdag g = oracle::random_pdag(n, rng);
    if (g.empty()) continue;
    ++graphs;
    const auto names = (rng() & 1) ? NameScheme::forward(n) : NameScheme::refactored(n);
    try {
      bad_g += !(parse_graph_answer(g.render(names), &names).graph == g);
    } catch (const Error&) {
      ++bad_g;
    }
  }
  c.expect(bad_p == 0, std::to_string(bad_p) + " premise round-trip failures");
  c.expect(bad_g == 0, std::to_string(bad_g) + " graph round-trip failures");
  c.note(std::to_string(premises) + " premises and " + std::to_string(graphs) + " graphs (n<=6) round-tripped, " +
         std::to_string(bad_p + bad_g) + " failures");
}

void metrics(Check& c) {
  std::vector<BenchmarkRecord> synth(10000);
  for (std::size_t i = 0; i < synth.size(); ++i) {
    synth[i].id = "s" + std::to_string(i);
    synth[i].n = 3;
    synth[i].label = i < 1523 ? 1 : 0;
  }
  auto r = evaluate(synth, Strategy::AlwaysMajority, nullptr);
  const double acc = r.metrics.overall.accuracy();
  c.expect(std::abs(acc - 0.8477) <= 1e-4, "synthetic accuracy " + fmt(acc));
  c.expect(r.metrics.overall.f1() == 0.0, "synthetic f1 " + fmt(r.metrics.overall.f1()));

  auto ext = load_dataset(std::string(C2C_SAMPLES_DIR) + "/external_style.jsonl");
  auto re = evaluate(ext, Strategy::AlwaysMajority, nullptr);
  double pos = 0;
  for (const auto& x : ext) pos += x.label;
  pos /= static_cast<double>(ext.size());
  c.expect(re.metrics.overall.f1() == 0.0 && std::abs(re.metrics.overall.accuracy() - (1 - pos)) < 1e-12,
           "ingested split: accuracy " + fmt(re.metrics.overall.accuracy()));
  c.note("synthetic 15.23% positives: accuracy " + fmt(acc) + ", f1 0; ingested sample split (" + std::to_string(ext.size()) +
         " records): accuracy " + fmt(re.metrics.overall.accuracy()) + " = 1 - positive rate");
}

// Live-model scores need the commercial models. What is checked here is that a remote backend yields a report
// with the same structure as the symbolic one; the endpoint is a local server answering through the symbolic solver.
void remote_contract(Check& c) {
  httplib::Server srv;
  srv.Post("/v1/chat/completions", [](const httplib::Request& req, httplib::Response& res) {
    auto body = nlohmann::json::parse(req.body);
    std::string text;
    try {
      text = SymbolicBackend::respond(body["messages"][0]["content"].get<std::string>());
    } catch (const Error& e) {
      text = e.what();
    }
    res.set_content(nlohmann::json{{"choices", {{{"message", {{"role", "assistant"}, {"content", text}}}}}}}.dump(),
                    "application/json");
  });
  const int port = srv.bind_to_any_port("127.0.0.1");
  std::thread th([&] { srv.listen_after_bind(); });
  srv.wait_until_ready();

  setenv("C2C_ACCEPTANCE_KEY", "local", 1);
  BackendConfig cfg;
  cfg.kind = "remote";
  cfg.endpoint = "http://127.0.0.1:" + std::to_string(port);
  cfg.model = "local-symbolic";
  cfg.api_key_env = "C2C_ACCEPTANCE_KEY";
  auto remote = make_backend(cfg);
  SymbolicBackend sym;

  DatasetOptions d;
  d.n_min = d.n_max = 3;
  auto rs = generate_dataset(d);
  rs.resize(40);
  auto a = evaluate(rs, Strategy::PcSubQ, &sym);
  auto b = evaluate(rs, Strategy::PcSubQ, remote.get());
  srv.stop();
  th.join();

  std::function<std::set<std::string>(const nlohmann::json&, const std::string&)> keys = [&](const nlohmann::json& j,
                                                                                             const std::string& pre) {
    std::set<std::string> out;
    if (!j.is_object()) return out;
    for (auto it = j.begin(); it != j.end(); ++it) {
      out.insert(pre + it.key());
      for (auto& k : keys(it.value(), pre + it.key() + ".")) out.insert(k);
    }
    return out;
  };
  c.expect(keys(report_json(a, Strategy::PcSubQ, sym.name(), rs.size()), "") ==
               keys(report_json(b, Strategy::PcSubQ, remote->name(), rs.size()), ""),
           "remote report structure differs");
  c.expect(a.predictions == b.predictions, "remote round trip changed predictions");
  c.note("live LLM scores are NOT reproduced here: they require access to the commercial models");
  c.note("checked instead: a remote backend (local OpenAI-style endpoint) yields the same report structure; criteria 1-7 ran without network access");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"oracle end-to-end exactness", exactness},
      {"d-separation soundness", dsep},
      {"MEC characterization and DAG counts", mec},
      {"transcript fidelity", fidelity},
      {"robustness invariance", robustness},
      {"round trips", round_trips},
      {"majority-class metrics", metrics},
      {"live-model scores (not reproducible offline)", remote_contract},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.problems.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = c.problems.empty();
    failed += !ok;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << i + 1 << ". " << criteria[i].first << " (" << fmt(seconds_since(t0), 1) << "s)\n";
    for (const auto& n : c.notes) std::cout << "       " << n << "\n";
    for (std::size_t k = 0; k < c.problems.size() && k < 10; ++k) std::cout << "       problem: " << c.problems[k] << "\n";
    std::cout.flush();
  }
  return failed == 0 ? 0 : 1;
}
