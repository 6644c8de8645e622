#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "corr2cause/backends/factory.hpp"
#include "corr2cause/eval/dataset.hpp"
#include "corr2cause/eval/evaluate.hpp"
#include "corr2cause/eval/trace.hpp"
#include "corr2cause/verbalizer.hpp"

using namespace c2c;

namespace {

std::pair<int, int> parse_n_range(const std::string& s) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      int n = std::stoi(s);
      return {n, n};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::logic_error&) {
    throw ArgumentError("--n expects N or LO..HI, got '" + s + "'");
  }
}

std::vector<HypothesisKind> parse_kinds(const std::string& s) {
  std::vector<HypothesisKind> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ','))
    if (!trim(cur).empty()) out.push_back(parse_kind(trim(cur)));
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path);
  os << text;
}

// {"n": 3, "names": [...]?, "statements": [{"x":"A","y":"B","given":["C"]}, ...]} or {"n": 3, "edges": [["A","C"], ...]}
CiSet load_ci_file(const std::string& path, int& n, const NameScheme& names_for_lookup, std::optional<NameScheme>& names_in_file) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  try {
    if (j.contains("names")) names_in_file = NameScheme(j["names"].get<std::vector<std::string>>());
    n = j.contains("n") ? j["n"].get<int>() : (names_in_file ? names_in_file->size() : 0);
    if (n < 1) throw ValidationError("ci file needs n");
    const NameScheme lookup = names_in_file ? *names_in_file : (names_for_lookup.size() == n ? names_for_lookup : NameScheme::forward(n));
    auto var = [&](const nlohmann::json& v) { return v.is_number() ? v.get<int>() : lookup.index(v.get<std::string>()); };
    if (j.contains("edges")) {
      std::vector<std::pair<int, int>> es;
      for (const auto& e : j["edges"]) es.emplace_back(var(e.at(0)), var(e.at(1)));
      auto dag = Dag::try_make(n, es);
      if (!dag) throw ValidationError("ci file edges contain a cycle");
      return implied_ci_set(*dag);
    }
    std::vector<CiStatement> st;
    for (const auto& s : j.at("statements")) {
      Mask z = 0;
      for (const auto& g : s.value("given", nlohmann::json::array())) z |= bit(var(g));
      st.emplace_back(var(s.at("x")), var(s.at("y")), z);
    }
    CiSet ci(std::move(st));
    ci.check_range(n);
    return ci;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

NameScheme names_option(const std::string& opt, int n) {
  if (opt == "default") return NameScheme::forward(n);
  if (opt == "refactored") return NameScheme::refactored(n);
  std::vector<std::string> v;
  for (const auto& l : split_lines(read_file(opt)))
    if (!trim(l).empty()) v.push_back(trim(l));
  NameScheme s(std::move(v));
  if (s.size() != n) throw ValidationError("names file lists " + std::to_string(s.size()) + " names for n=" + std::to_string(n));
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal-discovery benchmark generator and prompt-chain evaluator"};
  app.require_subcommand(1);

  // generate
  std::string g_n = "2..4", g_kinds = "direct_cause,together_cause,common_cause,mediation", g_out;
  std::uint64_t g_seed = 0;
  std::optional<std::size_t> g_sub;
  bool g_large = false, g_collapse = false, g_ancestral = false;
  auto* gen = app.add_subcommand("generate", "Enumerate equivalence classes and write labeled records as JSONL");
  gen->add_option("--n", g_n, "N or LO..HI within 2..6")->capture_default_str();
  gen->add_option("--kinds", g_kinds, "comma-separated hypothesis kinds")->capture_default_str();
  gen->add_option("--out", g_out, "output JSONL")->required();
  gen->add_option("--seed", g_seed, "subsampling seed")->capture_default_str();
  gen->add_option("--subsample", g_sub, "keep K records chosen at random");
  gen->add_flag("--allow-large", g_large, "permit full n=5 and any n=6 generation");
  gen->add_flag("--collapse-isomorphic", g_collapse, "keep one class per variable-relabelling orbit");
  gen->add_flag("--ancestral", g_ancestral, "label witness kinds by directed paths instead of direct edges");

  // verbalize
  std::string v_ci, v_names = "default", v_hyp;
  auto* verb = app.add_subcommand("verbalize", "Render a premise from a CI-statement (or edge list) JSON file");
  verb->add_option("--ci-file", v_ci, "JSON file with statements or edges")->required();
  verb->add_option("--names", v_names, "default | refactored | path to a file with one name per line")->capture_default_str();
  verb->add_option("--hypothesis", v_hyp, "also render KIND:X:Y, e.g. direct_cause:A:C");

  // perturb
  std::string p_in, p_out, p_book = "paraphrase";
  bool p_ref = false, p_para = false;
  auto* pert = app.add_subcommand("perturb", "Rename variables or paraphrase hypotheses in a dataset");
  pert->add_option("--in", p_in)->required();
  pert->add_option("--out", p_out)->required();
  auto* ref_flag = pert->add_flag("--refactor", p_ref, "rename A,B,C,... to Z,Y,X,...");
  auto* para_flag = pert->add_flag("--paraphrase", p_para, "re-render hypotheses with another phrase book");
  pert->add_option("--phrase-book", p_book, "phrase book used by --paraphrase")->capture_default_str();
  ref_flag->excludes(para_flag);

  // evaluate
  std::string e_in, e_strategy = "pc_subq", e_backend, e_config, e_traces, e_report;
  std::optional<int> e_conc;
  std::optional<std::size_t> e_limit;
  auto* ev = app.add_subcommand("evaluate", "Run a strategy over a dataset and report F1/accuracy");
  ev->add_option("--in", e_in)->required();
  ev->add_option("--strategy", e_strategy)->capture_default_str();
  ev->add_option("--backend", e_backend, "symbolic | remote (overrides the config file)");
  ev->add_option("--config", e_config, "TOML config");
  ev->add_option("--traces", e_traces, "JSONL trace log");
  ev->add_option("--report", e_report, "JSON report");
  ev->add_option("--concurrency", e_conc, "records in flight");
  ev->add_option("--limit", e_limit, "evaluate only the first K records");

  // trace
  std::string t_traces, t_id, t_mode = "propagated";
  bool t_json = false;
  auto* tr = app.add_subcommand("trace", "Compare one recorded chain step by step with the oracle");
  tr->add_option("--traces", t_traces)->required();
  tr->add_option("--id", t_id)->required();
  tr->add_option("--mode", t_mode, "strict | propagated")->capture_default_str();
  tr->add_flag("--json", t_json, "print the report as JSON");

  // healthcheck
  std::string h_backend, h_config;
  auto* hc = app.add_subcommand("healthcheck", "Send one minimal request to the configured backend");
  hc->add_option("--backend", h_backend);
  hc->add_option("--config", h_config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  auto load_config = [](const std::string& path, const std::string& kind) {
    BackendConfig cfg = path.empty() ? BackendConfig{} : BackendConfig::load(path);
    if (!kind.empty()) cfg.kind = kind;
    cfg.validate();
    return cfg;
  };
  auto logger = [](const std::string& m) { std::cerr << "[backend] " << m << '\n'; };

  try {
    if (*gen) {
      DatasetOptions o;
      std::tie(o.n_min, o.n_max) = parse_n_range(g_n);
      o.kinds = parse_kinds(g_kinds);
      o.seed = g_seed;
      o.subsample = g_sub;
      o.allow_large = g_large;
      o.collapse_isomorphic = g_collapse;
      if (g_ancestral) o.semantics = Semantics::Ancestral;
      o.progress = [](const std::string& m) { std::cerr << m << '\n'; };
      auto records = generate_dataset(o);
      save_dataset(g_out, records);
      long pos = 0;
      for (const auto& r : records) pos += r.label;
      std::cout << "wrote " << records.size() << " records (" << pos << " positive) to " << g_out << '\n';
    } else if (*verb) {
      int n = 0;
      std::optional<NameScheme> in_file;
      CiSet ci = load_ci_file(v_ci, n, NameScheme{}, in_file);
      NameScheme names = in_file && v_names == "default" ? *in_file : names_option(v_names, n);
      std::cout << "Premise: " << verbalize_premise(ci, n, names) << '\n';
      if (!v_hyp.empty()) {
        auto p1 = v_hyp.find(':'), p2 = v_hyp.rfind(':');
        if (p1 == std::string::npos || p1 == p2) throw ArgumentError("--hypothesis expects KIND:X:Y");
        const NameScheme& lookup = in_file ? *in_file : NameScheme::forward(n);
        Hypothesis h(parse_kind(v_hyp.substr(0, p1)), lookup.index(v_hyp.substr(p1 + 1, p2 - p1 - 1)),
                     lookup.index(v_hyp.substr(p2 + 1)));
        std::cout << "Hypothesis: " << verbalize_hypothesis(h, names) << '\n';
      }
    } else if (*pert) {
      if (!p_ref && !p_para) throw ArgumentError("perturb needs --refactor or --paraphrase");
      auto records = load_dataset(p_in);
      for (auto& r : records) {
        if (p_ref) r = refactor_names(r, NameScheme::refactored(r.n));
        else r = paraphrase(r, PhraseBook::by_name(p_book));
      }
      save_dataset(p_out, records);
      std::cout << "wrote " << records.size() << " records to " << p_out << '\n';
    } else if (*ev) {
      const Strategy strategy = parse_strategy(e_strategy);
      auto records = load_dataset(e_in);
      if (e_limit && *e_limit < records.size()) records.resize(*e_limit);
      BackendConfig cfg = load_config(e_config, e_backend);
      std::unique_ptr<Backend> backend;
      if (needs_backend(strategy)) backend = make_backend(cfg, logger);
      EvalOptions opt;
      opt.concurrency = e_conc.value_or(cfg.concurrency);
      opt.chain = {cfg.max_tokens, cfg.temperature};
      std::size_t step = std::max<std::size_t>(1, records.size() / 10);
      opt.progress = [step](std::size_t d, std::size_t t) {
        if (d % step == 0 || d == t) std::cerr << "evaluated " << d << "/" << t << '\n';
      };
      std::ofstream traces;
      if (!e_traces.empty()) {
        traces.open(e_traces, std::ios::binary);
        if (!traces) throw ConfigError("cannot write " + e_traces);
      }
      TraceSink sink(e_traces.empty() ? nullptr : &traces);
      auto res = evaluate(records, strategy, backend.get(), opt, &sink);
      auto report = report_json(res, strategy, backend ? backend->name() : "none", records.size());
      if (!e_report.empty()) write_text(e_report, report.dump(2) + "\n");
      const auto& o = res.metrics.overall;
      std::printf("records=%zu f1=%.4f accuracy=%.4f tp=%ld fp=%ld tn=%ld fn=%ld abstained=%ld\n", records.size(), o.f1(),
                  o.accuracy(), o.tp, o.fp, o.tn, o.fn, res.metrics.abstained);
    } else if (*tr) {
      auto rep = trace_report(load_traces(t_traces), t_id, parse_trace_mode(t_mode));
      if (t_json) std::cout << to_json(rep).dump(2) << '\n';
      else std::cout << render_report(rep);
    } else if (*hc) {
      auto backend = make_backend(load_config(h_config, h_backend), logger);
      auto st = backend->healthcheck();
      std::cout << backend->name() << ": " << (st.ok ? "ok" : "FAILED") << (st.message.empty() || st.ok ? "" : " - " + st.message) << '\n';
      return st.ok ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
