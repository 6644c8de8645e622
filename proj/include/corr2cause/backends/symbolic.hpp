#pragma once

#include <algorithm>
#include <cctype>
#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corr2cause/answer_parser.hpp"
#include "corr2cause/backends/backend.hpp"
#include "corr2cause/chain/baselines.hpp"
#include "corr2cause/chain/subq.hpp"
#include "corr2cause/errors.hpp"
#include "corr2cause/hypothesis.hpp"
#include "corr2cause/pc_engine.hpp"
#include "corr2cause/verbalizer.hpp"

namespace c2c {

struct SymbolicAnswer {
  std::string reasoning;
  std::string answer;
};

namespace symbolic {

inline std::string var_list(const NameScheme& names, const std::vector<int>& vars) {
  std::vector<std::string> v;
  for (int i : vars) v.push_back(names.name(i));
  return join(v, names.compact() ? "," : ", ");
}

inline std::string edge_str(const Edge& e, const NameScheme& names) { return Pdag::render_edge(e, names); }

inline std::string pair_str(int x, int y, const NameScheme& names) {
  return "(" + names.name(x) + (names.compact() ? "," : ", ") + names.name(y) + ")";
}

inline std::string arrow(int x, int y, const NameScheme& names) { return names.name(x) + " -> " + names.name(y); }

inline std::string path_str(const Path2& p, const NameScheme& names) { return render_paths({p}, names); }

inline std::string strip_period(std::string s) {
  s = trim(s);
  while (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

// One scheme covering every name mentioned in the inputs; single capitals fill A..max, others keep first appearance.
inline NameScheme infer_names(const std::vector<std::string>& raw) {
  std::vector<std::string> seen;
  for (const auto& r : raw) {
    bool dup = false;
    for (const auto& s : seen)
      if (iequals(s, r)) dup = true;
    if (!dup) seen.push_back(r);
  }
  const bool letters = std::all_of(seen.begin(), seen.end(), [](const std::string& s) {
    return s.size() == 1 && std::isupper(static_cast<unsigned char>(s[0]));
  });
  if (letters) {
    char hi = 'A';
    for (const auto& s : seen) hi = std::max(hi, s[0]);
    std::vector<std::string> full;
    for (char c = 'A'; c <= hi; ++c) full.emplace_back(1, c);
    return NameScheme(full);
  }
  return NameScheme(seen);
}

inline std::vector<std::string> graph_names(std::string_view text) {
  std::vector<std::string> out;
  auto t = parse_edge_tokens(text);
  std::vector<bool> used(static_cast<std::size_t>(t.names.size()));
  for (const auto& e : t.edges) used[e.a] = used[e.b] = true;
  // letter schemes are padded to A..max; only names that actually occur are reported
  for (int i = 0; i < t.names.size(); ++i)
    if (used[i]) out.push_back(t.names.name(i));
  return out;
}

inline std::vector<std::string> path_names(std::string_view text) {
  std::vector<std::string> out;
  auto p = parse_paths_answer(text);
  for (const auto& q : p.paths)
    for (int v : {q.x, q.z, q.y}) out.push_back(p.names.name(v));
  return out;
}

inline std::string set_of(const Pdag& g, const NameScheme& names) { return "{" + g.render(names) + "}"; }

inline SymbolicAnswer subq1(const std::string& premise) {
  auto p = parse_premise(premise);
  Pdag g = initial_complete_graph(p.n);
  std::vector<int> all(static_cast<std::size_t>(p.n));
  for (int i = 0; i < p.n; ++i) all[i] = i;
  const std::string rendered = render_graph(g, p.names);
  return {"Since our variables are " + var_list(p.names, all) + " => the initial fully connected undirected graph is " +
              rendered + ".",
          rendered};
}

inline SymbolicAnswer subq2(const std::string& premise, const std::string& ans1) {
  auto p = parse_premise(premise);
  Pdag g = parse_graph_answer(ans1, &p.names).graph;
  std::string r = "1. We start with the given fully connected graph: " + render_graph(g, p.names) + ".\n" +
                  "2. We then check all conditional independencies and remove edges appropriately. In our case:";
  if (p.statements.empty()) {
    r += " There are no conditional independencies => no edges are removed => the graph after this step is " +
         render_graph(g, p.names) + ".";
  } else {
    const char* sep = p.statements.size() == 1 ? " " : "\n";
    for (const auto& st : p.statements) {
      g.remove(st.stmt.x, st.stmt.y);
      r += sep + strip_period(st.text) + " => " + pair_str(st.stmt.x, st.stmt.y, p.names) +
           " is removed => the graph after this step is " + render_graph(g, p.names) + ".";
    }
  }
  r += "\n3. The final undirected graph is: " + render_graph(g, p.names) + ".";
  return {r, render_graph(g, p.names)};
}

inline SymbolicAnswer subq3(const std::string& ans2) {
  auto parsed = parse_graph_answer(ans2);
  const Pdag& g = parsed.graph;
  const NameScheme& names = parsed.names;
  if (g.empty()) return {"The undirected graph has no edges, so there are no paths of length 2.", std::string(kNoPaths)};
  std::string r = "We go through all unordered pairs of edges in the undirected graph " + g.render(names) +
                  " above and find paths of length 2:";
  if (g.size() == 1) return {r + "\nSince there is only one edge, there are no paths of length 2.", std::string(kNoPaths)};
  const auto& es = g.edges();
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      const Edge &e1 = es[i], &e2 = es[j];
      int mid = e1.touches(e2.a) ? e2.a : e1.touches(e2.b) ? e2.b : -1;
      r += "\nSince the edges " + edge_str(e1, names) + " and " + edge_str(e2, names);
      if (mid < 0) {
        r += " do not have a common node, they do not form a path of length 2.";
      } else {
        r += " share a common node " + names.name(mid) + " => " +
             path_str(Path2(e1.other(mid), mid, e2.other(mid)), names) + " is a path of length 2.";
      }
    }
  auto paths = paths_length2(g);
  return {r, paths.empty() ? std::string(kNoPaths) : render_paths(paths, names)};
}

inline SymbolicAnswer subq4(const std::string& ans3, const std::string& ans2) {
  std::vector<std::string> raw = graph_names(ans2);
  auto pn = path_names(ans3);
  raw.insert(raw.end(), pn.begin(), pn.end());
  NameScheme names = infer_names(raw);
  auto paths = parse_paths_answer(ans3, &names);
  Pdag g = parse_graph_answer(ans2, &names).graph;
  if (paths.sentinel || paths.paths.empty())
    return {"No paths of length 2 found => No possible v-structures found.", std::string(kNoVStructures)};
  std::string r = "We go through all paths of length 2 and check if there is an edge connecting the start and end of the path "
                  "in the undirected graph: " + g.render(names) + ".";
  std::vector<Path2> cands;
  for (const auto& p : paths.paths) {
    const bool adj = g.adjacent(p.x, p.y);
    r += "\nFor path " + path_str(p, names) + ": " + pair_str(p.x, p.y, names) +
         (adj ? " belongs" : " does not belong") + " to the set of edges " + set_of(g, names) + " => " + path_str(p, names) +
         (adj ? " is not a v-structure." : " is a possible v-structure.");
    if (!adj) cands.push_back(p);
  }
  return {r, cands.empty() ? std::string(kNoVStructures) : render_paths(cands, names)};
}

inline SymbolicAnswer subq5(const std::string& premise, const std::string& ans4) {
  auto p = parse_premise(premise);
  auto cands = parse_paths_answer(ans4, &p.names);
  if (cands.sentinel || cands.paths.empty())
    return {"We first go through all possible v-structures: No possible v-structures found.", std::string(kNoDirected)};
  const NameScheme& names = p.names;
  std::string r = "We first go through all possible v-structures:";
  DirectedEdges all;
  for (const auto& c : cands.paths) {
    const std::string ps = path_str(c, names);
    const std::string x = names.name(c.x), y = names.name(c.y), z = names.name(c.z);
    auto texts = p.texts_for_pair(c.x, c.y);
    r += "\n" + ps + " is a possible v-structure: ";
    if (texts.empty()) {
      r += "there are no conditional independences between " + x + " and " + y + " => " + ps +
           " does not form a v-structure => No directed edges found.";
      continue;
    }
    r += "all conditional independences between " + x + " and " + y + " are: " + join(texts, " ");
    if (in_some_sepset(p.ci, c.x, c.y, c.z)) {
      r += " Since the middle variable " + z + " is in a conditioning set that makes " + x + " and " + y +
           " independent => " + ps + " does not form a v-structure => No directed edges found.";
    } else {
      r += " Since the middle variable " + z + " is not in any conditioning set that makes " + x + " and " + y +
           " independent => " + ps + " form a v-structure => we orient the arrows towards the middle node " + z + ": " +
           arrow(c.x, c.z, names) + ", " + arrow(c.y, c.z, names) + ".";
      all.emplace_back(c.x, c.z);
      all.emplace_back(c.y, c.z);
    }
  }
  DirectedEdges dedup;
  for (auto e : all)
    if (std::find(dedup.begin(), dedup.end(), e) == dedup.end()) dedup.push_back(e);
  if (dedup.size() < all.size())
    r += "\nIn total: " + render_directed(all, names) + ", so removing duplicates: " + render_directed(dedup, names) + ".";
  return {r, dedup.empty() ? std::string(kNoDirected) : render_directed(dedup, names)};
}

inline SymbolicAnswer subq6(const std::string& ans2, const std::string& ans5) {
  auto d0 = parse_directed_edges(ans5);
  std::vector<std::string> raw = graph_names(ans2);
  if (!d0.sentinel) {
    auto more = graph_names(ans5);
    raw.insert(raw.end(), more.begin(), more.end());
  }
  NameScheme names = infer_names(raw);
  Pdag g = parse_graph_answer(ans2, &names).graph;
  if (d0.sentinel || g.empty())
    return {"Since there are no directed edges => the final (undirected) graph remains: " + render_graph(g, names) + ".",
            render_graph(g, names)};
  auto dir = parse_directed_edges(ans5, &names).edges;
  std::vector<std::string> lines;
  Pdag out = g;
  for (const auto& e : g.edges()) {
    auto it = std::find_if(dir.begin(), dir.end(), [&](const auto& d) {
      return std::min(d.first, d.second) == e.lo() && std::max(d.first, d.second) == e.hi();
    });
    if (it != dir.end() && !e.directed) {
      out.orient(it->first, it->second);
      lines.push_back(edge_str(e, names) + " becomes " + arrow(it->first, it->second, names));
    } else {
      lines.push_back(edge_str(e, names) + " remains " + edge_str(e, names));
    }
  }
  for (auto [a, b] : dir)
    if (!g.adjacent(a, b)) lines.push_back(arrow(a, b, names) + " is not an edge of the undirected graph, so it is ignored");
  std::string r = join(lines, "\n") + ".\nSo the final (partially) directed graph is: " + render_graph(out, names) + ".";
  return {r, render_graph(out, names)};
}

inline std::string path_line(const Pdag& g, const Path2& p, const NameScheme& names) {
  std::string s = "For path " + path_str(p, names) + " with middle node " + names.name(p.z) + ": ";
  const auto v = classify_path(g, p);
  const Edge* e1 = g.find(p.x, p.z);
  const Edge* e2 = g.find(p.z, p.y);
  switch (v.kind) {
    case PathCase::NotInGraph:
      return s + "the path is not part of the graph => We do not orient an edge.";
    case PathCase::BothUndirected:
      return s + "Both " + edge_str(*e1, names) + " and " + edge_str(*e2, names) + " are undirected => We do not orient an edge.";
    case PathCase::BothDirected:
      return s + "Both " + edge_str(*e1, names) + " and " + edge_str(*e2, names) + " are directed => No undirected edge to orient.";
    default: break;
  }
  const Edge* d = e1->directed ? e1 : e2;
  const Edge* u = e1->directed ? e2 : e1;
  const std::string ds = edge_str(*d, names), us = edge_str(*u, names);
  switch (v.kind) {
    case PathCase::IntoMiddle:
      return s + ds + " is directed towards the middle node " + names.name(p.z) + " and " + us + " is undirected => We orient " +
             arrow(v.orient->first, v.orient->second, names) + " such that no extra v-structure is created.";
    case PathCase::IntoMiddleShielded:
      return s + ds + " is directed towards the middle node " + names.name(p.z) + " and " + us + " is undirected, but " +
             names.name(p.x) + " and " + names.name(p.y) + " are adjacent => We do not orient an edge.";
    default:
      return s + ds + " is directed towards the outer node " + names.name(d->b) + " and " + us +
             " is undirected => We do not orient an edge.";
  }
}

inline SymbolicAnswer subq7(const std::string& ans6, const std::string& ans3, bool fixpoint = true) {
  auto p0 = parse_paths_answer(ans3);
  std::vector<std::string> raw = graph_names(ans6);
  if (!p0.sentinel) {
    auto more = path_names(ans3);
    raw.insert(raw.end(), more.begin(), more.end());
  }
  NameScheme names = infer_names(raw);
  Pdag g = parse_graph_answer(ans6, &names).graph;
  if (p0.sentinel || p0.paths.empty())
    return {"We go through all paths of length 2 in the graph: No paths of length 2 found => No undirected edge to orient.\n"
            "So, the final graph is: " + render_graph(g, names) + ".",
            render_graph(g, names)};
  auto paths = parse_paths_answer(ans3, &names).paths;
  std::string r = "We go through all paths of length 2 in the graph: " + render_paths(paths, names) +
                  " and possibly orient non directed edges. In our case:";
  Pdag cur = g;
  for (bool first = true;; first = false) {
    Pdag next = cur;
    std::string lines;
    bool changed = false;
    for (const auto& p : paths) {
      lines += "\n" + path_line(cur, p, names);
      auto v = classify_path(cur, p);
      if (v.orient && next.has_undirected(v.orient->first, v.orient->second)) {
        next.orient(v.orient->first, v.orient->second);
        changed = true;
      }
    }
    if (first) r += lines;
    else if (changed)
      r += "\nSome edges were oriented, so we go through the paths again with the graph " + render_graph(cur, names) + ":" + lines;
    cur = std::move(next);
    if (!fixpoint || !changed) break;
  }
  r += "\nSo, the final graph is: " + render_graph(cur, names) + ".";
  return {r, render_graph(cur, names)};
}

inline SymbolicAnswer subq8(const std::string& ans7, const std::string& hypothesis) {
  auto raw_h = match_hypothesis(hypothesis);
  std::vector<std::string> raw = graph_names(ans7);
  raw.push_back(raw_h.a);
  raw.push_back(raw_h.b);
  NameScheme names = infer_names(raw);
  Pdag g = parse_graph_answer(ans7, &names).graph;
  Hypothesis h = parse_hypothesis(hypothesis, names);
  const std::string S = set_of(g, names);
  const std::string H = strip_period(hypothesis);
  const std::string A = names.name(h.a), B = names.name(h.b);

  auto belongs = [&](int u, int v, bool of_edges = false) {
    const std::string set = std::string(of_edges ? "the set of edges " : "the set ") + S;
    if (g.has_directed(u, v)) return "the directed edge " + arrow(u, v, names) + " belongs to " + set;
    std::string s = "the directed edge " + arrow(u, v, names) + " does not belong to " + set;
    if (g.has_undirected(u, v))
      s += " (since " + arrow(u, v, names) + " is directed while " + edge_str(undirected(u, v), names) + " is undirected)";
    return s;
  };
  auto cap = [](std::string s) {
    if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
  };

  const bool member = holds_in_pdag(g, h);
  std::optional<bool> ext;
  try {
    ext = holds_in_all_extensions(g, h);
  } catch (const RangeError&) {
  }
  const bool decision = ext.value_or(member);
  const std::string verdict = decision ? "so the hypothesis is True." : "so the hypothesis is False.";
  const std::string flip = "every DAG that orients the undirected edges of " + S +
                           " without creating a cycle or a new v-structure satisfies the hypothesis, ";

  std::vector<int> others;
  for (int w = 0; w < names.size(); ++w)
    if (w != h.a && w != h.b) others.push_back(w);
  std::vector<std::string> other_names;
  for (int w : others) other_names.push_back(names.name(w));
  const std::string intro = "We have " + H + ". We go through all variables apart from " + A + " and " + B + ": " +
                            join(other_names, ", ");

  std::string r;
  switch (h.kind) {
    case HypothesisKind::DirectCause: {
      r = "We have " + H + ", that is " + arrow(h.a, h.b, names) + ". " + cap(belongs(h.a, h.b)) + ", ";
      if (decision != member) r += "but " + flip;
      r += verdict;
      break;
    }
    case HypothesisKind::TogetherCause:
    case HypothesisKind::CommonCause: {
      const bool together = h.kind == HypothesisKind::TogetherCause;
      r = intro + (together ? " and check if there is a directed edge from " + A + " to it and another one from " + B + " to it:"
                            : " and check if there is a directed edge from it to " + A + " and another one from it to " + B + ":");
      std::optional<int> witness;
      for (int w : others) {
        const bool ok = together ? g.has_directed(h.a, w) && g.has_directed(h.b, w) : g.has_directed(w, h.a) && g.has_directed(w, h.b);
        if (ok && !witness) witness = w;
        r += "\nFor " + names.name(w) + ": " + (together ? belongs(h.a, w) + " and " + belongs(h.b, w)
                                                          : belongs(w, h.a) + " and " + belongs(w, h.b)) + ".";
      }
      const std::string what = together ? "an incoming edge both from " + A + " and another one from " + B
                                        : "an outgoing edge pointing to " + A + " and another one pointing to " + B;
      if (witness) r += "\nFrom the above, " + names.name(*witness) + " has " + what + " in the causal graph " + S + ", " + verdict;
      else if (decision != member) r += "\nFrom the above, no variable in the causal graph " + S + " has " + what + ", but " + flip + verdict;
      else r += "\nFrom the above, there is no variable in the causal graph " + S + " with " + what + ", " + verdict;
      break;
    }
    case HypothesisKind::Mediation: {
      r = intro + " and check if there is a directed edge from " + A + " to it and another one from it to " + B + ":";
      std::optional<int> witness;
      for (int w : others) {
        const bool in1 = g.has_directed(h.a, w), in2 = g.has_directed(w, h.b);
        const std::string W = names.name(w);
        r += "\nFor " + W + ": we have edges " + arrow(h.a, w, names) + " and " + arrow(w, h.b, names) + ". ";
        if (in1 && in2) {
          if (!witness) witness = w;
          r += "Both " + belongs(h.a, w) + " and " + belongs(w, h.b) + ", so " + W + " is a mediator.";
        } else if (in1 || in2) {
          const std::string one = in1 ? arrow(h.a, w, names) : arrow(w, h.b, names);
          r += cap(belongs(h.a, w, true)) + " but " + belongs(w, h.b, true) + ". Since only one edge, " + one +
               ", belongs to the set of edges, so " + W + " is not a mediator.";
        } else {
          r += cap(belongs(h.a, w)) + " and " + belongs(w, h.b) + ". Since none of the edges belong to the graph, so " + W +
               " is not a mediator.";
        }
      }
      if (witness) {
        r += "\nFrom the above, both " + arrow(h.a, *witness, names) + " and " + arrow(*witness, h.b, names) +
             " belong to the set of edges " + S + ", " + verdict;
      } else if (decision != member) {
        r += "\nFrom the above, no variable is a mediator on the directed edges alone, but " + flip + verdict;
      } else {
        r += "\nFrom the above, there is no mediator between " + A + " and " + B + ", " + verdict;
      }
      break;
    }
  }
  return {r, decision ? "1" : "0"};
}

inline SymbolicAnswer baseline(const std::string& premise, const std::string& hypothesis) {
  auto p = parse_premise(premise);
  Pdag g = run_pc(p.ci, p.n);
  Hypothesis h = parse_hypothesis(hypothesis, p.names);
  std::optional<bool> ext;
  try {
    ext = holds_in_all_extensions(g, h);
  } catch (const RangeError&) {
  }
  const bool decision = ext.value_or(holds_in_pdag(g, h));
  std::string r = "Running the PC algorithm on the premise gives the graph " + render_graph(g, p.names) + ". ";
  r += decision ? "Every DAG that orients its undirected edges without creating a cycle or a new v-structure satisfies the "
                  "hypothesis, so the hypothesis is True."
                : "Some DAG that orients its undirected edges without creating a cycle or a new v-structure violates the "
                  "hypothesis, so the hypothesis is False.";
  return {r, decision ? "1" : "0"};
}

struct QuestionForm {
  int subq;  // 1..8, or 0 for the baseline question
  std::string tmpl;
};

inline const std::vector<QuestionForm>& question_forms() {
  static const std::vector<QuestionForm> forms = [] {
    std::vector<QuestionForm> v;
    for (const auto& spec : pc_subq_specs()) v.push_back({spec.index, spec.library.question_template});
    // exemplar wordings of the last subquestion
    const std::string t8 = pc_subq_specs()[7].library.question_template;
    const std::string caution = " Keep in mind that";
    const std::string head = "Given the inferred final causal graph: ";
    const std::string core = t8.substr(0, t8.find(caution));
    for (const char* prefix : {"Given the causal graph: ", "Given the inferred causal graph: ", "Given the inferred final causal graph: "}) {
      std::string alt = prefix + core.substr(head.size());
      v.push_back({8, alt});
      if (std::string(prefix) != head) v.push_back({8, prefix + t8.substr(head.size())});
    }
    v.push_back({0, baseline_library().question_template});
    return v;
  }();
  return forms;
}

}  // namespace symbolic

// Answers every question template of the chain and the baseline question by direct computation.
class SymbolicBackend : public Backend {
 public:
  // Dispatches on the template the question matches; unknown wording is a contract error.
  static SymbolicAnswer solve(std::string_view question) {
    std::string q = trim(replace_all(std::string(question), "\n", " "));
    // the zero-shot cues follow the baseline question; drop them before matching
    const std::string suffix = "Answer with 0 or 1.";
    if (auto pos = q.rfind(suffix); pos != std::string::npos && q.rfind("Premise: ", 0) == 0 && q.find(" Hypothesis: ") != std::string::npos)
      q = q.substr(0, pos + suffix.size());
    for (const auto& form : symbolic::question_forms()) {
      auto m = match_template(form.tmpl, q);
      if (!m) continue;
      auto& s = *m;
      try {
        switch (form.subq) {
          case 0: return symbolic::baseline(s["Premise"], s["Hypothesis"]);
          case 1: return symbolic::subq1(s["Premise"]);
          case 2: return symbolic::subq2(s["Premise"], s["Ans1"]);
          case 3: return symbolic::subq3(s["Ans2"]);
          case 4: return symbolic::subq4(s["Ans3"], s["Ans2"]);
          case 5: return symbolic::subq5(s["Premise"], s["Ans4"]);
          case 6: return symbolic::subq6(s["Ans2"], s["Ans5"]);
          case 7: return symbolic::subq7(s["Ans6"], s["Ans3"]);
          case 8: return symbolic::subq8(s["Ans7"], s["Hypothesis"]);
        }
      } catch (const ContractError&) {
        throw;
      } catch (const Error& e) {
        throw ContractError("cannot answer subquestion " + std::to_string(form.subq) + ": " + e.what());
      }
    }
    throw ContractError("question does not match any known template");
  }

  // The live question is the last "Question:" block; a prompt ending in "Answer:" asks for the answer only.
  static std::string respond(std::string_view prompt) {
    std::size_t qpos = std::string_view::npos;
    for (std::size_t p = prompt.find("Question: "); p != std::string_view::npos; p = prompt.find("Question: ", p + 1))
      if (p == 0 || prompt[p - 1] == '\n') qpos = p;
    if (qpos == std::string_view::npos) {
      auto s = solve(prompt);
      return s.reasoning + "\nAnswer: " + s.answer;
    }
    std::string_view tail = prompt.substr(qpos + 10);
    const std::size_t r = tail.find("\nReasoning:"), a = tail.find("\nAnswer:");
    const std::size_t cut = std::min(r, a);
    if (cut == std::string_view::npos) throw ContractError("prompt has no Reasoning: or Answer: cue after the question");
    auto s = solve(tail.substr(0, cut));
    std::string rest = trim(tail.substr(cut));
    if (rest.size() >= 7 && rest.compare(rest.size() - 7, 7, "Answer:") == 0) return " " + s.answer;
    return " " + s.reasoning + "\nAnswer: " + s.answer;
  }

  Completion complete(const CompletionRequest& req) override {
    req.validate();
    const auto t0 = std::chrono::steady_clock::now();
    Completion c;
    c.text = truncate_at_stop(respond(req.prompt), req.stop);
    c.latency_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return c;
  }

  HealthStatus healthcheck() override { return {true, "ok"}; }
  std::string name() const override { return "symbolic"; }
};

}  // namespace c2c
