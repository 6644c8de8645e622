#include <gtest/gtest.h>

#include <random>

#include "corr2cause/answer_parser.hpp"
#include "corr2cause/graph/mec.hpp"
#include "corr2cause/pc_engine.hpp"
#include "corr2cause/verbalizer.hpp"
#include "oracles/oracles.hpp"

using namespace c2c;

namespace {
constexpr int A = 0, B = 1, C = 2, D = 3, E = 4;
using HK = HypothesisKind;
const NameScheme kABC = NameScheme::forward(3);

const std::string kColliderPremise =
    "Suppose there is a closed system of 3 variables, A, B and C. All the statistical relations among these 3 variables "
    "are as follows: A correlates with C. B correlates with C. However, A is independent of B.";
}  // namespace

// verbalizer

TEST(Names, SchemesAreInjective) {
  EXPECT_EQ(NameScheme::refactored(3).names(), (std::vector<std::string>{"Z", "Y", "X"}));
  EXPECT_THROW(NameScheme({"A", "a"}), ValidationError);
  EXPECT_THROW(NameScheme({"A", ""}), ValidationError);
}

TEST(VerbalizePremise, ColliderRecord) {
  EXPECT_EQ(verbalize_premise(CiSet({CiStatement(A, B)}), 3, kABC), kColliderPremise);
}

TEST(VerbalizePremise, FullyConnectedHasNoHowever) {
  auto p = verbalize_premise(CiSet(), 3, kABC);
  EXPECT_EQ(p.find("However"), std::string::npos);
  EXPECT_NE(p.find("A correlates with B. A correlates with C. B correlates with C."), std::string::npos);
}

TEST(VerbalizePremise, TwoVariableHeader) {
  auto p = verbalize_premise(CiSet(), 2, NameScheme::forward(2));
  EXPECT_EQ(p.rfind("Suppose there is a closed system of 2 variables, A and B.", 0), 0u);
}

TEST(VerbalizePremise, FiveVariableOrdering) {
  Dag chain5(5, {{A, B}, {A, E}, {B, C}, {C, D}});
  auto p = verbalize_premise(implied_ci_set(chain5), 5, NameScheme::forward(5));
  EXPECT_NE(p.find("However, A and C are independent given B. A and C are independent given B and D. A and C are "
                   "independent given B, D and E. A and C are independent given B and E. A and D are independent given B."),
            std::string::npos);
  const std::string last = " D and E are independent given C.";
  EXPECT_EQ(p.substr(p.size() - last.size()), last);
}

TEST(VerbalizePremise, Errors) {
  EXPECT_THROW(verbalize_premise(CiSet(), 3, NameScheme::forward(2)), ArgumentError);
  EXPECT_THROW(verbalize_premise(CiSet({CiStatement(A, D)}), 3, kABC), RangeError);
}

TEST(VerbalizeHypothesis, Books) {
  EXPECT_EQ(verbalize_hypothesis({HK::DirectCause, B, C}, kABC), "B directly affects C.");
  EXPECT_EQ(verbalize_hypothesis({HK::CommonCause, C, D}, NameScheme::forward(4)), "Some variable(s) cause both C and D.");
  EXPECT_EQ(verbalize_hypothesis({HK::TogetherCause, A, B}, kABC, PhraseBook::paraphrased()),
            "There exists at least one collider (i.e., common effect) of A and B.");
}

TEST(Refactor, TextAndInverse) {
  const auto zyx = NameScheme::refactored(3);
  EXPECT_EQ(refactor_text("(A,B), (B,C)", kABC, zyx), "(Z,Y), (Y,X)");
  EXPECT_EQ(refactor_text(kColliderPremise, kABC, kABC), kColliderPremise);
  const auto there = refactor_text(kColliderPremise, kABC, zyx);
  EXPECT_NE(there.find("Z correlates with X"), std::string::npos);
  EXPECT_EQ(refactor_text(there, zyx, kABC), kColliderPremise);
}

TEST(Refactor, RecordKeepsLabel) {
  BenchmarkRecord r;
  r.n = 3;
  r.names = kABC;
  r.premise = kColliderPremise;
  r.hypothesis = Hypothesis(HK::DirectCause, A, C);
  r.hypothesis_text = "A directly affects C.";
  r.label = 1;
  auto z = refactor_names(r, NameScheme::refactored(3));
  EXPECT_EQ(z.label, 1);
  EXPECT_EQ(z.hypothesis_text, "Z directly affects X.");
  EXPECT_EQ(z.name_scheme, "refactored");
  auto p = paraphrase(r, PhraseBook::paraphrased());
  EXPECT_EQ(p.label, 1);
  EXPECT_EQ(p.premise, r.premise);
  EXPECT_EQ(p.hypothesis_text, "A directly causes C.");
  EXPECT_THROW(paraphrase(r, PhraseBook::standard()), ValidationError);
  EXPECT_THROW(refactor_names(r, NameScheme::forward(4)), ValidationError);
}

TEST(ParseHypothesis, BothBooks) {
  for (const auto* book : {&PhraseBook::standard(), &PhraseBook::paraphrased()})
    for (const auto& h : all_hypotheses(4, {kAllKinds.begin(), kAllKinds.end()}))
      EXPECT_EQ(parse_hypothesis(verbalize_hypothesis(h, NameScheme::forward(4), *book), NameScheme::forward(4)), h);
}

// premise parser

TEST(ParsePremise, Collider) {
  auto p = parse_premise(kColliderPremise);
  EXPECT_EQ(p.n, 3);
  EXPECT_EQ(p.ci, CiSet({CiStatement(A, B)}));
  EXPECT_EQ(p.names, kABC);
}

TEST(ParsePremise, NaturalStory) {
  auto p = parse_premise(
      "Let’s consider three factors: eating junk food, obesity, and watching television. There is a correlation between "
      "eating junk food and obesity, and between watching television and obesity. However, eating junk food and watching "
      "television are independent from each other.");
  EXPECT_EQ(p.n, 3);
  EXPECT_EQ(p.names.names(), (std::vector<std::string>{"eating junk food", "obesity", "watching television"}));
  EXPECT_EQ(p.ci, CiSet({CiStatement(0, 2)}));
}

TEST(ParsePremise, RoundTripEveryClassUpToFour) {
  for (int n = 2; n <= 4; ++n)
    for (const auto& m : enumerate_mecs(n)) {
      for (const auto& names : {NameScheme::forward(n), NameScheme::refactored(n)}) {
        auto p = parse_premise(verbalize_premise(m.ci_set(), n, names));
        EXPECT_EQ(p.ci, m.ci_set());
        EXPECT_EQ(p.n, n);
        EXPECT_EQ(p.names, names);
      }
    }
}

TEST(ParsePremise, ErrorsCarrySentenceIndex) {
  try {
    parse_premise("Suppose there is a closed system of 3 variables, A, B and C. A correlates with C. A likes B.");
    FAIL();
  } catch (const ParseError& e) {
    ASSERT_TRUE(e.sentence_index.has_value());
    EXPECT_EQ(*e.sentence_index, 2u);
  }
  EXPECT_THROW(parse_premise("Suppose there is a closed system of 4 variables, A, B and C."), ParseError);
}

// answer parser

TEST(ParseGraph, MixedEdges) {
  auto g = parse_graph_answer("(A,B), (B,C), (B,D), C -> E, D -> E");
  ASSERT_FALSE(g.sentinel);
  EXPECT_EQ(g.graph.undirected_edges().size(), 3u);
  EXPECT_EQ(g.graph.directed_edges().size(), 2u);
  EXPECT_EQ(g.graph.render(g.names), "(A,B), (B,C), (B,D), C -> E, D -> E");
}

TEST(ParseGraph, NaturalNamesAndArrows) {
  NameScheme names({"eating junk food", "obesity", "watching television"});
  auto g = parse_graph_answer("eating junk food -> obesity, watching television → obesity", &names);
  EXPECT_TRUE(g.graph.has_directed(0, 1));
  EXPECT_TRUE(g.graph.has_directed(2, 1));
  EXPECT_EQ(parse_graph_answer("A $\\rightarrow$ B").graph.directed_edges().size(), 1u);
}

TEST(ParseGraph, LastEdgeLineWinsAndSentinels) {
  auto g = parse_graph_answer("We had (A,B) before.\nSo the final graph is: A -> B, (B,C).");
  EXPECT_TRUE(g.graph.has_directed(A, B));
  EXPECT_EQ(parse_directed_edges("no directed edges found").sentinel, Sentinel::Directed);
  EXPECT_THROW(parse_graph_answer("nothing to see"), ParseError);
  EXPECT_THROW(parse_graph_answer("(A,A)"), ParseError);
}

TEST(ParseGraph, RoundTripRandomGraphs) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 10000; ++i) {
    const int n = 2 + static_cast<int>(rng() % 5);
    Pdag g = oracle::random_pdag(n, rng);
    if (g.empty()) continue;
    const auto names = (rng() & 1) ? NameScheme::forward(n) : NameScheme::refactored(n);
    auto back = parse_graph_answer(g.render(names), &names);
    ASSERT_EQ(back.graph, g) << g.render(names);
    ASSERT_EQ(back.graph.render(names), g.render(names));
  }
}

TEST(ParsePaths, Examples) {
  auto p = parse_paths_answer("(B,A,D), (B,A,E), (A,B,C), (D,A,E)");
  EXPECT_EQ(p.paths.size(), 4u);
  EXPECT_EQ(parse_paths_answer("No paths of length 2 found.").sentinel, Sentinel::Paths);
  EXPECT_EQ(parse_paths_answer("(A,C,B)").paths, (std::vector<Path2>{{A, C, B}}));
  EXPECT_THROW(parse_paths_answer("(A,B"), ParseError);
}

TEST(ParseLabel, Examples) {
  EXPECT_EQ(parse_label_answer("1"), 1);
  EXPECT_EQ(parse_label_answer("so the hypothesis is False.\nAnswer: 0"), 0);
  EXPECT_EQ(parse_label_answer("The answer is True"), 1);
  EXPECT_EQ(parse_label_answer("0."), 0);
  EXPECT_THROW(parse_label_answer("maybe"), ParseError);
}

TEST(ParseSubq, VariantMatchesIndex) {
  EXPECT_TRUE(std::holds_alternative<GraphValue>(parse_subq_answer(2, "(A,C), (B,C)").value));
  EXPECT_TRUE(std::holds_alternative<SentinelValue>(parse_subq_answer(3, "No paths of length 2 found.").value));
  EXPECT_TRUE(std::holds_alternative<CandidatesValue>(parse_subq_answer(4, "(A,C,B)").value));
  EXPECT_TRUE(std::holds_alternative<DirectedValue>(parse_subq_answer(5, "A -> C, B -> C").value));
  EXPECT_TRUE(std::holds_alternative<LabelValue>(parse_subq_answer(8, "1").value));
  EXPECT_THROW(parse_subq_answer(5, "No paths of length 2 found."), ParseError);
  EXPECT_THROW(parse_subq_answer(9, "1"), Error);
}

TEST(Parsers, NeverThrowUntypedOnJunk) {
  std::mt19937_64 rng(99);
  const std::string alphabet = "AB(),-> >.\n:{}01 Noedgsfu$\\";
  for (int i = 0; i < 5000; ++i) {
    std::string s;
    const int len = static_cast<int>(rng() % 40);
    for (int k = 0; k < len; ++k) s += alphabet[rng() % alphabet.size()];
    for (int subq = 1; subq <= 8; ++subq) {
      try {
        parse_subq_answer(subq, s);
      } catch (const Error&) {
      } catch (...) {
        FAIL() << "untyped failure on '" << s << "'";
      }
    }
    try {
      parse_premise(s);
    } catch (const Error&) {
    } catch (...) {
      FAIL() << "untyped premise failure on '" << s << "'";
    }
  }
}
