// Builds the three-variable collider record, runs the eight-step chain against the
// symbolic backend and prints every answer.
#include <iostream>

#include "corr2cause/backends/symbolic.hpp"
#include "corr2cause/chain/chain.hpp"
#include "corr2cause/graph/mec.hpp"
#include "corr2cause/verbalizer.hpp"

int main() {
  using namespace c2c;
  const NameScheme names = NameScheme::forward(3);
  const Dag collider(3, {{0, 2}, {1, 2}});  // A -> C <- B

  BenchmarkRecord r;
  r.id = "collider";
  r.n = 3;
  r.names = names;
  r.hypothesis = Hypothesis(HypothesisKind::DirectCause, 0, 2);
  r.premise = verbalize_premise(implied_ci_set(collider), 3, names);
  r.hypothesis_text = verbalize_hypothesis(*r.hypothesis, names);

  SymbolicBackend oracle;
  ChainTrace t = run_chain(r, oracle);
  std::cout << "Premise: " << r.premise << "\nHypothesis: " << r.hypothesis_text << "\n\n";
  for (const auto& s : t.steps) std::cout << "SubQ" << s.index << " -> " << s.answer << '\n';
  std::cout << "\nlabel: " << t.predicted << '\n';
  return t.abstained ? 1 : 0;
}
