// Runs the chain on records whose variables have natural-language names.
#include <iostream>

#include "corr2cause/backends/symbolic.hpp"
#include "corr2cause/chain/chain.hpp"
#include "corr2cause/eval/dataset.hpp"

int main(int argc, char** argv) {
  using namespace c2c;
  const std::string path = argc > 1 ? argv[1] : C2C_SAMPLES_DIR "/natural_stories.jsonl";
  SymbolicBackend oracle;
  int wrong = 0;
  for (const auto& r : load_dataset(path)) {
    ChainTrace t = run_chain(r, oracle);
    std::cout << r.id << ": final graph " << t.steps.at(6).answer << ", label " << t.predicted << " (gold " << r.label << ")\n";
    wrong += t.predicted != r.label;
  }
  return wrong;
}
