#pragma once

#include "learnta/automaton.hh"
#include "learnta/congruence.hh"

#include <string>
#include <vector>

namespace learnta {

// (P, F, Phi).  P is a prefix tree: P[0] is (eps, tau_0 = 0); every other element is the time
// ("" via) or event successor of its parent.  Each successor outside P has one rule mapping
// it back into P.
struct RecognizableSpec {
  std::vector<std::string> alphabet;
  std::vector<ElementaryLanguage> P;
  std::vector<int> parent;
  std::vector<std::string> via;
  std::vector<bool> accepting;
  std::vector<int> ids;  // caller's row ids, reported in IncompatibleMorphism

  struct Rule {
    int from = 0;
    std::string event;  // "" for the time successor
    int target = 0;
    RenamingEquation R;
  };
  std::vector<Rule> rules;
};

// Clock updates realizing a rule whose source is a successor with fresh variable index `fresh`.
std::vector<Update> rule_updates(const RecognizableSpec& spec, const RecognizableSpec::Rule& rule, int fresh,
                                 int clocks);

// Guard of the valuations just past the last cell of a time chain.
Guard beyond_guard(const ElementaryLanguage& p);

TimedAutomaton build_dta(const RecognizableSpec& spec);

}  // namespace learnta
