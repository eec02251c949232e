#pragma once

#include "learnta/automaton.hh"
#include "learnta/timed_core.hh"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace learnta {

struct QueryStats {
  long long membership_raw = 0;
  long long membership_memoized = 0;  // distinct words
  long long symbolic_count = 0;
  long long equivalence_count = 0;
};

// Member cells of an elementary language (usually a juxtaposition p . s).
struct SymbolicMembership {
  std::vector<TimedCondition> cells;  // disjoint, simple, canonical
  TimedCondition domain;              // the queried condition
  bool full = false;                  // cells cover the whole domain

  bool empty() const { return cells.empty(); }
};

class Teacher {
 public:
  explicit Teacher(TimedAutomaton target);

  bool membership(const TimedWord& w);
  SymbolicMembership symbolic_membership(const ElementaryLanguage& p);
  std::optional<TimedWord> equivalence(const TimedAutomaton& hypothesis);

  const QueryStats& stats() const { return stats_; }
  // One line per distinct query, in issue order.
  const std::vector<std::string>& transcript() const { return transcript_; }
  const TimedAutomaton& target() const { return target_; }

 private:
  TimedAutomaton target_;
  std::map<std::string, bool> memo_;
  QueryStats stats_;
  std::vector<std::string> transcript_;
};

std::string stats_line(const QueryStats& s, double seconds);

}  // namespace learnta
