#include "learnta/oracle.hh"

#include "learnta/log.hh"

#include <cstdio>

namespace learnta {

Teacher::Teacher(TimedAutomaton target) : target_(std::move(target)) { require_deterministic(target_); }

bool Teacher::membership(const TimedWord& w) {
  ++stats_.membership_raw;
  std::string key = to_string(w);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  bool r = simulate(target_, w);
  memo_.emplace(key, r);
  ++stats_.membership_memoized;
  transcript_.push_back("M " + key + " = " + (r ? "1" : "0"));
  return r;
}

SymbolicMembership Teacher::symbolic_membership(const ElementaryLanguage& p) {
  ++stats_.symbolic_count;
  SymbolicMembership out{{}, p.cond, false};
  std::size_t total = 0;
  for (const TimedCondition& c : enumerate_simple(p.cond)) {
    ++total;
    if (membership(flatten(p.word, witness_durations(c)))) out.cells.push_back(c);
  }
  out.full = out.cells.size() == total;
  transcript_.push_back("S " + p.str() + " = " + std::to_string(out.cells.size()) + "/" + std::to_string(total));
  return out;
}

std::optional<TimedWord> Teacher::equivalence(const TimedAutomaton& hypothesis) {
  ++stats_.equivalence_count;
  auto cex = find_distinguishing_word(hypothesis, target_);
  transcript_.push_back("E " + std::to_string(hypothesis.locations.size()) + " = " + (cex ? to_string(*cex) : "none"));
  LEARNTA_LOG(Info, "equivalence #" << stats_.equivalence_count << ": " << (cex ? to_string(*cex) : "none"));
  return cex;
}

std::string stats_line(const QueryStats& s, double seconds) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", seconds);
  return "membership_raw=" + std::to_string(s.membership_raw) +
         " membership_memoized=" + std::to_string(s.membership_memoized) +
         " symbolic=" + std::to_string(s.symbolic_count) + " equivalence=" + std::to_string(s.equivalence_count) +
         " time_s=" + buf;
}

}  // namespace learnta
