#pragma once

#include "learnta/automaton.hh"
#include "learnta/congruence.hh"
#include "learnta/oracle.hh"
#include "learnta/recognizable.hh"
#include "learnta/timed_core.hh"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace learnta {

struct LearnerOptions {
  bool time_saturation = true;
  int max_iterations = 200;      // equivalence rounds
  int max_repairs = 100000;      // cohesion repairs per round
};

struct NoFlipFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CohesionReport {
  enum class Kind { Cohesive, NotClosed, Inconsistent, Exterior, TimeSaturation };
  Kind kind = Kind::Cohesive;
  int row = -1;   // offending row (successor for NotClosed)
  int row2 = -1;  // partner for Inconsistent
  std::string event;
};

std::string to_string(CohesionReport::Kind k);

class ObservationTable {
 public:
  struct Row {
    ElementaryLanguage lang;
    int parent = -1;
    std::string via;  // "" for the time successor
    bool in_p = false;
    std::vector<SymbolicMembership> cells;
    int time_child = -1;
    std::map<std::string, int> event_child;
  };
  struct Witness {
    int target = -1;
    RenamingEquation R;
  };

  ObservationTable(Teacher& teacher, std::vector<std::string> alphabet, LearnerOptions opt = {});

  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<int>& p_order() const { return p_order_; }
  const std::vector<ElementaryLanguage>& suffixes() const { return suffixes_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  int find_row(const ElementaryLanguage& p) const;
  bool has_suffix(const ElementaryLanguage& s) const;

  // False when s is already present.
  bool add_suffix(const ElementaryLanguage& s);
  void promote(int row);

  std::optional<RenamingEquation> renaming(int a, int b);
  bool top_equivalent(int a, int b);
  CohesionReport check_cohesion();
  void repair(const CohesionReport& report);
  // Repairs until cohesive; returns the number of repairs.
  int make_cohesive();

  std::optional<Witness> witness(int row);
  bool accepting(int row) const;
  RecognizableSpec spec();
  TimedAutomaton make_dta();

  // Concrete word of a row for values v_i = T(i, n).
  TimedWord word(int row, const std::vector<Rational>& v) const;

 private:
  SymbolicMembership cell(const ElementaryLanguage& p, const ElementaryLanguage& s);
  int add_row(ElementaryLanguage lang, int parent, const std::string& via);
  RowData data(int row) const { return RowData{&rows_[row].lang, &rows_[row].cells}; }
  std::vector<int> successors(int row) const;
  long long constant_bound() const;

  Teacher& teacher_;
  std::vector<std::string> alphabet_;
  LearnerOptions opt_;
  std::vector<Row> rows_;
  std::vector<int> p_order_;
  std::vector<ElementaryLanguage> suffixes_;
  std::set<std::string> suffix_keys_;
  std::map<std::string, int> row_index_;
  std::map<std::string, SymbolicMembership> cell_cache_;
  std::map<std::pair<int, int>, std::optional<RenamingEquation>> renaming_memo_;
  std::map<std::pair<int, int>, bool> top_memo_;
  std::map<int, Witness> witness_;
  std::set<std::tuple<int, int, std::string>> stuck_;
};

struct CexAnalysis {
  // cex, then each rewritten word; dwell rewrites are included.
  std::vector<TimedWord> chain;
  std::optional<ElementaryLanguage> suffix;
  int fallback_row = -1;  // successor row to promote when the suffix is already known
};

CexAnalysis analyze_cex(ObservationTable& table, Teacher& teacher, const TimedWord& cex, const TimedAutomaton& h);

struct LearnResult {
  TimedAutomaton automaton;
  std::vector<TimedAutomaton> hypotheses;
  std::vector<ElementaryLanguage> suffixes;
  std::vector<ElementaryLanguage> prefixes;
  int rounds = 0;
};

LearnResult learn(Teacher& teacher, const LearnerOptions& opt = {});

}  // namespace learnta
