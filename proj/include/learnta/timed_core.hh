#pragma once

#include "learnta/dbm.hh"
#include "learnta/rational.hh"

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace learnta {

struct Empty : std::runtime_error {
  Empty() : std::runtime_error("empty timed condition") {}
};

using IntBound = Bound<long long>;

// tau_0 a_1 tau_1 ... a_n tau_n
struct TimedWord {
  std::vector<Rational> durations{Rational(0)};
  std::vector<std::string> events;

  TimedWord() = default;
  TimedWord(std::vector<Rational> d, std::vector<std::string> e);

  std::size_t size() const { return events.size(); }
  Rational total() const;
  // Cumulative sums T(i, n) for i = 0..n.
  std::vector<Rational> suffix_sums() const;

  friend bool operator==(const TimedWord&, const TimedWord&) = default;
};

TimedWord concat(const TimedWord& w, const TimedWord& w2);
std::string to_string(const TimedWord& w);
TimedWord parse_word(const std::string& text);

// Closed interval bookkeeping for one sum T(i, j).
struct Interval {
  IntBound lo;  // T >= lo.value (or > when strict); inf = unbounded below
  IntBound hi;  // T <= hi.value (or < when strict)

  bool point() const { return !lo.inf && !hi.inf && !lo.strict && !hi.strict && lo.value == hi.value; }
  bool unit_open() const {
    return !lo.inf && !hi.inf && lo.strict && hi.strict && hi.value == lo.value + 1;
  }
  bool simple() const { return point() || unit_open(); }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Conjunction of bounds on T(i,j) = tau_i + ... + tau_j over tau_0..tau_n.
// Stored as a closed DBM over v_i = T(i, n) (indices 0..n) and the constant 0
// (index n + 1).  Always canonical; construction of an empty set throws Empty.
class TimedCondition {
 public:
  explicit TimedCondition(int vars = 1);
  static TimedCondition from_dbm(Dbm<long long> d);

  int vars() const { return dbm_.dim() - 1; }
  int zero() const { return dbm_.dim() - 1; }
  const Dbm<long long>& dbm() const { return dbm_; }

  Interval range(int i, int j) const;
  void restrict(int i, int j, const Interval& iv);
  void restrict_upper(int i, int j, const IntBound& b);
  void restrict_lower(int i, int j, const IntBound& b);
  void restrict_point(int i, int j, long long d) { restrict(i, j, Interval{IntBound::le(d), IntBound::le(d)}); }

  bool simple() const;
  bool bounded() const;
  bool contains(const std::vector<Rational>& durations) const;
  bool includes(const TimedCondition& other) const { return dbm_.includes(other.dbm_); }
  bool intersects(const TimedCondition& other) const { return dbm_.intersects(other.dbm_); }
  long long max_constant() const;

  std::string str() const;
  std::string key() const;

  friend bool operator==(const TimedCondition& a, const TimedCondition& b) { return a.dbm_ == b.dbm_; }

 private:
  Dbm<long long> dbm_;
};

// Unconstrained sub-DBM over tau_0..tau_k as a condition on its own.
TimedCondition project_prefix(const TimedCondition& c, int k);

// Word u plus condition over tau_0..tau_|u|.  An empty event string marks a
// seam between a prefix and a suffix: no event happens there.
struct ElementaryLanguage {
  std::vector<std::string> word;
  TimedCondition cond;

  ElementaryLanguage() = default;
  ElementaryLanguage(std::vector<std::string> u, TimedCondition c);

  int n() const { return static_cast<int>(word.size()); }
  bool simple() const { return cond.simple(); }
  std::string str() const;
  std::string key() const;

  friend bool operator==(const ElementaryLanguage& a, const ElementaryLanguage& b) {
    return a.word == b.word && a.cond == b.cond;
  }
};

// Seam-free view of an (u, tau) assignment: durations around seams merge.
TimedWord flatten(const std::vector<std::string>& word, const std::vector<Rational>& durations);
// Durations tau_0..tau_n of an assignment of T(i, n) values.
std::vector<Rational> durations_of(const std::vector<Rational>& suffix_sums);

bool contains(const ElementaryLanguage& p, const TimedWord& w);

// Simple canonical cells partitioning c, in depth-first (i, j) order with
// points before the open interval that follows them.
std::vector<TimedCondition> enumerate_simple(const TimedCondition& c);

struct FractionalOrder {
  // blocks[0] holds the variables with integral value (the 0 block);
  // following blocks by ascending fractional part.
  std::vector<std::vector<int>> blocks;
  friend bool operator==(const FractionalOrder&, const FractionalOrder&) = default;
};

FractionalOrder fractional_order(const TimedCondition& c);
inline FractionalOrder fractional_order(const ElementaryLanguage& p) { return fractional_order(p.cond); }
FractionalOrder fractional_order_of(const std::vector<Rational>& suffix_sums);

// Suffix sums of the canonical witness of a simple condition.
std::vector<Rational> witness_sums(const TimedCondition& c);
// Durations of a deterministic member.
std::vector<Rational> witness_durations(const TimedCondition& c);
TimedWord sample_witness(const ElementaryLanguage& p);
// Uniformly-shuffled member of a simple condition (fractional parts random).
std::vector<Rational> random_member_durations(const TimedCondition& c, std::mt19937_64& rng);

std::vector<ElementaryLanguage> prefixes(const ElementaryLanguage& p);

ElementaryLanguage discrete_successor(const ElementaryLanguage& p, const std::string& a);
ElementaryLanguage continuous_successor(const ElementaryLanguage& p);
ElementaryLanguage discrete_exterior(const ElementaryLanguage& p, const std::string& a);

struct Exterior {
  ElementaryLanguage lang;
  std::optional<long long> cap;  // set when an unbounded sum was capped
};
// K defaults to the largest constant of p.
Exterior continuous_exterior(const ElementaryLanguage& p, std::optional<long long> K = std::nullopt);

// The simple elementary language containing w.
ElementaryLanguage of_word(const TimedWord& w);

// p . s with a seam between them; the condition is Lambda /\ Lambda''.
ElementaryLanguage juxtapose(const ElementaryLanguage& p, const ElementaryLanguage& s);
// (a u'', tau_0 = 0 /\ Lambda'' shifted)
ElementaryLanguage prepend_event(const std::string& a, const ElementaryLanguage& s);

}  // namespace learnta
