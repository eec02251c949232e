#pragma once

#include "learnta/rational.hh"
#include "learnta/timed_core.hh"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace learnta {

enum class Cmp { Lt, Le, Eq, Ge, Gt };

struct ClockConstraint {
  int clock = 0;
  Cmp op = Cmp::Lt;
  long long value = 0;
  friend bool operator==(const ClockConstraint&, const ClockConstraint&) = default;
};

using Guard = std::vector<ClockConstraint>;

// Per-clock interval view of a guard; Interval::lo.inf never happens (clocks >= 0).
using Box = std::vector<Interval>;

Box box_of(const Guard& g, int clocks);
Guard guard_of(const Box& b);
bool box_empty(const Box& b);
Box box_meet(const Box& a, const Box& b);
bool box_contains(const Box& b, const std::vector<Rational>& nu);

struct Update {
  enum class Kind { Keep, Copy, Const };
  Kind kind = Kind::Keep;
  int src = -1;
  Rational value = 0;

  static Update keep() { return {}; }
  static Update copy(int c) { return Update{Kind::Copy, c, 0}; }
  static Update constant(Rational v) { return Update{Kind::Const, -1, v}; }
  friend bool operator==(const Update&, const Update&) = default;
};

struct Edge {
  int source = 0;
  std::string event;
  Guard guard;
  std::vector<Update> updates;  // one per clock, Keep by default
  int target = 0;
};

struct Location {
  std::string name;
  bool accepting = false;
  Guard invariant;
};

struct TimedAutomaton {
  std::vector<std::string> alphabet;
  std::vector<std::string> clocks;
  std::vector<Location> locations;
  int initial = 0;
  std::vector<Edge> edges;

  int num_clocks() const { return static_cast<int>(clocks.size()); }
  int clock_index(const std::string& c) const;
  int location_index(const std::string& l) const;
  // Largest constant compared with or assigned to each clock, closed under copies.
  std::vector<Rational> max_constants() const;
  long long max_constant() const;
};

struct NondeterministicInput : std::runtime_error {
  std::string location, event;
  NondeterministicInput(std::string l, std::string e)
      : std::runtime_error("nondeterministic edges at location '" + l + "' on event '" + e + "'"),
        location(std::move(l)),
        event(std::move(e)) {}
};

struct IncompatibleMorphism : std::runtime_error {
  int row;
  IncompatibleMorphism(const std::string& what, int r) : std::runtime_error(what), row(r) {}
};

// Offending (location, event) if two guards overlap.
std::optional<std::pair<int, std::string>> find_nondeterminism(const TimedAutomaton& a);
void require_deterministic(const TimedAutomaton& a);

std::vector<Rational> apply_updates(const std::vector<Update>& ups, const std::vector<Rational>& nu);

bool simulate(const TimedAutomaton& a, const TimedWord& w);

// Adds a non-accepting sink reached by the complement of each (location, event) guard union.
TimedAutomaton complete(const TimedAutomaton& a);
TimedAutomaton complement(const TimedAutomaton& a);

std::optional<TimedWord> find_distinguishing_word(const TimedAutomaton& a, const TimedAutomaton& b);

// Locations and edges reachable from the initial state (zone-based).
struct Reachability {
  std::vector<bool> location;
  std::vector<bool> edge;
};
Reachability reachable(const TimedAutomaton& a);

TimedAutomaton simplify(const TimedAutomaton& a);

std::string to_string(const ClockConstraint& c, const std::vector<std::string>& clocks);
std::string to_string(const Update& u, int target, const std::vector<std::string>& clocks);
std::string to_dot(const TimedAutomaton& a);

}  // namespace learnta
