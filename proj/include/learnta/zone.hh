#pragma once

#include "learnta/automaton.hh"
#include "learnta/dbm.hh"
#include "learnta/rational.hh"

#include <optional>
#include <vector>

namespace learnta {

using RatBound = Bound<Rational>;

// Convex set of clock valuations; clocks are indices 0..m-1, the constant 0 is index m.
class Zone {
 public:
  explicit Zone(int clocks);  // the single valuation 0
  static Zone universe(int clocks);

  int clocks() const { return dbm_.dim() - 1; }
  int zero() const { return dbm_.dim() - 1; }
  bool empty() const { return dbm_.empty(); }
  const Dbm<Rational>& dbm() const { return dbm_; }

  void up();
  void down();
  bool meet(const Box& b);
  bool meet(const Zone& z);
  Zone post(const std::vector<Update>& ups) const;
  Zone pre(const std::vector<Update>& ups) const;
  void normalize(const std::vector<Rational>& M);

  bool includes(const Zone& z) const { return dbm_.includes(z.dbm_); }
  bool contains(const std::vector<Rational>& nu) const;

  // Delays d >= 0 with nu + d inside the zone: [lo, hi] with strictness; nullopt if none.
  struct Window {
    RatBound lo;  // d >= lo.value (or > when strict)
    RatBound hi;  // d <= hi.value (or < when strict); inf when unbounded
  };
  std::optional<Window> delay_window(const std::vector<Rational>& nu) const;

 private:
  Dbm<Rational> dbm_;
};

// Closed lower end when available, otherwise the smallest-denominator rational inside.
Rational pick_delay(const Zone::Window& w);

}  // namespace learnta
