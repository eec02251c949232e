#pragma once

#include "learnta/automaton.hh"
#include "learnta/io.hh"
#include "learnta/oracle.hh"
#include "learnta/timed_core.hh"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace th {

using namespace learnta;

inline Interval oo(long long a, long long b) { return {IntBound::lt(a), IntBound::lt(b)}; }
inline Interval cc(long long a, long long b) { return {IntBound::le(a), IntBound::le(b)}; }
inline Interval oc(long long a, long long b) { return {IntBound::lt(a), IntBound::le(b)}; }
inline Interval pt(long long d) { return cc(d, d); }
inline Interval above(long long a) { return {IntBound::lt(a), IntBound::infinity()}; }

struct C {
  int i, j;
  Interval iv;
};

inline TimedCondition cond(int vars, std::initializer_list<C> cs) {
  TimedCondition c(vars);
  for (const auto& x : cs) c.restrict(x.i, x.j, x.iv);
  return c;
}

inline std::vector<std::string> events(const std::string& u) {
  std::vector<std::string> out;
  std::istringstream in(u);
  for (std::string e; in >> e;) out.push_back(e);
  return out;
}

inline ElementaryLanguage lang(const std::string& u, std::initializer_list<C> cs) {
  auto ev = events(u);
  return ElementaryLanguage(ev, cond(static_cast<int>(ev.size()) + 1, cs));
}

inline TimedWord W(const std::string& s) { return parse_word(s); }

inline TimedAutomaton data(const std::string& name) {
  return load_automaton(std::string(LEARNTA_DATA_DIR) + "/" + name);
}

// Region signature of an assignment: every T(i, j) as 2*floor + (non-integral).
inline std::vector<long long> signature(const std::vector<Rational>& tau) {
  std::vector<long long> sig;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    Rational s = 0;
    for (std::size_t j = i; j < tau.size(); ++j) {
      s += tau[j];
      sig.push_back(2 * floor_of(s) + (is_integer(s) ? 0 : 1));
    }
  }
  return sig;
}

// All grid assignments (step 1/den, each duration <= hi) satisfying c.
inline std::vector<std::vector<Rational>> grid_members(const TimedCondition& c, long long den, long long hi) {
  const int vars = c.vars();
  std::vector<std::vector<Rational>> out;
  std::vector<long long> k(vars, 0);
  const long long top = hi * den;
  while (true) {
    std::vector<Rational> tau(vars);
    for (int i = 0; i < vars; ++i) tau[i] = Rational(k[i], den);
    if (c.contains(tau)) out.push_back(tau);
    int i = 0;
    while (i < vars && ++k[i] > top) k[i++] = 0;
    if (i == vars) break;
  }
  return out;
}

// Random rational in [0, hi] with a small denominator, integers favoured.
inline Rational rand_duration(std::mt19937_64& rng, long long hi) {
  std::uniform_int_distribution<int> coin(0, 3);
  std::uniform_int_distribution<long long> whole(0, hi);
  if (coin(rng) == 0) return Rational(whole(rng));
  std::uniform_int_distribution<long long> den(2, 8);
  long long d = den(rng);
  std::uniform_int_distribution<long long> num(0, hi * d);
  return Rational(num(rng), d);
}

inline TimedWord rand_word(std::mt19937_64& rng, const std::vector<std::string>& alphabet, int max_len,
                           long long hi) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<std::size_t> ev(0, alphabet.size() - 1);
  int n = len(rng);
  TimedWord w;
  w.durations = {rand_duration(rng, hi)};
  for (int i = 0; i < n; ++i) {
    w.events.push_back(alphabet[ev(rng)]);
    w.durations.push_back(rand_duration(rng, hi));
  }
  return w;
}

inline std::set<std::string> keys(const std::vector<TimedCondition>& cs) {
  std::set<std::string> out;
  for (const auto& c : cs) out.insert(c.key());
  return out;
}

}  // namespace th
