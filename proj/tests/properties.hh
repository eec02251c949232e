#pragma once

#include "helpers.hh"
#include "learnta/congruence.hh"
#include "learnta/learner.hh"

#include <functional>

namespace th {

struct PropResult {
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
  bool ok(int min_cases) const { return failures == 0 && cases >= min_cases; }
};

inline Interval random_interval(std::mt19937_64& rng, long long K) {
  std::uniform_int_distribution<long long> v(0, K);
  std::uniform_int_distribution<int> kind(0, 3);
  long long a = v(rng), b = v(rng);
  if (a > b) std::swap(a, b);
  switch (kind(rng)) {
    case 0: return pt(a);
    case 1: return oo(a, a + 1);
    case 2: return cc(a, b);
    default: return oc(a, std::max(b, a + 1));
  }
}

// Bounded condition over 1..max_vars durations, or nullopt when the draw is empty.
inline std::optional<TimedCondition> random_condition(std::mt19937_64& rng, int max_vars, long long K,
                                                      std::vector<C>* drawn = nullptr) {
  std::uniform_int_distribution<int> nv(1, max_vars);
  const int vars = nv(rng);
  std::uniform_int_distribution<int> idx(0, vars - 1), extra(0, 3);
  std::vector<C> cs;
  for (int i = 0; i < vars; ++i) cs.push_back({i, i, cc(0, K)});
  for (int k = extra(rng); k > 0; --k) {
    int i = idx(rng), j = idx(rng);
    if (i > j) std::swap(i, j);
    cs.push_back({i, j, random_interval(rng, K)});
  }
  if (drawn) *drawn = cs;
  try {
    TimedCondition c(vars);
    for (const auto& x : cs) c.restrict(x.i, x.j, x.iv);
    return c;
  } catch (const Empty&) {
    return std::nullopt;
  }
}

// Incremental closure and batch Floyd-Warshall agree; closing again changes nothing.
inline PropResult prop_canonical(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  PropResult r;
  while (r.cases < n) {
    std::vector<C> cs;
    auto c = random_condition(rng, 3, 3, &cs);
    if (!c) continue;
    Dbm<long long> raw(c->vars() + 1);
    const int z = c->zero();
    auto T = [&](int i, int j, const IntBound& up, const IntBound& lo) {
      // T(i, j) = v_i - v_{j+1}, with v_{n+1} the zero point.
      int x = i, y = j + 1 == c->vars() ? z : j + 1;
      if (!up.inf) {
        IntBound b{up.value, up.strict, false};
        if (b < raw(x, y)) raw.set_raw(x, y, b);
      }
      if (!lo.inf) {
        IntBound b{-lo.value, lo.strict, false};
        if (b < raw(y, x)) raw.set_raw(y, x, b);
      }
    };
    for (int i = 0; i < c->vars(); ++i) T(i, i, IntBound::infinity(), IntBound::le(0));
    for (const auto& x : cs) T(x.i, x.j, x.iv.hi, x.iv.lo);
    ++r.cases;
    if (!raw.close()) {
      r.fail("batch closure reports empty for " + c->str());
      continue;
    }
    if (!(raw == c->dbm())) r.fail("closures differ for " + c->str());
    Dbm<long long> again = c->dbm();
    again.close();
    if (!(again == c->dbm())) r.fail("closure not idempotent for " + c->str());
    if (!(TimedCondition::from_dbm(c->dbm()) == *c)) r.fail("from_dbm changes " + c->str());
    for (int k = 0; k < 10; ++k) {
      std::vector<Rational> tau;
      for (int i = 0; i < c->vars(); ++i) tau.push_back(rand_duration(rng, 3));
      bool sat = true;
      for (const auto& x : cs) {
        Rational s = 0;
        for (int i = x.i; i <= x.j; ++i) s += tau[i];
        sat = sat && (x.iv.lo.inf || (x.iv.lo.strict ? s > x.iv.lo.value : s >= x.iv.lo.value));
        sat = sat && (x.iv.hi.inf || (x.iv.hi.strict ? s < x.iv.hi.value : s <= x.iv.hi.value));
      }
      if (sat != c->contains(tau)) r.fail("semantics differ on " + c->str());
    }
  }
  return r;
}

// Cells are simple, inside the condition, and every member lies in exactly one cell.
inline PropResult prop_partition(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  PropResult r;
  while (r.cases < n) {
    auto c = random_condition(rng, 3, 2);
    if (!c) continue;
    ++r.cases;
    auto cells = enumerate_simple(*c);
    for (const auto& cell : cells) {
      if (!cell.simple()) r.fail("non-simple cell " + cell.str());
      if (!c->includes(cell)) r.fail("cell outside " + c->str());
      auto tau = random_member_durations(cell, rng);
      int hits = 0;
      for (const auto& other : cells) hits += other.contains(tau);
      if (hits != 1) r.fail("cell member counted " + std::to_string(hits) + " times in " + c->str());
    }
    for (int k = 0; k < 20; ++k) {
      std::vector<Rational> tau;
      for (int i = 0; i < c->vars(); ++i) tau.push_back(rand_duration(rng, 2));
      int hits = 0;
      for (const auto& cell : cells) hits += cell.contains(tau);
      if (hits != (c->contains(tau) ? 1 : 0)) r.fail("partition broken for " + c->str());
    }
  }
  return r;
}

// Successors stay simple; the fractional order matches sampled members; succ_t is inside ext_t
// when the language pins some T(i, n).
inline PropResult prop_successors(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  PropResult r;
  const std::vector<std::string> sigma{"a", "b"};
  for (; r.cases < n; ++r.cases) {
    auto p = of_word(rand_word(rng, sigma, 3, 3));
    if (!p.simple()) r.fail("of_word not simple");
    for (const auto& a : sigma)
      if (!discrete_successor(p, a).simple()) r.fail("discrete successor of " + p.str());
    auto t = continuous_successor(p);
    if (!t.simple()) r.fail("continuous successor of " + p.str());
    bool pinned = false;
    for (int i = 0; i <= p.n(); ++i) pinned = pinned || p.cond.range(i, p.n()).point();
    if (pinned && !continuous_exterior(p).lang.cond.includes(t.cond)) r.fail("succ_t outside ext_t for " + p.str());
    auto tau = random_member_durations(p.cond, rng);
    TimedWord w(tau, p.word);
    if (!contains(p, w)) r.fail("random member outside " + p.str());
    if (fractional_order_of(w.suffix_sums()) != fractional_order(p)) r.fail("fractional order of " + p.str());
  }
  return r;
}

inline std::vector<std::string> target_files() {
  return {"fig1c.json", "unbalanced1.json", "unbalanced2.json", "nonconvex.json", "train.json"};
}

inline PropResult prop_complement(std::uint64_t seed, int n_per_target) {
  std::mt19937_64 rng(seed);
  PropResult r;
  for (const auto& f : target_files()) {
    auto a = data(f);
    auto c = complement(a);
    const long long K = a.max_constant() + 2;
    for (int k = 0; k < n_per_target; ++k, ++r.cases) {
      auto w = rand_word(rng, a.alphabet, 6, K);
      if (simulate(c, w) == simulate(a, w)) r.fail(f + ": complement agrees on " + to_string(w));
    }
  }
  return r;
}

// The learned automaton and the target agree on random words.
inline PropResult prop_agreement(const TimedAutomaton& h, const TimedAutomaton& target, std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  PropResult r;
  const long long K = target.max_constant() + 2;
  for (; r.cases < n; ++r.cases) {
    auto w = rand_word(rng, target.alphabet, 6, K);
    if (simulate(h, w) != simulate(target, w)) r.fail("disagree on " + to_string(w));
  }
  return r;
}

// Replays the learning loop; every hypothesis accepts sampled members of each row iff the teacher does.
inline PropResult prop_row_faithful(const std::string& file, std::uint64_t seed, int samples_per_row) {
  std::mt19937_64 rng(seed);
  PropResult r;
  Teacher t(data(file));
  ObservationTable o(t, t.target().alphabet);
  for (int round = 0; round < 50; ++round) {
    o.make_cohesive();
    TimedAutomaton h;
    try {
      h = o.make_dta();
    } catch (const IncompatibleMorphism& e) {
      int row = o.rows()[e.row].in_p ? o.rows()[e.row].time_child : e.row;
      o.promote(row);
      continue;
    }
    for (const auto& row : o.rows())
      for (int k = 0; k < samples_per_row; ++k, ++r.cases) {
        auto w = flatten(row.lang.word, random_member_durations(row.lang.cond, rng));
        if (simulate(h, w) != t.membership(w)) r.fail(file + ": row " + row.lang.str() + " word " + to_string(w));
      }
    auto cex = t.equivalence(h);
    if (!cex) return r;
    auto a = analyze_cex(o, t, *cex, h);
    if (a.suffix && o.add_suffix(*a.suffix)) continue;
    if (a.fallback_row >= 0 && !o.rows()[a.fallback_row].in_p) {
      o.promote(a.fallback_row);
      continue;
    }
    r.fail(file + ": no progress");
    return r;
  }
  r.fail(file + ": did not converge");
  return r;
}

// Pruned renaming search finds an equation exactly when brute force over all pair subsets does.
inline PropResult prop_pruning(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  PropResult r;
  std::vector<std::unique_ptr<Teacher>> teachers;
  for (const char* f : {"fig1c.json", "unbalanced1.json"}) teachers.push_back(std::make_unique<Teacher>(data(f)));
  std::uniform_int_distribution<int> pick(0, 1), halves(0, 4), len(0, 2), slen(0, 1), nsuf(1, 2);
  auto word = [&](const std::vector<std::string>& sigma, int l) {
    std::uniform_int_distribution<std::size_t> ev(0, sigma.size() - 1);
    TimedWord w;
    w.durations = {Rational(halves(rng), 2)};
    for (int i = 0; i < l; ++i) {
      w.events.push_back(sigma[ev(rng)]);
      w.durations.push_back(Rational(halves(rng), 2));
    }
    return w;
  };
  RenamingOptions opt;
  opt.function_like = false;
  for (; r.cases < n; ++r.cases) {
    Teacher& t = *teachers[pick(rng)];
    const auto& sigma = t.target().alphabet;
    std::vector<ElementaryLanguage> S{lang("", {{0, 0, pt(0)}})};
    for (int k = nsuf(rng); k > 0; --k) {
      auto s = of_word(word(sigma, slen(rng)));
      if (std::find(S.begin(), S.end(), s) == S.end()) S.push_back(s);
    }
    auto p = of_word(word(sigma, len(rng)));
    auto q = of_word(word(sigma, len(rng)));
    std::vector<SymbolicMembership> cp, cq;
    for (const auto& s : S) {
      cp.push_back(t.symbolic_membership(juxtapose(p, s)));
      cq.push_back(t.symbolic_membership(juxtapose(q, s)));
    }
    RowData a{&p, &cp}, b{&q, &cq};
    auto pruned = find_renaming(a, b, S, opt);
    auto brute = brute_force_renaming(a, b, S);
    if (pruned.has_value() != brute.has_value())
      r.fail("pruned " + std::string(pruned ? "found" : "missed") + " for " + p.str() + " vs " + q.str());
    if (pruned && !check_pair(a, b, S, *pruned)) r.fail("pruned equation fails check for " + p.str());
  }
  return r;
}

}  // namespace th
