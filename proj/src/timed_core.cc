#include "learnta/timed_core.hh"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace learnta {

// ---------------------------------------------------------------- words

TimedWord::TimedWord(std::vector<Rational> d, std::vector<std::string> e)
    : durations(std::move(d)), events(std::move(e)) {
  if (durations.size() != events.size() + 1) throw std::invalid_argument("timed word: |durations| != |events| + 1");
  for (const auto& t : durations)
    if (t < 0) throw std::invalid_argument("timed word: negative duration");
}

Rational TimedWord::total() const {
  Rational s = 0;
  for (const auto& t : durations) s += t;
  return s;
}

std::vector<Rational> TimedWord::suffix_sums() const {
  std::vector<Rational> v(durations.size());
  Rational acc = 0;
  for (std::size_t k = durations.size(); k-- > 0;) {
    acc += durations[k];
    v[k] = acc;
  }
  return v;
}

TimedWord concat(const TimedWord& w, const TimedWord& w2) {
  TimedWord out = w;
  out.durations.back() += w2.durations.front();
  out.durations.insert(out.durations.end(), w2.durations.begin() + 1, w2.durations.end());
  out.events.insert(out.events.end(), w2.events.begin(), w2.events.end());
  return out;
}

std::string to_string(const TimedWord& w) {
  std::string s = to_string(w.durations[0]);
  for (std::size_t i = 0; i < w.events.size(); ++i) s += " " + w.events[i] + " " + to_string(w.durations[i + 1]);
  return s;
}

TimedWord parse_word(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> toks;
  for (std::string t; in >> t;) toks.push_back(t);
  if (toks.empty()) throw std::invalid_argument("empty timed word");
  if (toks.size() % 2 == 0) throw std::invalid_argument("timed word must alternate durations and events: " + text);
  std::vector<Rational> d;
  std::vector<std::string> e;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (i % 2 == 0)
      d.push_back(parse_rational(toks[i]));
    else
      e.push_back(toks[i]);
  }
  return TimedWord(std::move(d), std::move(e));
}

// ------------------------------------------------------------ conditions

TimedCondition::TimedCondition(int vars) : dbm_(vars + 1) {
  for (int k = 0; k < vars; ++k) dbm_.set_raw(k + 1, k, IntBound::le(0));
  dbm_.close();
}

TimedCondition TimedCondition::from_dbm(Dbm<long long> d) {
  if (d.empty()) throw Empty();
  TimedCondition c(d.dim() - 1);
  for (int i = 0; i < d.dim(); ++i)
    for (int j = 0; j < d.dim(); ++j)
      if (!c.dbm_.constrain(i, j, d(i, j))) throw Empty();
  return c;
}

Interval TimedCondition::range(int i, int j) const {
  IntBound hi = dbm_(i, j + 1);
  IntBound low = dbm_(j + 1, i);
  IntBound lo = low.inf ? IntBound::infinity() : IntBound{-low.value, low.strict, false};
  return Interval{lo, hi};
}

void TimedCondition::restrict_upper(int i, int j, const IntBound& b) {
  if (b.inf) return;
  if (!dbm_.constrain(i, j + 1, b)) throw Empty();
}

void TimedCondition::restrict_lower(int i, int j, const IntBound& b) {
  if (b.inf) return;
  if (!dbm_.constrain(j + 1, i, IntBound{-b.value, b.strict, false})) throw Empty();
}

void TimedCondition::restrict(int i, int j, const Interval& iv) {
  restrict_lower(i, j, iv.lo);
  restrict_upper(i, j, iv.hi);
}

bool TimedCondition::simple() const {
  const int n = vars() - 1;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      if (!range(i, j).simple()) return false;
  return true;
}

bool TimedCondition::bounded() const {
  for (int i = 0; i < vars(); ++i)
    if (dbm_(i, zero()).inf) return false;
  return true;
}

bool TimedCondition::contains(const std::vector<Rational>& durations) const {
  if (static_cast<int>(durations.size()) != vars()) return false;
  std::vector<Rational> v(vars() + 1, Rational(0));
  for (int k = vars() - 1; k >= 0; --k) {
    if (durations[k] < 0) return false;
    v[k] = v[k + 1] + durations[k];
  }
  for (int x = 0; x <= vars(); ++x)
    for (int y = 0; y <= vars(); ++y) {
      const IntBound& b = dbm_(x, y);
      if (b.inf) continue;
      Rational diff = v[x] - v[y];
      if (b.strict ? !(diff < b.value) : diff > b.value) return false;
    }
  return true;
}

long long TimedCondition::max_constant() const {
  long long k = 0;
  for (int x = 0; x < dbm_.dim(); ++x)
    for (int y = 0; y < dbm_.dim(); ++y)
      if (!dbm_(x, y).inf) k = std::max(k, std::abs(dbm_(x, y).value));
  return k;
}

namespace {

std::string render(const Interval& iv) {
  if (iv.point()) return "= " + std::to_string(iv.hi.value);
  if (!iv.lo.inf && !iv.hi.inf)
    return std::string("in ") + (iv.lo.strict ? "(" : "[") + std::to_string(iv.lo.value) + "," +
           std::to_string(iv.hi.value) + (iv.hi.strict ? ")" : "]");
  if (!iv.lo.inf) return std::string(iv.lo.strict ? "> " : ">= ") + std::to_string(iv.lo.value);
  if (!iv.hi.inf) return std::string(iv.hi.strict ? "< " : "<= ") + std::to_string(iv.hi.value);
  return "free";
}

}  // namespace

std::string TimedCondition::str() const {
  std::string s;
  const int n = vars() - 1;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      if (!s.empty()) s += " && ";
      s += "T[" + std::to_string(i) + "," + std::to_string(j) + "] " + render(range(i, j));
    }
  return s;
}

std::string TimedCondition::key() const {
  std::string s = std::to_string(vars()) + ":";
  for (int x = 0; x < dbm_.dim(); ++x)
    for (int y = 0; y < dbm_.dim(); ++y) {
      const IntBound& b = dbm_(x, y);
      if (b.inf)
        s += "i,";
      else
        s += std::to_string(b.value) + (b.strict ? "<," : "=,");
    }
  return s;
}

TimedCondition project_prefix(const TimedCondition& c, int k) {
  std::vector<int> keep;
  for (int i = 0; i <= k + 1; ++i) keep.push_back(i);
  return TimedCondition::from_dbm(c.dbm().project(keep));
}

// ------------------------------------------------------ elementary languages

ElementaryLanguage::ElementaryLanguage(std::vector<std::string> u, TimedCondition c)
    : word(std::move(u)), cond(std::move(c)) {
  if (cond.vars() != static_cast<int>(word.size()) + 1)
    throw std::invalid_argument("elementary language: condition dimension mismatch");
}

std::string ElementaryLanguage::str() const {
  std::string u;
  for (const auto& a : word) u += (u.empty() ? "" : " ") + (a.empty() ? std::string("|") : a);
  if (u.empty()) u = "eps";
  return "(" + u + "; " + cond.str() + ")";
}

std::string ElementaryLanguage::key() const {
  std::string s;
  for (const auto& a : word) s += a + "\x1f";
  return s + "|" + cond.key();
}

TimedWord flatten(const std::vector<std::string>& word, const std::vector<Rational>& durations) {
  TimedWord w;
  w.durations = {durations[0]};
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (word[k].empty()) {
      w.durations.back() += durations[k + 1];
    } else {
      w.events.push_back(word[k]);
      w.durations.push_back(durations[k + 1]);
    }
  }
  return w;
}

std::vector<Rational> durations_of(const std::vector<Rational>& v) {
  std::vector<Rational> d(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) d[k] = v[k] - (k + 1 < v.size() ? v[k + 1] : Rational(0));
  return d;
}

bool contains(const ElementaryLanguage& p, const TimedWord& w) {
  if (p.word != w.events) return false;
  return p.cond.contains(w.durations);
}

namespace {

std::vector<Interval> pieces_of(const Interval& iv) {
  if (iv.hi.inf || iv.lo.inf) throw std::invalid_argument("enumerate_simple: unbounded condition");
  std::vector<Interval> out;
  const long long a = iv.lo.value, b = iv.hi.value;
  for (long long d = a; d <= b; ++d) {
    bool point_ok = (d > a || !iv.lo.strict) && (d < b || !iv.hi.strict);
    if (point_ok) out.push_back(Interval{IntBound::le(d), IntBound::le(d)});
    if (d < b) out.push_back(Interval{IntBound::lt(d), IntBound::lt(d + 1)});
  }
  return out;
}

void enumerate_rec(const TimedCondition& cur, std::size_t idx, const std::vector<std::pair<int, int>>& pairs,
                   std::vector<TimedCondition>& out) {
  for (; idx < pairs.size(); ++idx) {
    auto [i, j] = pairs[idx];
    Interval iv = cur.range(i, j);
    if (iv.simple()) continue;
    for (const Interval& piece : pieces_of(iv)) {
      TimedCondition next = cur;
      try {
        next.restrict(i, j, piece);
      } catch (const Empty&) {
        continue;
      }
      enumerate_rec(next, idx + 1, pairs, out);
    }
    return;
  }
  out.push_back(cur);
}

}  // namespace

std::vector<TimedCondition> enumerate_simple(const TimedCondition& c) {
  std::vector<std::pair<int, int>> pairs;
  const int n = c.vars() - 1;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) pairs.emplace_back(i, j);
  std::vector<TimedCondition> out;
  enumerate_rec(c, 0, pairs, out);
  return out;
}

namespace {

// Sign of frac(v_i) - frac(v_j) for non-integral v_i, v_j of a simple condition.
int frac_cmp(const TimedCondition& c, int i, int j) {
  if (i == j) return 0;
  if (i > j) return -frac_cmp(c, j, i);
  const int n = c.vars() - 1;
  long long di = c.range(i, n).lo.value;
  long long dj = c.range(j, n).lo.value;
  Interval diff = c.range(i, j - 1);  // v_i - v_j
  if (diff.point()) return 0;
  return diff.lo.value == di - dj ? 1 : -1;
}

}  // namespace

FractionalOrder fractional_order(const TimedCondition& c) {
  if (!c.simple()) throw std::invalid_argument("fractional_order: condition is not simple");
  const int n = c.vars() - 1;
  FractionalOrder fo;
  fo.blocks.emplace_back();
  std::vector<int> rest;
  for (int i = 0; i <= n; ++i) {
    if (c.range(i, n).point())
      fo.blocks[0].push_back(i);
    else
      rest.push_back(i);
  }
  std::stable_sort(rest.begin(), rest.end(), [&](int a, int b) { return frac_cmp(c, a, b) < 0; });
  for (std::size_t k = 0; k < rest.size(); ++k) {
    if (k > 0 && frac_cmp(c, rest[k - 1], rest[k]) == 0)
      fo.blocks.back().push_back(rest[k]);
    else
      fo.blocks.push_back({rest[k]});
  }
  for (auto& b : fo.blocks) std::sort(b.begin(), b.end());
  return fo;
}

FractionalOrder fractional_order_of(const std::vector<Rational>& v) {
  std::map<Rational, std::vector<int>> by_frac;
  for (std::size_t i = 0; i < v.size(); ++i) by_frac[frac_of(v[i])].push_back(static_cast<int>(i));
  FractionalOrder fo;
  if (by_frac.empty() || by_frac.begin()->first != Rational(0)) fo.blocks.emplace_back();
  for (auto& [f, idx] : by_frac) fo.blocks.push_back(idx);
  return fo;
}

std::vector<Rational> witness_sums(const TimedCondition& c) {
  if (!c.simple()) return witness_sums(enumerate_simple(c).front());
  const int n = c.vars() - 1;
  FractionalOrder fo = fractional_order(c);
  const long long m = static_cast<long long>(fo.blocks.size()) - 1;
  std::vector<Rational> v(n + 1);
  for (std::size_t r = 0; r < fo.blocks.size(); ++r)
    for (int i : fo.blocks[r]) v[i] = Rational(c.range(i, n).lo.value) + Rational(static_cast<long long>(r), m + 1);
  return v;
}

std::vector<Rational> witness_durations(const TimedCondition& c) { return durations_of(witness_sums(c)); }

TimedWord sample_witness(const ElementaryLanguage& p) { return flatten(p.word, witness_durations(p.cond)); }

std::vector<Rational> random_member_durations(const TimedCondition& c, std::mt19937_64& rng) {
  if (!c.simple()) {
    auto cells = enumerate_simple(c);
    std::uniform_int_distribution<std::size_t> pick(0, cells.size() - 1);
    return random_member_durations(cells[pick(rng)], rng);
  }
  const int n = c.vars() - 1;
  FractionalOrder fo = fractional_order(c);
  const long long den = 997;
  std::set<long long> fracs;
  std::uniform_int_distribution<long long> draw(1, den - 1);
  while (fracs.size() + 1 < fo.blocks.size()) fracs.insert(draw(rng));
  std::vector<long long> sorted(fracs.begin(), fracs.end());
  std::vector<Rational> v(n + 1);
  for (std::size_t r = 0; r < fo.blocks.size(); ++r)
    for (int i : fo.blocks[r])
      v[i] = Rational(c.range(i, n).lo.value) + (r == 0 ? Rational(0) : Rational(sorted[r - 1], den));
  return durations_of(v);
}

std::vector<ElementaryLanguage> prefixes(const ElementaryLanguage& p) {
  std::vector<ElementaryLanguage> out;
  for (int k = 0; k <= p.n(); ++k) {
    TimedCondition proj = project_prefix(p.cond, k);
    Dbm<long long> d = proj.dbm();
    const int z = proj.zero();
    for (int i = 0; i < z; ++i) d.set_raw(z, i, IntBound::infinity());
    d.set_raw(z, k, IntBound::le(0));
    d.close();
    std::vector<std::string> u(p.word.begin(), p.word.begin() + k);
    for (auto& cell : enumerate_simple(TimedCondition::from_dbm(d))) out.emplace_back(u, cell);
  }
  return out;
}

namespace {

std::vector<std::vector<Interval>> all_ranges(const TimedCondition& c) {
  const int n = c.vars() - 1;
  std::vector<std::vector<Interval>> r(n + 1, std::vector<Interval>(n + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) r[i][j] = c.range(i, j);
  return r;
}

TimedCondition from_ranges(const std::vector<std::vector<Interval>>& r) {
  const int n = static_cast<int>(r.size()) - 1;
  TimedCondition c(n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) c.restrict(i, j, r[i][j]);
  return c;
}

}  // namespace

ElementaryLanguage discrete_exterior(const ElementaryLanguage& p, const std::string& a) {
  const int n = p.n();
  Dbm<long long> d(n + 3);
  std::vector<int> map;
  for (int i = 0; i <= n; ++i) map.push_back(i);
  map.push_back(n + 2);
  d.meet_embedded(p.cond.dbm(), map);
  d.set_raw(n + 1, n + 2, IntBound::le(0));
  d.set_raw(n + 2, n + 1, IntBound::le(0));
  d.set_raw(n + 1, n, IntBound::le(0));
  d.close();
  auto u = p.word;
  u.push_back(a);
  return ElementaryLanguage(std::move(u), TimedCondition::from_dbm(std::move(d)));
}

ElementaryLanguage discrete_successor(const ElementaryLanguage& p, const std::string& a) {
  return discrete_exterior(p, a);
}

ElementaryLanguage continuous_successor(const ElementaryLanguage& p) {
  if (!p.simple()) throw std::invalid_argument("continuous_successor: not simple");
  const int n = p.n();
  auto r = all_ranges(p.cond);
  bool any_point = false;
  for (int i = 0; i <= n; ++i) any_point = any_point || r[i][n].point();
  if (any_point) {
    for (int i = 0; i <= n; ++i)
      if (r[i][n].point()) {
        long long d = r[i][n].lo.value;
        r[i][n] = Interval{IntBound::lt(d), IntBound::lt(d + 1)};
      }
  } else {
    FractionalOrder fo = fractional_order(p.cond);
    for (int i : fo.blocks.back()) {
      long long d = r[i][n].hi.value;
      r[i][n] = Interval{IntBound::le(d), IntBound::le(d)};
    }
  }
  return ElementaryLanguage(p.word, from_ranges(r));
}

Exterior continuous_exterior(const ElementaryLanguage& p, std::optional<long long> K) {
  const int n = p.n();
  const long long k = K ? *K : p.cond.max_constant();
  auto r = all_ranges(p.cond);
  bool any_point = false;
  for (int i = 0; i <= n; ++i) any_point = any_point || r[i][n].point();
  if (any_point) {
    for (int i = 0; i <= n; ++i)
      if (r[i][n].point()) r[i][n] = Interval{IntBound::lt(r[i][n].lo.value), IntBound::infinity()};
  } else {
    for (int i = 0; i <= n; ++i)
      if (!r[i][n].hi.inf && r[i][n].hi.strict) {
        long long d = r[i][n].hi.value;
        r[i][n] = Interval{IntBound::le(d), IntBound::le(d)};
        break;
      }
  }
  TimedCondition c = from_ranges(r);
  Exterior ext{ElementaryLanguage(p.word, c), std::nullopt};
  for (int i = 0; i <= n; ++i)
    if (ext.lang.cond.range(i, n).hi.inf) {
      ext.lang.cond.restrict_upper(i, n, IntBound::le(k + 1));
      ext.cap = k + 1;
    }
  return ext;
}

ElementaryLanguage of_word(const TimedWord& w) {
  auto v = w.suffix_sums();
  const int n = static_cast<int>(w.events.size());
  TimedCondition c(n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      Rational t = v[i] - (j + 1 <= n ? v[j + 1] : Rational(0));
      long long f = floor_of(t);
      if (is_integer(t))
        c.restrict_point(i, j, f);
      else
        c.restrict(i, j, Interval{IntBound::lt(f), IntBound::lt(f + 1)});
    }
  return ElementaryLanguage(w.events, c);
}

ElementaryLanguage juxtapose(const ElementaryLanguage& p, const ElementaryLanguage& s) {
  const int n = p.n(), m = s.n();
  const int N = n + m + 2;  // variables
  Dbm<long long> d(N + 1);
  std::vector<int> pm, sm;
  for (int i = 0; i <= n + 1; ++i) pm.push_back(i);
  for (int k = 0; k <= m; ++k) sm.push_back(n + 1 + k);
  sm.push_back(N);
  d.meet_embedded(p.cond.dbm(), pm);
  d.meet_embedded(s.cond.dbm(), sm);
  d.close();
  std::vector<std::string> u = p.word;
  u.emplace_back();
  u.insert(u.end(), s.word.begin(), s.word.end());
  return ElementaryLanguage(std::move(u), TimedCondition::from_dbm(std::move(d)));
}

ElementaryLanguage prepend_event(const std::string& a, const ElementaryLanguage& s) {
  const int m = s.n();
  Dbm<long long> d(m + 3);
  std::vector<int> sm;
  for (int k = 0; k <= m + 1; ++k) sm.push_back(k + 1);
  d.meet_embedded(s.cond.dbm(), sm);
  d.set_raw(0, 1, IntBound::le(0));
  d.set_raw(1, 0, IntBound::le(0));
  d.close();
  std::vector<std::string> u{a};
  u.insert(u.end(), s.word.begin(), s.word.end());
  return ElementaryLanguage(std::move(u), TimedCondition::from_dbm(std::move(d)));
}

}  // namespace learnta
