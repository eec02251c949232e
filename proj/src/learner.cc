#include "learnta/learner.hh"

#include "learnta/log.hh"

#include <algorithm>

namespace learnta {

std::string to_string(CohesionReport::Kind k) {
  switch (k) {
    case CohesionReport::Kind::Cohesive: return "cohesive";
    case CohesionReport::Kind::NotClosed: return "not-closed";
    case CohesionReport::Kind::Inconsistent: return "inconsistent";
    case CohesionReport::Kind::Exterior: return "exterior";
    case CohesionReport::Kind::TimeSaturation: return "time-saturation";
  }
  return "?";
}

namespace {

ElementaryLanguage seed() {
  TimedCondition c(1);
  c.restrict_point(0, 0, 0);
  return ElementaryLanguage({}, c);
}

bool in_interval(const Interval& iv, const Rational& x) {
  if (!iv.lo.inf && (iv.lo.strict ? !(x > iv.lo.value) : x < iv.lo.value)) return false;
  if (!iv.hi.inf && (iv.hi.strict ? !(x < iv.hi.value) : x > iv.hi.value)) return false;
  return true;
}

// Unary projections only, as the hypothesis guards see them.
bool in_box(const ElementaryLanguage& p, const std::vector<Rational>& v) {
  for (int i = 0; i <= p.n(); ++i)
    if (!in_interval(p.cond.range(i, p.n()), v[i])) return false;
  return true;
}

bool holds(const Guard& g, const std::vector<Rational>& v) {
  for (const auto& c : g) {
    const Rational& x = v[c.clock];
    bool ok = true;
    switch (c.op) {
      case Cmp::Lt: ok = x < c.value; break;
      case Cmp::Le: ok = x <= c.value; break;
      case Cmp::Eq: ok = x == c.value; break;
      case Cmp::Ge: ok = x >= c.value; break;
      case Cmp::Gt: ok = x > c.value; break;
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace

ObservationTable::ObservationTable(Teacher& teacher, std::vector<std::string> alphabet, LearnerOptions opt)
    : teacher_(teacher), alphabet_(std::move(alphabet)), opt_(opt) {
  suffixes_.push_back(seed());
  suffix_keys_.insert(seed().key());
  add_row(seed(), -1, "");
  promote(0);
}

int ObservationTable::find_row(const ElementaryLanguage& p) const {
  auto it = row_index_.find(p.key());
  return it == row_index_.end() ? -1 : it->second;
}

bool ObservationTable::has_suffix(const ElementaryLanguage& s) const { return suffix_keys_.count(s.key()) > 0; }

SymbolicMembership ObservationTable::cell(const ElementaryLanguage& p, const ElementaryLanguage& s) {
  ElementaryLanguage j = juxtapose(p, s);
  std::string key = j.key();
  auto it = cell_cache_.find(key);
  if (it != cell_cache_.end()) return it->second;
  SymbolicMembership m = teacher_.symbolic_membership(j);
  cell_cache_.emplace(key, m);
  return m;
}

int ObservationTable::add_row(ElementaryLanguage lang, int parent, const std::string& via) {
  int found = find_row(lang);
  if (found >= 0) return found;
  Row r;
  r.lang = std::move(lang);
  r.parent = parent;
  r.via = via;
  for (const auto& s : suffixes_) r.cells.push_back(cell(r.lang, s));
  row_index_[r.lang.key()] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(r));
  return static_cast<int>(rows_.size()) - 1;
}

void ObservationTable::promote(int row) {
  if (rows_[row].in_p) return;
  rows_[row].in_p = true;
  p_order_.push_back(row);
  LEARNTA_LOG(Debug, "P += " << rows_[row].lang.str());
  ElementaryLanguage t = continuous_successor(rows_[row].lang);
  int tc = add_row(std::move(t), row, "");
  rows_[row].time_child = tc;
  for (const auto& a : alphabet_) {
    ElementaryLanguage d = discrete_successor(rows_[row].lang, a);
    int ec = add_row(std::move(d), row, a);
    rows_[row].event_child[a] = ec;
  }
}

bool ObservationTable::add_suffix(const ElementaryLanguage& s) {
  if (!suffix_keys_.insert(s.key()).second) return false;
  suffixes_.push_back(s);
  LEARNTA_LOG(Debug, "S += " << s.str());
  for (auto& r : rows_) r.cells.push_back(cell(r.lang, s));
  renaming_memo_.clear();
  top_memo_.clear();
  witness_.clear();
  stuck_.clear();
  return true;
}

std::optional<RenamingEquation> ObservationTable::renaming(int a, int b) {
  auto key = std::make_pair(a, b);
  auto it = renaming_memo_.find(key);
  if (it != renaming_memo_.end()) return it->second;
  auto r = find_renaming(data(a), data(b), suffixes_);
  renaming_memo_.emplace(key, r);
  return r;
}

bool ObservationTable::top_equivalent(int a, int b) {
  auto key = std::make_pair(a, b);
  auto it = top_memo_.find(key);
  if (it != top_memo_.end()) return it->second;
  bool r = check_pair(data(a), data(b), suffixes_, RenamingEquation{});
  top_memo_.emplace(key, r);
  return r;
}

std::vector<int> ObservationTable::successors(int row) const {
  std::vector<int> out{rows_[row].time_child};
  for (const auto& a : alphabet_) out.push_back(rows_[row].event_child.at(a));
  return out;
}

long long ObservationTable::constant_bound() const {
  long long k = 0;
  for (const auto& r : rows_) k = std::max(k, r.lang.cond.max_constant());
  for (const auto& s : suffixes_) k = std::max(k, s.cond.max_constant());
  return k;
}

CohesionReport ObservationTable::check_cohesion() {
  using K = CohesionReport::Kind;
  witness_.clear();
  for (int p : p_order_)
    for (int q : successors(p)) {
      if (rows_[q].in_p) continue;
      std::optional<Witness> w;
      if (opt_.time_saturation && q == rows_[p].time_child && top_equivalent(q, p)) w = Witness{p, {}};
      for (std::size_t k = 0; !w && k < p_order_.size(); ++k)
        if (auto r = renaming(q, p_order_[k])) w = Witness{p_order_[k], *r};
      if (!w) return CohesionReport{K::NotClosed, q, -1, ""};
      witness_[q] = *w;
    }
  for (std::size_t i = 0; i < p_order_.size(); ++i)
    for (std::size_t j = i + 1; j < p_order_.size(); ++j) {
      int a = p_order_[i], b = p_order_[j];
      if (!renaming(a, b)) continue;
      for (const auto& ev : alphabet_) {
        if (stuck_.count({a, b, ev})) continue;
        if (!renaming(rows_[a].event_child.at(ev), rows_[b].event_child.at(ev)))
          return CohesionReport{K::Inconsistent, a, b, ev};
      }
    }
  const long long bound = constant_bound();
  for (int p : p_order_) {
    int q = rows_[p].time_child;
    if (rows_[q].in_p) continue;
    bool ok = false;
    try {
      Exterior ext = continuous_exterior(rows_[p].lang, bound);
      ok = ext.lang.cond.includes(rows_[q].lang.cond);
    } catch (const Empty&) {
      ok = false;
    }
    if (!ok) return CohesionReport{K::Exterior, p, -1, ""};
  }
  if (opt_.time_saturation)
    for (int p : p_order_) {
      int q = rows_[p].time_child;
      if (!rows_[q].in_p && !top_equivalent(q, p)) return CohesionReport{K::TimeSaturation, p, -1, ""};
    }
  return CohesionReport{};
}

void ObservationTable::repair(const CohesionReport& rep) {
  using K = CohesionReport::Kind;
  LEARNTA_LOG(Debug, "repair " << to_string(rep.kind) << " row " << rep.row);
  switch (rep.kind) {
    case K::Cohesive: return;
    case K::NotClosed: promote(rep.row); return;
    case K::Exterior:
    case K::TimeSaturation: promote(rows_[rep.row].time_child); return;
    case K::Inconsistent: break;
  }
  const int a = rep.row, b = rep.row2;
  const std::vector<ElementaryLanguage> base = suffixes_;
  for (const auto& s : base) {
    ElementaryLanguage s2 = prepend_event(rep.event, s);
    if (has_suffix(s2)) continue;
    auto ca = rows_[a].cells, cb = rows_[b].cells;
    ca.push_back(cell(rows_[a].lang, s2));
    cb.push_back(cell(rows_[b].lang, s2));
    auto S2 = suffixes_;
    S2.push_back(s2);
    if (!find_renaming(RowData{&rows_[a].lang, &ca}, RowData{&rows_[b].lang, &cb}, S2)) {
      add_suffix(s2);
      return;
    }
  }
  bool added = false;
  for (const auto& s : base) added = add_suffix(prepend_event(rep.event, s)) || added;
  if (!added) stuck_.insert({a, b, rep.event});
}

int ObservationTable::make_cohesive() {
  int n = 0;
  for (;;) {
    CohesionReport r = check_cohesion();
    if (r.kind == CohesionReport::Kind::Cohesive) return n;
    if (++n > opt_.max_repairs) throw std::runtime_error("repair limit reached");
    repair(r);
  }
}

std::optional<ObservationTable::Witness> ObservationTable::witness(int row) {
  auto it = witness_.find(row);
  if (it == witness_.end()) return std::nullopt;
  return it->second;
}

bool ObservationTable::accepting(int row) const { return !rows_[row].cells[0].empty(); }

RecognizableSpec ObservationTable::spec() {
  RecognizableSpec s;
  s.alphabet = alphabet_;
  std::map<int, int> idx;
  for (int r : p_order_) idx[r] = static_cast<int>(idx.size());
  for (int r : p_order_) {
    s.P.push_back(rows_[r].lang);
    s.parent.push_back(rows_[r].parent < 0 ? -1 : idx.at(rows_[r].parent));
    s.via.push_back(rows_[r].via);
    s.accepting.push_back(accepting(r));
    s.ids.push_back(r);
  }
  for (int p : p_order_)
    for (int q : successors(p)) {
      if (rows_[q].in_p) continue;
      auto w = witness(q);
      if (!w) throw IncompatibleMorphism("successor without a witness", q);
      s.rules.push_back(RecognizableSpec::Rule{idx.at(p), rows_[q].via, idx.at(w->target), w->R});
    }
  return s;
}

TimedAutomaton ObservationTable::make_dta() { return simplify(build_dta(spec())); }

TimedWord ObservationTable::word(int row, const std::vector<Rational>& v) const {
  return TimedWord(durations_of(v), rows_[row].lang.word);
}

// ------------------------------------------------------------------ counterexamples

namespace {

struct Step {
  bool beyond = false;
  int source = -1;      // successor row (event) or chain end (beyond)
  TimedWord rest;       // remainder after the split
  TimedWord dwell;      // beyond only: rep . (delta rest)
  TimedWord delta_rest;
};

TimedWord with_first(const TimedWord& w, Rational d) {
  TimedWord out = w;
  out.durations[0] = d;
  return out;
}

TimedWord tail_from(const TimedWord& w, std::size_t k, Rational first) {
  std::vector<Rational> d{first};
  std::vector<std::string> e;
  for (std::size_t i = k; i < w.events.size(); ++i) {
    e.push_back(w.events[i]);
    d.push_back(w.durations[i + 1]);
  }
  return TimedWord(d, e);
}

}  // namespace

CexAnalysis analyze_cex(ObservationTable& t, Teacher& teacher, const TimedWord& cex, const TimedAutomaton& h) {
  const auto& rows = t.rows();
  auto head_of = [&](int r) {
    while (rows[r].parent >= 0 && rows[r].via.empty()) r = rows[r].parent;
    return r;
  };
  auto chain_of = [&](int r) {
    std::vector<int> c;
    for (int x = head_of(r); x >= 0 && rows[x].in_p; x = rows[x].time_child) c.push_back(x);
    return c;
  };

  std::vector<TimedWord> W{cex};
  std::vector<Step> steps;
  int row = 0;
  std::vector<Rational> v{Rational(0)};
  bool alive = true;

  // Locates the cell of the current chain; returns false when no guard applies.
  auto settle = [&](std::size_t k, bool at_end) -> bool {
    auto chain = chain_of(row);
    for (int c : chain)
      if (in_box(rows[c].lang, v)) {
        row = c;
        return true;
      }
    const int pk = chain.back();
    if (!holds(beyond_guard(rows[pk].lang), v)) return false;
    auto rep = witness_sums(rows[pk].lang.cond);
    Step s;
    s.beyond = true;
    s.source = pk;
    s.rest = at_end ? TimedWord() : tail_from(cex, k, Rational(0));
    Rational maxfrac = 0;
    bool point = false;
    for (std::size_t i = 0; i < rep.size(); ++i) {
      maxfrac = std::max(maxfrac, frac_of(rep[i]));
      point = point || rows[pk].lang.cond.range(static_cast<int>(i), rows[pk].lang.n()).point();
    }
    Rational delta = point ? (Rational(1) - maxfrac) / 2 : Rational(1) - maxfrac;
    s.delta_rest = with_first(s.rest, delta);
    s.dwell = concat(t.word(pk, rep), s.delta_rest);
    W.push_back(concat(t.word(pk, rep), s.rest));
    steps.push_back(s);
    row = pk;
    v = rep;
    return true;
  };

  for (std::size_t k = 0; k <= cex.events.size() && alive; ++k) {
    for (auto& x : v) x += cex.durations[k];
    const bool at_end = k == cex.events.size();
    if (!settle(k, at_end)) {
      alive = false;
      break;
    }
    if (at_end) break;
    const std::string& a = cex.events[k];
    auto ec = rows[row].event_child.find(a);
    if (ec == rows[row].event_child.end()) break;
    const int q = ec->second;
    std::vector<Rational> vq = v;
    vq.push_back(0);
    if (rows[q].in_p) {
      row = q;
      v = vq;
      continue;
    }
    auto w = t.witness(q);
    if (!w) break;
    const auto& target = rows[w->target].lang;
    const int nt = target.n();
    std::vector<Rational> vt(nt + 1, Rational(0));
    if (w->R.top()) {
      vt = witness_sums(target.cond);
    } else {
      std::vector<bool> set(nt + 1, false);
      for (int j = 0; j <= nt; ++j) {
        Interval r = target.cond.range(j, nt);
        if (r.point()) {
          vt[j] = r.lo.value;
          set[j] = true;
        }
      }
      for (auto [i, j] : w->R.pairs)
        if (!set[j]) {
          vt[j] = vq[i];
          set[j] = true;
        }
    }
    Step s;
    s.source = q;
    s.rest = tail_from(cex, k + 1, cex.durations[k + 1]);
    W.push_back(concat(t.word(w->target, vt), s.rest));
    steps.push_back(s);
    row = w->target;
    v = vt;
  }
  CexAnalysis out;
  for (std::size_t i = 0; i < W.size(); ++i) {
    if (i > 0 && steps[i - 1].beyond) out.chain.push_back(steps[i - 1].dwell);
    out.chain.push_back(W[i]);
  }

  auto delta = [&](std::size_t i) { return teacher.membership(W[i]) != simulate(h, W[i]); };
  if (!delta(0)) throw NoFlipFound("counterexample is not in the symmetric difference");
  const std::size_t last = W.size() - 1;
  if (delta(last)) throw NoFlipFound("rewritten counterexample still distinguishes: " + to_string(W[last]));
  std::size_t lo = 0, hi = last;
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (delta(mid))
      lo = mid;
    else
      hi = mid;
  }
  const Step& s = steps[hi - 1];
  if (!s.beyond) {
    out.suffix = of_word(s.rest);
    out.fallback_row = s.source;
  } else {
    const bool first_differs = teacher.membership(W[hi - 1]) != teacher.membership(s.dwell);
    out.suffix = of_word(first_differs ? s.delta_rest : s.rest);
    out.fallback_row = rows[s.source].time_child;
  }
  LEARNTA_LOG(Info, "cex " << to_string(cex) << " -> suffix " << out.suffix->str());
  return out;
}

// ------------------------------------------------------------------ main loop

LearnResult learn(Teacher& teacher, const LearnerOptions& opt) {
  ObservationTable t(teacher, teacher.target().alphabet, opt);
  LearnResult res;
  int promotions = 0;
  for (int round = 0; round < opt.max_iterations;) {
    t.make_cohesive();
    TimedAutomaton h;
    try {
      h = t.make_dta();
    } catch (const IncompatibleMorphism& e) {
      if (++promotions > opt.max_iterations)
        throw std::runtime_error(std::string("no hypothesis within the iteration limit: ") + e.what());
      int r = e.row;
      if (t.rows()[r].in_p) r = t.rows()[r].time_child;
      LEARNTA_LOG(Debug, "incompatible morphism: " << e.what() << "; promoting row " << r);
      t.promote(r);
      continue;
    }
    ++round;
    res.hypotheses.push_back(h);
    auto cex = teacher.equivalence(h);
    if (!cex) {
      res.automaton = h;
      res.rounds = round;
      res.suffixes = t.suffixes();
      for (int r : t.p_order()) res.prefixes.push_back(t.rows()[r].lang);
      return res;
    }
    CexAnalysis a = analyze_cex(t, teacher, *cex, h);
    if (a.suffix && t.add_suffix(*a.suffix)) continue;
    if (a.fallback_row >= 0 && !t.rows()[a.fallback_row].in_p) {
      t.promote(a.fallback_row);
      continue;
    }
    throw std::runtime_error("counterexample analysis made no progress on " + to_string(*cex));
  }
  throw std::runtime_error("iteration limit reached");
}

}  // namespace learnta
