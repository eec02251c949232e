#include "learnta/congruence.hh"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace learnta {

std::string RenamingEquation::str(int n, int n2) const {
  if (pairs.empty()) return "true";
  std::string out;
  for (auto [i, j] : pairs) {
    if (!out.empty()) out += " && ";
    out += "T[" + std::to_string(i) + ".." + std::to_string(n) + "] == T'[" + std::to_string(j) + ".." +
           std::to_string(n2) + "]";
  }
  return out;
}

RenamingEquation RenamingEquation::transposed() const {
  RenamingEquation t;
  for (auto [i, j] : pairs) t.pairs.emplace_back(j, i);
  std::sort(t.pairs.begin(), t.pairs.end());
  return t;
}

namespace {

using IDbm = Dbm<long long>;

// Joint timeline: P_0..P_n, P'_0..P'_n2, Z (end of both prefixes), Q_1..Q_{m+1}.
struct Layout {
  int n, n2, m;
  int P(int i) const { return i; }
  int P2(int i) const { return n + 1 + i; }
  int Z() const { return n + n2 + 2; }
  int Q(int k) const { return n + n2 + 2 + k; }
  int dim() const { return n + n2 + m + 4; }

  std::vector<int> left() const {
    std::vector<int> v;
    for (int i = 0; i <= n; ++i) v.push_back(P(i));
    v.push_back(Z());
    return v;
  }
  std::vector<int> right() const {
    std::vector<int> v;
    for (int i = 0; i <= n2; ++i) v.push_back(P2(i));
    v.push_back(Z());
    return v;
  }
  std::vector<int> suffix() const {
    std::vector<int> v{Z()};
    for (int k = 1; k <= m + 1; ++k) v.push_back(Q(k));
    return v;
  }
  // Cells of Mem(p . s) or Mem(p' . s).
  std::vector<int> joint(bool is_left) const {
    std::vector<int> v;
    const int len = is_left ? n : n2;
    for (int i = 0; i <= len; ++i) v.push_back(is_left ? P(i) : P2(i));
    v.push_back(Z());
    for (int k = 1; k <= m + 1; ++k) v.push_back(Q(k));
    return v;
  }
};

void add_pairs(IDbm& d, const Layout& L, const RenamingEquation& r) {
  for (auto [i, j] : r.pairs) {
    d.set_raw(L.P(i), L.P2(j), std::min(d(L.P(i), L.P2(j)), IntBound::le(0)));
    d.set_raw(L.P2(j), L.P(i), std::min(d(L.P2(j), L.P(i)), IntBound::le(0)));
  }
}

IDbm base(const Layout& L, const TimedCondition& c, const TimedCondition& c2, const RenamingEquation& r,
          const TimedCondition* suffix) {
  IDbm d(L.dim());
  d.meet_embedded(c.dbm(), L.left());
  d.meet_embedded(c2.dbm(), L.right());
  if (suffix) d.meet_embedded(suffix->dbm(), L.suffix());
  add_pairs(d, L, r);
  d.close();
  return d;
}

std::vector<IDbm> lift(const SymbolicMembership& g, const IDbm& b, const Layout& L, bool is_left) {
  std::vector<IDbm> out;
  auto map = L.joint(is_left);
  for (const auto& c : g.cells) {
    IDbm d = b;
    d.meet_embedded(c.dbm(), map);
    if (d.close()) out.push_back(std::move(d));
  }
  return out;
}

bool equivalent_sets(const std::vector<IDbm>& a, const std::vector<IDbm>& b) {
  for (const auto& z : a)
    if (!covered_by(z, b)) return false;
  for (const auto& z : b)
    if (!covered_by(z, a)) return false;
  return true;
}

Interval var_range(const ElementaryLanguage& p, int i) { return p.cond.range(i, p.n()); }

std::string interval_key(const Interval& iv) {
  return (iv.lo.inf ? std::string("-") : std::to_string(iv.lo.value) + (iv.lo.strict ? "<" : "<=")) + "," +
         (iv.hi.inf ? std::string("+") : std::to_string(iv.hi.value) + (iv.hi.strict ? "<" : "<="));
}

// Simple pieces (points and open unit intervals) inside a bounded interval.
std::set<std::string> pieces(const Interval& iv) {
  std::set<std::string> out;
  if (iv.lo.inf || iv.hi.inf) return out;
  long long lo = iv.lo.value, hi = iv.hi.value;
  for (long long d = lo; d <= hi; ++d) {
    bool point_ok = (d > lo || !iv.lo.strict) && (d < hi || !iv.hi.strict);
    if (point_ok) out.insert(interval_key(Interval{IntBound::le(d), IntBound::le(d)}));
    if (d < hi) out.insert(interval_key(Interval{IntBound::lt(d), IntBound::lt(d + 1)}));
  }
  return out;
}

}  // namespace

bool satisfiable(const TimedCondition& c, const TimedCondition& c2, const RenamingEquation& r) {
  Layout L{c.vars() - 1, c2.vars() - 1, 0};
  return !base(L, c, c2, r, nullptr).empty();
}

std::vector<Dbm<long long>> apply_renaming(const SymbolicMembership& g, const ElementaryLanguage& p,
                                           const ElementaryLanguage& p2, const ElementaryLanguage& s,
                                           const RenamingEquation& r, bool left) {
  Layout L{p.n(), p2.n(), s.n()};
  IDbm b = base(L, p.cond, p2.cond, r, &s.cond);
  if (b.empty()) return {};
  return lift(g, b, L, left);
}

bool check_pair(const RowData& p, const RowData& p2, const std::vector<ElementaryLanguage>& S,
                const RenamingEquation& r) {
  const ElementaryLanguage& a = *p.lang;
  const ElementaryLanguage& b = *p2.lang;
  if (!satisfiable(a.cond, b.cond, r)) return false;
  for (std::size_t k = 0; k < S.size(); ++k) {
    const SymbolicMembership& ga = (*p.cells)[k];
    const SymbolicMembership& gb = (*p2.cells)[k];
    if (ga.empty() && gb.empty()) continue;
    if (ga.full && gb.full) continue;
    if (ga.empty() || gb.empty() || ga.full || gb.full) {
      // One side is the whole (nonempty) base; the other is not.
      if ((ga.empty() && gb.full) || (ga.full && gb.empty())) return false;
    }
    Layout L{a.n(), b.n(), S[k].n()};
    IDbm base_s = base(L, a.cond, b.cond, r, &S[k].cond);
    if (base_s.empty()) continue;
    auto lhs = ga.full ? std::vector<IDbm>{base_s} : lift(ga, base_s, L, true);
    auto rhs = gb.full ? std::vector<IDbm>{base_s} : lift(gb, base_s, L, false);
    if (!equivalent_sets(lhs, rhs)) return false;
  }
  return true;
}

std::vector<int> nontrivial_vars(const RowData& p, const std::vector<ElementaryLanguage>& S) {
  const ElementaryLanguage& a = *p.lang;
  const int n = a.n();
  std::vector<bool> hit(n + 1, false);
  for (std::size_t k = 0; k < S.size(); ++k) {
    const SymbolicMembership& g = (*p.cells)[k];
    if (g.empty() || g.full) continue;
    const int m = S[k].n();
    for (int i = 0; i <= n; ++i) {
      if (hit[i]) continue;
      for (int j = 0; j <= m && !hit[i]; ++j) {
        const int col = n + 1 + j;
        std::set<std::string> attained;
        for (const auto& c : g.cells) attained.insert(interval_key(c.range(i, col)));
        if (attained != pieces(g.domain.range(i, col))) hit[i] = true;
      }
    }
  }
  std::vector<int> out;
  for (int i = 0; i <= n; ++i)
    if (hit[i]) out.push_back(i);
  return out;
}

CandidateGraph candidate_graph(const RowData& p, const RowData& p2, const std::vector<ElementaryLanguage>& S) {
  CandidateGraph g;
  g.left = nontrivial_vars(p, S);
  g.right = nontrivial_vars(p2, S);
  for (int i : g.left)
    for (int j : g.right)
      if (var_range(*p.lang, i) == var_range(*p2.lang, j)) g.edges.emplace_back(i, j);
  // Components of the bipartite graph restricted to edges.
  const int n = p.lang->n();
  std::vector<int> parent(n + p2.lang->n() + 2);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [i, j] : g.edges) parent[find(i)] = find(n + 1 + j);
  std::map<int, std::vector<std::pair<int, int>>> by_root;
  std::map<int, int> leftmost;
  for (auto [i, j] : g.edges) {
    int r = find(i);
    by_root[r].emplace_back(i, j);
    if (!leftmost.count(r) || i < leftmost[r]) leftmost[r] = i;
  }
  std::vector<std::pair<int, int>> order;
  for (auto& [r, lm] : leftmost) order.emplace_back(lm, r);
  std::sort(order.begin(), order.end());
  for (auto& [lm, r] : order) g.components.push_back(by_root[r]);
  return g;
}

std::vector<RenamingEquation> candidate_renamings(const CandidateGraph& g, const ElementaryLanguage& p,
                                                  const ElementaryLanguage& p2) {
  const std::size_t cap = 4096;
  std::vector<RenamingEquation> out;
  if (g.edges.empty()) return out;
  // Seeds: one edge per component.
  std::vector<RenamingEquation> seeds{RenamingEquation{}};
  for (const auto& comp : g.components) {
    std::vector<RenamingEquation> next;
    for (const auto& s : seeds)
      for (const auto& e : comp) {
        if (next.size() >= cap) break;
        RenamingEquation t = s;
        t.pairs.push_back(e);
        std::sort(t.pairs.begin(), t.pairs.end());
        next.push_back(std::move(t));
      }
    seeds = std::move(next);
  }
  std::vector<RenamingEquation> frontier;
  std::set<std::vector<std::pair<int, int>>> seen;
  for (auto& s : seeds)
    if (satisfiable(p.cond, p2.cond, s) && seen.insert(s.pairs).second) frontier.push_back(s);
  // Grow while satisfiable; keep the maximal ones in discovery order.
  while (!frontier.empty() && seen.size() < cap) {
    std::vector<RenamingEquation> next;
    for (const auto& r : frontier) {
      bool grew = false;
      for (const auto& e : g.edges) {
        if (std::find(r.pairs.begin(), r.pairs.end(), e) != r.pairs.end()) continue;
        RenamingEquation t = r;
        t.pairs.push_back(e);
        std::sort(t.pairs.begin(), t.pairs.end());
        if (!satisfiable(p.cond, p2.cond, t)) continue;
        grew = true;
        if (seen.size() < cap && seen.insert(t.pairs).second) next.push_back(std::move(t));
      }
      if (!grew) out.push_back(r);
    }
    frontier = std::move(next);
  }
  for (auto& r : frontier) out.push_back(r);
  return out;
}

std::optional<RenamingEquation> complete_function_like(const RenamingEquation& r, const ElementaryLanguage& p,
                                                       const ElementaryLanguage& p2) {
  RenamingEquation out;
  std::vector<bool> assigned(p2.n() + 1, false);
  for (auto [i, j] : r.pairs) {
    if (var_range(p2, j).point()) continue;
    out.pairs.emplace_back(i, j);
    assigned[j] = true;
  }
  for (int j = 0; j <= p2.n(); ++j) {
    if (assigned[j] || var_range(p2, j).point()) continue;
    bool found = false;
    for (int i = 0; i <= p.n() && !found; ++i) {
      if (!(var_range(p, i) == var_range(p2, j))) continue;
      RenamingEquation t = out;
      t.pairs.emplace_back(i, j);
      if (satisfiable(p.cond, p2.cond, t)) {
        out = std::move(t);
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

std::optional<RenamingEquation> find_renaming(const RowData& p, const RowData& p2,
                                              const std::vector<ElementaryLanguage>& S,
                                              const RenamingOptions& opt) {
  CandidateGraph g = candidate_graph(p, p2, S);
  auto cands = candidate_renamings(g, *p.lang, *p2.lang);
  if (cands.size() > opt.max_candidates) cands.resize(opt.max_candidates);
  cands.push_back(RenamingEquation{});
  std::set<std::vector<std::pair<int, int>>> tried;
  for (const auto& r : cands) {
    RenamingEquation use = r;
    if (opt.function_like && !r.top()) {
      auto c = complete_function_like(r, *p.lang, *p2.lang);
      if (!c) continue;
      use = *c;
    }
    if (!tried.insert(use.pairs).second) continue;
    if (check_pair(p, p2, S, use)) return use;
  }
  return std::nullopt;
}

std::optional<RenamingEquation> brute_force_renaming(const RowData& p, const RowData& p2,
                                                     const std::vector<ElementaryLanguage>& S) {
  std::vector<std::pair<int, int>> all;
  for (int i = 0; i <= p.lang->n(); ++i)
    for (int j = 0; j <= p2.lang->n(); ++j) all.emplace_back(i, j);
  const std::size_t k = all.size();
  std::vector<unsigned long> masks(1ul << k);
  std::iota(masks.begin(), masks.end(), 0ul);
  std::stable_sort(masks.begin(), masks.end(),
                   [](unsigned long a, unsigned long b) { return __builtin_popcountl(a) < __builtin_popcountl(b); });
  for (unsigned long mask : masks) {
    RenamingEquation r;
    for (std::size_t b = 0; b < k; ++b)
      if (mask & (1ul << b)) r.pairs.push_back(all[b]);
    if (check_pair(p, p2, S, r)) return r;
  }
  return std::nullopt;
}

}  // namespace learnta
