#include "learnta/recognizable.hh"

#include <map>

namespace learnta {

namespace {

Box cell_box(const ElementaryLanguage& p, int clocks) {
  Box b(clocks, Interval{IntBound::le(0), IntBound::infinity()});
  for (int i = 0; i <= p.n(); ++i) b[i] = p.cond.range(i, p.n());
  return b;
}

// Copies of a clock pinned by the guard become constants; self copies become keeps.
void pin(std::vector<Update>& ups, const Guard& guard) {
  std::map<int, long long> pinned;
  for (const auto& c : guard)
    if (c.op == Cmp::Eq) pinned[c.clock] = c.value;
  for (std::size_t j = 0; j < ups.size(); ++j) {
    Update& u = ups[j];
    if (u.kind != Update::Kind::Copy) continue;
    if (pinned.count(u.src))
      u = Update::constant(pinned[u.src]);
    else if (u.src == static_cast<int>(j))
      u = Update::keep();
  }
}

}  // namespace

// x_b > d for the first pinned clock, else x_g >= d_g + 1 on the greatest fractional block.
Guard beyond_guard(const ElementaryLanguage& p) {
  const int n = p.n();
  for (int i = 0; i <= n; ++i) {
    Interval r = p.cond.range(i, n);
    if (r.point()) return {ClockConstraint{i, Cmp::Gt, r.lo.value}};
  }
  FractionalOrder fo = fractional_order(p.cond);
  int g = fo.blocks.back().front();
  for (int i : fo.blocks.back()) g = std::min(g, i);
  return {ClockConstraint{g, Cmp::Ge, p.cond.range(g, n).hi.value}};
}

std::vector<Update> rule_updates(const RecognizableSpec& spec, const RecognizableSpec::Rule& rule, int fresh,
                                 int clocks) {
  std::vector<Update> ups(clocks, Update::keep());
  const ElementaryLanguage& t = spec.P[rule.target];
  const int nt = t.n();
  if (rule.R.top()) {
    auto rep = witness_sums(t.cond);
    for (int j = 0; j <= nt; ++j) ups[j] = Update::constant(rep[j]);
    return ups;
  }
  std::vector<bool> set(nt + 1, false);
  for (int j = 0; j <= nt; ++j) {
    Interval r = t.cond.range(j, nt);
    if (r.point()) {
      ups[j] = Update::constant(r.lo.value);
      set[j] = true;
    }
  }
  for (auto [i, j] : rule.R.pairs) {
    if (set[j]) continue;
    ups[j] = i == fresh ? Update::constant(0) : Update::copy(i);
    set[j] = true;
  }
  return ups;
}

TimedAutomaton build_dta(const RecognizableSpec& spec) {
  const int np = static_cast<int>(spec.P.size());
  int m = 0;
  for (const auto& p : spec.P) m = std::max(m, p.n());
  const int clocks = m + 1;

  std::vector<int> time_child(np, -1);
  std::vector<std::map<std::string, int>> event_child(np);
  for (int r = 1; r < np; ++r) {
    if (spec.via[r].empty())
      time_child[spec.parent[r]] = r;
    else
      event_child[spec.parent[r]][spec.via[r]] = r;
  }
  std::map<std::pair<int, std::string>, const RecognizableSpec::Rule*> rule_of;
  for (const auto& rule : spec.rules) rule_of[{rule.from, rule.event}] = &rule;

  // One location per maximal time chain.
  std::vector<std::vector<int>> chains;
  std::vector<int> loc_of(np, -1);
  for (int r = 0; r < np; ++r) {
    if (r != 0 && spec.via[r].empty()) continue;
    std::vector<int> chain;
    for (int x = r; x >= 0; x = time_child[x]) {
      chain.push_back(x);
      loc_of[x] = static_cast<int>(chains.size());
    }
    chains.push_back(std::move(chain));
  }

  TimedAutomaton a;
  a.alphabet = spec.alphabet;
  for (int i = 0; i < clocks; ++i) a.clocks.push_back("x" + std::to_string(i));
  for (std::size_t l = 0; l < chains.size(); ++l) {
    Location loc{"l" + std::to_string(l), spec.accepting[chains[l].front()], {}};
    for (int r : chains[l])
      if (spec.accepting[r] != loc.accepting)
        throw IncompatibleMorphism("acceptance differs along a time chain", spec.ids[r]);
    a.locations.push_back(loc);
  }
  a.initial = 0;

  auto edge_updates = [&](int r, const std::string& ev, int& target, bool& in_p) {
    const int n = spec.P[r].n();
    auto it = event_child[r].find(ev);
    if (it != event_child[r].end()) {
      std::vector<Update> ups(clocks, Update::keep());
      ups[n + 1] = Update::constant(0);
      target = loc_of[it->second];
      in_p = true;
      return ups;
    }
    auto rit = rule_of.find({r, ev});
    if (rit == rule_of.end()) throw IncompatibleMorphism("no rule for successor on '" + ev + "'", spec.ids[r]);
    target = loc_of[rit->second->target];
    in_p = false;
    return rule_updates(spec, *rit->second, n + 1, clocks);
  };

  for (std::size_t l = 0; l < chains.size(); ++l) {
    for (int r : chains[l])
      for (const auto& ev : spec.alphabet) {
        int target = 0;
        bool in_p = false;
        auto ups = edge_updates(r, ev, target, in_p);
        Guard g = guard_of(cell_box(spec.P[r], clocks));
        pin(ups, g);
        a.edges.push_back(Edge{static_cast<int>(l), ev, g, ups, target});
      }
    // Valuations past the last cell behave like its representative.
    const int end = chains[l].back();
    auto rit = rule_of.find({end, std::string()});
    if (rit == rule_of.end() || rit->second->target != end || !rit->second->R.top())
      throw IncompatibleMorphism("time successor of a chain end is not mapped onto itself", spec.ids[end]);
    const ElementaryLanguage& pk = spec.P[end];
    auto rep = witness_sums(pk.cond);
    Guard g = beyond_guard(pk);
    for (const auto& ev : spec.alphabet) {
      int target = 0;
      bool in_p = false;
      auto ups = edge_updates(end, ev, target, in_p);
      for (int j = 0; j < clocks; ++j) {
        Update& u = ups[j];
        if (u.kind == Update::Kind::Copy)
          u = Update::constant(rep[u.src]);
        else if (u.kind == Update::Kind::Keep && in_p && j <= pk.n())
          u = Update::constant(rep[j]);
      }
      a.edges.push_back(Edge{static_cast<int>(l), ev, g, ups, target});
    }
  }
  return a;
}

}  // namespace learnta
