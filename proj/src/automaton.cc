#include "learnta/automaton.hh"

#include "learnta/zone.hh"

#include <algorithm>
#include <functional>
#include <deque>
#include <map>
#include <set>

namespace learnta {

// ------------------------------------------------------------------ boxes

Box box_of(const Guard& g, int clocks) {
  Box b(clocks, Interval{IntBound::le(0), IntBound::infinity()});
  for (const auto& c : g) {
    Interval& iv = b.at(c.clock);
    IntBound lo = IntBound::infinity(), hi = IntBound::infinity();
    switch (c.op) {
      case Cmp::Lt: hi = IntBound::lt(c.value); break;
      case Cmp::Le: hi = IntBound::le(c.value); break;
      case Cmp::Eq: hi = lo = IntBound::le(c.value); break;
      case Cmp::Ge: lo = IntBound::le(c.value); break;
      case Cmp::Gt: lo = IntBound::lt(c.value); break;
    }
    if (!hi.inf && hi < iv.hi) iv.hi = hi;
    // Lower bounds: larger value wins, strict wins at equal value.
    if (!lo.inf && (lo.value > iv.lo.value || (lo.value == iv.lo.value && lo.strict))) iv.lo = lo;
  }
  return b;
}

Guard guard_of(const Box& b) {
  Guard g;
  for (int c = 0; c < static_cast<int>(b.size()); ++c) {
    const Interval& iv = b[c];
    if (iv.point()) {
      g.push_back({c, Cmp::Eq, iv.lo.value});
      continue;
    }
    if (iv.lo.strict || iv.lo.value > 0) g.push_back({c, iv.lo.strict ? Cmp::Gt : Cmp::Ge, iv.lo.value});
    if (!iv.hi.inf) g.push_back({c, iv.hi.strict ? Cmp::Lt : Cmp::Le, iv.hi.value});
  }
  return g;
}

namespace {

bool interval_empty(const Interval& iv) {
  if (iv.hi.inf) return false;
  if (iv.lo.value > iv.hi.value) return true;
  return iv.lo.value == iv.hi.value && (iv.lo.strict || iv.hi.strict);
}

Interval interval_meet(const Interval& a, const Interval& b) {
  Interval r = a;
  if (b.hi < r.hi) r.hi = b.hi;
  if (b.lo.value > r.lo.value || (b.lo.value == r.lo.value && b.lo.strict)) r.lo = b.lo;
  return r;
}

// a \ b as disjoint boxes.
std::vector<Box> box_subtract(const Box& a, const Box& b) {
  std::vector<Box> out;
  if (box_empty(box_meet(a, b))) {
    out.push_back(a);
    return out;
  }
  Box rest = a;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const Interval& bi = b[c];
    // below b
    if (bi.lo.value > 0 || bi.lo.strict) {
      Interval below = rest[c];
      IntBound h = bi.lo.strict ? IntBound::le(bi.lo.value) : IntBound::lt(bi.lo.value);
      if (h < below.hi) below.hi = h;
      if (!interval_empty(below)) {
        Box piece = rest;
        piece[c] = below;
        out.push_back(piece);
      }
    }
    if (!bi.hi.inf) {
      Interval above = rest[c];
      IntBound l = bi.hi.strict ? IntBound::le(bi.hi.value) : IntBound::lt(bi.hi.value);
      if (l.value > above.lo.value || (l.value == above.lo.value && l.strict)) above.lo = l;
      if (!interval_empty(above)) {
        Box piece = rest;
        piece[c] = above;
        out.push_back(piece);
      }
    }
    rest[c] = interval_meet(rest[c], bi);
  }
  return out;
}

}  // namespace

bool box_empty(const Box& b) {
  return std::any_of(b.begin(), b.end(), interval_empty);
}

Box box_meet(const Box& a, const Box& b) {
  Box r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = interval_meet(a[i], b[i]);
  return r;
}

bool box_contains(const Box& b, const std::vector<Rational>& nu) {
  for (std::size_t c = 0; c < b.size(); ++c) {
    const Interval& iv = b[c];
    if (iv.lo.strict ? !(nu[c] > iv.lo.value) : nu[c] < iv.lo.value) return false;
    if (!iv.hi.inf && (iv.hi.strict ? !(nu[c] < iv.hi.value) : nu[c] > iv.hi.value)) return false;
  }
  return true;
}

// -------------------------------------------------------------- automaton

int TimedAutomaton::clock_index(const std::string& c) const {
  for (int i = 0; i < num_clocks(); ++i)
    if (clocks[i] == c) return i;
  return -1;
}

int TimedAutomaton::location_index(const std::string& l) const {
  for (int i = 0; i < static_cast<int>(locations.size()); ++i)
    if (locations[i].name == l) return i;
  return -1;
}

std::vector<Rational> TimedAutomaton::max_constants() const {
  std::vector<Rational> M(num_clocks(), Rational(0));
  auto see = [&](const Guard& g) {
    for (const auto& c : g) M[c.clock] = std::max(M[c.clock], Rational(c.value));
  };
  for (const auto& l : locations) see(l.invariant);
  for (const auto& e : edges) {
    see(e.guard);
    for (int j = 0; j < static_cast<int>(e.updates.size()); ++j)
      if (e.updates[j].kind == Update::Kind::Const) M[j] = std::max(M[j], Rational(floor_of(e.updates[j].value) + 1));
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : edges)
      for (int j = 0; j < static_cast<int>(e.updates.size()); ++j)
        if (e.updates[j].kind == Update::Kind::Copy && M[e.updates[j].src] < M[j]) {
          M[e.updates[j].src] = M[j];
          changed = true;
        }
  }
  return M;
}

long long TimedAutomaton::max_constant() const {
  long long k = 0;
  for (const auto& l : locations)
    for (const auto& c : l.invariant) k = std::max(k, c.value);
  for (const auto& e : edges)
    for (const auto& c : e.guard) k = std::max(k, c.value);
  return k;
}

std::optional<std::pair<int, std::string>> find_nondeterminism(const TimedAutomaton& a) {
  const int m = a.num_clocks();
  for (std::size_t i = 0; i < a.edges.size(); ++i)
    for (std::size_t j = i + 1; j < a.edges.size(); ++j) {
      const Edge& e = a.edges[i];
      const Edge& f = a.edges[j];
      if (e.source != f.source || e.event != f.event) continue;
      if (!box_empty(box_meet(box_of(e.guard, m), box_of(f.guard, m)))) return std::make_pair(e.source, e.event);
    }
  return std::nullopt;
}

void require_deterministic(const TimedAutomaton& a) {
  if (auto bad = find_nondeterminism(a)) throw NondeterministicInput(a.locations[bad->first].name, bad->second);
}

std::vector<Rational> apply_updates(const std::vector<Update>& ups, const std::vector<Rational>& nu) {
  std::vector<Rational> out = nu;
  for (std::size_t j = 0; j < ups.size(); ++j) {
    switch (ups[j].kind) {
      case Update::Kind::Keep: break;
      case Update::Kind::Copy: out[j] = nu[ups[j].src]; break;
      case Update::Kind::Const: out[j] = ups[j].value; break;
    }
  }
  return out;
}

bool simulate(const TimedAutomaton& a, const TimedWord& w) {
  const int m = a.num_clocks();
  std::vector<Rational> nu(m, Rational(0));
  int loc = a.initial;
  auto dwell = [&](const Rational& t) {
    if (t > 0 && !a.locations[loc].invariant.empty()) {
      Box inv = box_of(a.locations[loc].invariant, m);
      if (!box_contains(inv, nu)) return false;
      for (int c = 0; c < m; ++c)
        if (!inv[c].hi.inf && nu[c] + t > inv[c].hi.value) return false;
    }
    for (auto& x : nu) x += t;
    return true;
  };
  for (std::size_t k = 0; k < w.events.size(); ++k) {
    if (!dwell(w.durations[k])) return false;
    const Edge* taken = nullptr;
    for (const auto& e : a.edges)
      if (e.source == loc && e.event == w.events[k] && box_contains(box_of(e.guard, m), nu)) {
        taken = &e;
        break;
      }
    if (!taken) return false;
    nu = apply_updates(taken->updates, nu);
    loc = taken->target;
  }
  if (!dwell(w.durations.back())) return false;
  return a.locations[loc].accepting;
}

namespace {

TimedAutomaton complete_over(const TimedAutomaton& a, const std::vector<std::string>& alphabet) {
  for (const auto& l : a.locations)
    if (!l.invariant.empty()) throw std::invalid_argument("complement: location invariants are not supported");
  TimedAutomaton out = a;
  out.alphabet = alphabet;
  const int m = a.num_clocks();
  const int sink = static_cast<int>(out.locations.size());
  std::vector<Edge> extra;
  for (int l = 0; l < static_cast<int>(a.locations.size()); ++l)
    for (const auto& ev : alphabet) {
      std::vector<Box> free{box_of({}, m)};
      for (const auto& e : a.edges) {
        if (e.source != l || e.event != ev) continue;
        Box g = box_of(e.guard, m);
        std::vector<Box> next;
        for (const auto& f : free)
          for (auto& piece : box_subtract(f, g)) next.push_back(std::move(piece));
        free = std::move(next);
      }
      for (const auto& f : free) extra.push_back(Edge{l, ev, guard_of(f), std::vector<Update>(m), sink});
    }
  if (extra.empty()) return out;
  std::string name = "sink";
  while (out.location_index(name) >= 0) name += "_";
  out.locations.push_back(Location{name, false, {}});
  for (auto& e : extra) out.edges.push_back(std::move(e));
  for (const auto& ev : alphabet) out.edges.push_back(Edge{sink, ev, {}, std::vector<Update>(m), sink});
  return out;
}

std::vector<std::string> union_alphabet(const TimedAutomaton& a, const TimedAutomaton& b) {
  std::vector<std::string> s = a.alphabet;
  for (const auto& x : b.alphabet)
    if (std::find(s.begin(), s.end(), x) == s.end()) s.push_back(x);
  return s;
}

struct Step {
  Box guard;
  std::vector<Update> updates;
  std::string event;
};

// Product (or single) automaton view for the zone search.
struct SearchGraph {
  int clocks = 0;
  std::vector<Rational> M;
  // successors(state) -> (event, box, updates, next state, edge tag)
  struct Succ {
    Step step;
    std::pair<int, int> next;
    int tag;
  };
  std::function<std::vector<Succ>(std::pair<int, int>)> succ;
};

struct Node {
  std::pair<int, int> loc;
  Zone zone;
  int parent;
  Step step;
};

// BFS over (location pair, zone); returns the node index satisfying `stop` or -1.
int explore(const SearchGraph& g, const std::function<bool(std::pair<int, int>)>& stop, std::vector<Node>& nodes,
            std::function<void(int)> on_tag = nullptr) {
  Zone z0(g.clocks);
  z0.up();
  z0.normalize(g.M);
  nodes.push_back(Node{{0, 0}, z0, -1, {}});
  std::map<std::pair<int, int>, std::vector<int>> seen;
  seen[{0, 0}].push_back(0);
  std::deque<int> work{0};
  if (stop && stop({0, 0})) return 0;
  while (!work.empty()) {
    int cur = work.front();
    work.pop_front();
    auto loc = nodes[cur].loc;
    for (auto& s : g.succ(loc)) {
      Zone z = nodes[cur].zone;
      if (!z.meet(s.step.guard)) continue;
      if (on_tag) on_tag(s.tag);
      z = z.post(s.step.updates);
      z.up();
      z.normalize(g.M);
      if (z.empty()) continue;
      auto& lst = seen[s.next];
      bool dominated = false;
      for (int k : lst)
        if (nodes[k].zone.includes(z)) {
          dominated = true;
          break;
        }
      if (dominated) continue;
      nodes.push_back(Node{s.next, z, cur, s.step});
      int idx = static_cast<int>(nodes.size()) - 1;
      lst.push_back(idx);
      if (stop && stop(s.next)) return idx;
      work.push_back(idx);
    }
  }
  return -1;
}

TimedWord reconstruct(const std::vector<Node>& nodes, int last, int clocks) {
  std::vector<const Step*> path;
  for (int k = last; nodes[k].parent >= 0; k = nodes[k].parent) path.push_back(&nodes[k].step);
  std::reverse(path.begin(), path.end());
  const std::size_t m = path.size();
  // Exact forward zones.
  std::vector<Zone> E;
  Zone z(clocks);
  z.up();
  E.push_back(z);
  for (std::size_t k = 0; k < m; ++k) {
    Zone n = E.back();
    n.meet(path[k]->guard);
    n = n.post(path[k]->updates);
    n.up();
    if (n.empty()) throw std::logic_error("counterexample reconstruction: infeasible path");
    E.push_back(n);
  }
  // Backward: W[k] = valuations right before taking step k+1 (after delay).
  std::vector<Zone> W(m + 1, Zone(clocks));
  W[m] = E[m];
  for (std::size_t k = m; k-- > 0;) {
    Zone next = W[k + 1];
    next.down();
    Zone w = next.pre(path[k]->updates);
    w.meet(E[k]);
    w.meet(path[k]->guard);
    if (w.empty()) throw std::logic_error("counterexample reconstruction: empty backward set");
    W[k] = w;
  }
  std::vector<Rational> nu(clocks, Rational(0));
  TimedWord word;
  word.durations.clear();
  for (std::size_t k = 0; k <= m; ++k) {
    Rational d = 0;
    if (k < m) {
      auto win = W[k].delay_window(nu);
      if (!win) throw std::logic_error("counterexample reconstruction: no delay");
      d = pick_delay(*win);
    }
    word.durations.push_back(d);
    for (auto& x : nu) x += d;
    if (k < m) {
      word.events.push_back(path[k]->event);
      nu = apply_updates(path[k]->updates, nu);
    }
  }
  return word;
}

}  // namespace

TimedAutomaton complete(const TimedAutomaton& a) { return complete_over(a, a.alphabet); }

TimedAutomaton complement(const TimedAutomaton& a) {
  TimedAutomaton c = complete(a);
  for (auto& l : c.locations) l.accepting = !l.accepting;
  return c;
}

std::optional<TimedWord> find_distinguishing_word(const TimedAutomaton& a, const TimedAutomaton& b) {
  auto sigma = union_alphabet(a, b);
  TimedAutomaton ca = complete_over(a, sigma);
  TimedAutomaton cb = complete_over(b, sigma);
  // Re-root so that initial locations are index 0 in the search.
  const int ma = ca.num_clocks(), mb = cb.num_clocks();
  SearchGraph g;
  g.clocks = ma + mb;
  g.M = ca.max_constants();
  auto mbv = cb.max_constants();
  g.M.insert(g.M.end(), mbv.begin(), mbv.end());
  auto real = [&](std::pair<int, int> p) {
    auto fix = [](int x, int init) { return x == 0 ? init : (x == init ? 0 : x); };
    return std::make_pair(fix(p.first, ca.initial), fix(p.second, cb.initial));
  };
  auto unreal = real;  // the swap is an involution
  std::vector<std::vector<int>> out_a(ca.locations.size()), out_b(cb.locations.size());
  for (int i = 0; i < static_cast<int>(ca.edges.size()); ++i) out_a[ca.edges[i].source].push_back(i);
  for (int i = 0; i < static_cast<int>(cb.edges.size()); ++i) out_b[cb.edges[i].source].push_back(i);
  g.succ = [&](std::pair<int, int> s) {
    auto [la, lb] = real(s);
    std::vector<SearchGraph::Succ> out;
    for (const auto& ev : sigma)
      for (int ia : out_a[la]) {
        const Edge& ea = ca.edges[ia];
        if (ea.event != ev) continue;
        for (int ib : out_b[lb]) {
          const Edge& eb = cb.edges[ib];
          if (eb.event != ev) continue;
          Box ga = box_of(ea.guard, ma), gb = box_of(eb.guard, mb);
          Box g2 = ga;
          g2.insert(g2.end(), gb.begin(), gb.end());
          if (box_empty(g2)) continue;
          std::vector<Update> ups(ma + mb);
          for (int j = 0; j < ma; ++j) {
            ups[j] = ea.updates.empty() ? Update{} : ea.updates[j];
          }
          for (int j = 0; j < mb; ++j) {
            Update u = eb.updates.empty() ? Update{} : eb.updates[j];
            if (u.kind == Update::Kind::Copy) u.src += ma;
            ups[ma + j] = u;
          }
          out.push_back({Step{g2, ups, ev}, unreal({ea.target, eb.target}), 0});
        }
      }
    return out;
  };
  auto differ = [&](std::pair<int, int> s) {
    auto [la, lb] = real(s);
    return ca.locations[la].accepting != cb.locations[lb].accepting;
  };
  std::vector<Node> nodes;
  int hit = explore(g, differ, nodes);
  if (hit < 0) return std::nullopt;
  return reconstruct(nodes, hit, g.clocks);
}

Reachability reachable(const TimedAutomaton& a) {
  Reachability r;
  r.location.assign(a.locations.size(), false);
  r.edge.assign(a.edges.size(), false);
  const int m = a.num_clocks();
  SearchGraph g;
  g.clocks = m;
  g.M = a.max_constants();
  auto real = [&](int x) { return x == 0 ? a.initial : (x == a.initial ? 0 : x); };
  std::vector<std::vector<int>> out(a.locations.size());
  for (int i = 0; i < static_cast<int>(a.edges.size()); ++i) out[a.edges[i].source].push_back(i);
  g.succ = [&](std::pair<int, int> s) {
    std::vector<SearchGraph::Succ> res;
    for (int i : out[real(s.first)]) {
      const Edge& e = a.edges[i];
      std::vector<Update> ups = e.updates;
      ups.resize(m);
      res.push_back({Step{box_of(e.guard, m), ups, e.event}, {real(e.target), 0}, i});
    }
    return res;
  };
  std::vector<Node> nodes;
  explore(g, nullptr, nodes, [&](int tag) { r.edge[tag] = true; });
  for (const auto& n : nodes) r.location[real(n.loc.first)] = true;
  return r;
}

namespace {

// Two guards equal except on one clock whose intervals are adjacent; returns the union.
std::optional<Box> juxtaposed(const Box& a, const Box& b) {
  int diff = -1;
  for (std::size_t c = 0; c < a.size(); ++c) {
    if (a[c] == b[c]) continue;
    if (diff >= 0) return std::nullopt;
    diff = static_cast<int>(c);
  }
  if (diff < 0) return a;
  const Interval& x = a[diff];
  const Interval& y = b[diff];
  auto touches = [](const Interval& lo, const Interval& hi) {
    return !lo.hi.inf && lo.hi.value == hi.lo.value && (lo.hi.strict != hi.lo.strict);
  };
  Box u = a;
  if (touches(x, y))
    u[diff] = Interval{x.lo, y.hi};
  else if (touches(y, x))
    u[diff] = Interval{y.lo, x.hi};
  else
    return std::nullopt;
  return u;
}

}  // namespace

TimedAutomaton simplify(const TimedAutomaton& in) {
  TimedAutomaton a = in;
  const int m = a.num_clocks();
  for (auto& e : a.edges) e.updates.resize(m);
  // Merge juxtaposed twins.
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < a.edges.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < a.edges.size() && !merged; ++j) {
        Edge& e = a.edges[i];
        const Edge& f = a.edges[j];
        if (e.source != f.source || e.target != f.target || e.event != f.event || e.updates != f.updates) continue;
        auto u = juxtaposed(box_of(e.guard, m), box_of(f.guard, m));
        if (!u) continue;
        e.guard = guard_of(*u);
        a.edges.erase(a.edges.begin() + static_cast<long>(j));
        merged = true;
      }
  }
  Reachability r = reachable(a);
  const int L = static_cast<int>(a.locations.size());
  // Backward closure to accepting locations over fired edges.
  std::vector<bool> live(L, false);
  for (int l = 0; l < L; ++l) live[l] = r.location[l] && a.locations[l].accepting;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
      const Edge& e = a.edges[i];
      if (r.edge[i] && live[e.target] && !live[e.source]) {
        live[e.source] = true;
        changed = true;
      }
    }
  }
  live[a.initial] = true;
  std::vector<int> remap(L, -1);
  TimedAutomaton out;
  out.alphabet = a.alphabet;
  out.clocks = a.clocks;
  for (int l = 0; l < L; ++l)
    if (live[l]) {
      remap[l] = static_cast<int>(out.locations.size());
      out.locations.push_back(a.locations[l]);
    }
  out.initial = remap[a.initial];
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    const Edge& e = a.edges[i];
    if (!r.edge[i] || remap[e.source] < 0 || remap[e.target] < 0) continue;
    Edge f = e;
    f.source = remap[e.source];
    f.target = remap[e.target];
    out.edges.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------- render

std::string to_string(const ClockConstraint& c, const std::vector<std::string>& clocks) {
  static const char* ops[] = {"<", "<=", "==", ">=", ">"};
  return clocks[c.clock] + " " + ops[static_cast<int>(c.op)] + " " + std::to_string(c.value);
}

std::string to_string(const Update& u, int target, const std::vector<std::string>& clocks) {
  switch (u.kind) {
    case Update::Kind::Keep: return clocks[target] + " := " + clocks[target];
    case Update::Kind::Copy: return clocks[target] + " := " + clocks[u.src];
    case Update::Kind::Const: return clocks[target] + " := " + to_string(u.value);
  }
  return {};
}

std::string to_dot(const TimedAutomaton& a) {
  std::string s = "digraph dta {\n  rankdir=LR;\n  __init [shape=point];\n";
  for (const auto& l : a.locations)
    s += "  \"" + l.name + "\" [shape=" + (l.accepting ? "doublecircle" : "circle") + "];\n";
  s += "  __init -> \"" + a.locations[a.initial].name + "\";\n";
  for (const auto& e : a.edges) {
    std::string label = e.event;
    std::string g;
    for (const auto& c : guard_of(box_of(e.guard, a.num_clocks()))) g += (g.empty() ? "" : " && ") + to_string(c, a.clocks);
    if (!g.empty()) label += ", " + g;
    std::string u;
    for (int j = 0; j < static_cast<int>(e.updates.size()); ++j)
      if (e.updates[j].kind != Update::Kind::Keep) u += (u.empty() ? "" : ", ") + to_string(e.updates[j], j, a.clocks);
    if (!u.empty()) label += " / " + u;
    s += "  \"" + a.locations[e.source].name + "\" -> \"" + a.locations[e.target].name + "\" [label=\"" + label + "\"];\n";
  }
  return s + "}\n";
}

}  // namespace learnta
