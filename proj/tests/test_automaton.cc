#include "helpers.hh"
#include "learnta/recognizable.hh"
#include "learnta/zone.hh"

#include <doctest.h>

using namespace th;

namespace {

const char* kFig4c = R"({
  "format": "learnta-dta",
  "version": 1,
  "alphabet": ["a"],
  "clocks": ["c0", "c1"],
  "locations": ["l0", "l1"],
  "initial": "l0",
  "accepting": ["l0"],
  "edges": [
    {"source": "l0", "event": "a", "guard": ["c0 >= 1"], "updates": ["c1 := 0"], "target": "l1"},
    {"source": "l0", "event": "a", "guard": ["c0 < 1"], "updates": [], "target": "l0"},
    {"source": "l1", "event": "a", "guard": ["c1 <= 1"], "updates": ["c0 := c1"], "target": "l0"},
    {"source": "l1", "event": "a", "guard": ["c1 > 1"], "updates": [], "target": "l1"}
  ]
})";

RecognizableSpec universal_spec() {
  RecognizableSpec s;
  s.alphabet = {"a"};
  s.P = {lang("", {{0, 0, pt(0)}})};
  s.parent = {-1};
  s.via = {""};
  s.accepting = {true};
  s.ids = {0};
  s.rules = {{0, "", 0, {}}, {0, "a", 0, {}}};
  return s;
}

TimedAutomaton one_clock(const std::string& edges, const std::string& accepting = "\"l0\"") {
  return parse_automaton(R"({"format": "learnta-dta", "version": 1, "alphabet": ["a"], "clocks": ["c"],
    "locations": ["l0", "l1", "l2"], "initial": "l0", "accepting": [)" +
                         accepting + R"(], "edges": [)" + edges + "]}");
}

}  // namespace

TEST_CASE("simulate on the running example") {
  auto a = data("fig1c.json");
  CHECK(simulate(a, W("0.5 a 0")));
  CHECK_FALSE(simulate(a, W("1 a 0")));
  CHECK(simulate(a, W("0")));
  CHECK(simulate(a, W("1 a 0.5 a 0")));
  CHECK_FALSE(simulate(a, W("1 a 1.5 a 0")));
}

TEST_CASE("determinism check") {
  auto bad = data("fig1c.json");
  bad.edges[0].guard = {ClockConstraint{0, Cmp::Lt, 2}};
  auto nd = find_nondeterminism(bad);
  REQUIRE(nd.has_value());
  CHECK(nd->first == 0);
  CHECK(nd->second == "a");
  CHECK_THROWS_AS(require_deterministic(bad), NondeterministicInput);
  CHECK_THROWS_AS(parse_automaton(serialize(bad)), NondeterministicInput);
  CHECK_NOTHROW(require_deterministic(data("fig1c.json")));
}

TEST_CASE("updates") {
  std::vector<Rational> nu{Rational(3, 2), Rational(1, 4)};
  auto out = apply_updates({Update::copy(1), Update::constant(2)}, nu);
  CHECK(out == std::vector<Rational>{Rational(1, 4), Rational(2)});
  CHECK(apply_updates({Update::keep(), Update::keep()}, nu) == nu);
}

TEST_CASE("complement") {
  auto a = data("fig1c.json");
  auto c = complement(a);
  CHECK(simulate(c, W("1 a 0")));
  CHECK_FALSE(simulate(c, W("0.5 a 0")));
  CHECK_NOTHROW(require_deterministic(c));

  auto u = simplify(build_dta(universal_spec()));
  auto cu = complement(u);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    auto w = rand_word(rng, {"a"}, 4, 3);
    CHECK(simulate(u, w));
    CHECK_FALSE(simulate(cu, w));
  }
}

TEST_CASE("distinguishing words") {
  auto target = data("fig1c.json");
  CHECK_FALSE(find_distinguishing_word(target, target).has_value());

  auto a1 = simplify(build_dta(universal_spec()));
  auto w = find_distinguishing_word(a1, target);
  REQUIRE(w.has_value());
  CHECK(simulate(a1, *w) != simulate(target, *w));
  CHECK(*w == W("1 a 0"));

  auto a3 = parse_automaton(kFig4c);
  CHECK_FALSE(find_distinguishing_word(a3, target).has_value());
  CHECK_FALSE(find_distinguishing_word(target, a3).has_value());
  CHECK_FALSE(find_distinguishing_word(complement(complement(target)), target).has_value());
}

TEST_CASE("build_dta of the initial table is universal with one location") {
  auto a = simplify(build_dta(universal_spec()));
  CHECK(a.locations.size() == 1);
  CHECK(a.locations[0].accepting);
  for (const auto& e : a.edges) {
    CHECK(e.event == "a");
    CHECK(e.target == 0);
  }
}

TEST_CASE("build_dta rejects a chain end that is not mapped onto itself") {
  auto s = universal_spec();
  s.rules[0].R.pairs = {{0, 0}};
  CHECK_THROWS_AS(build_dta(s), IncompatibleMorphism);
}

TEST_CASE("simplify removes dead locations and merges adjacent guards") {
  auto a = one_clock(R"({"source": "l0", "event": "a", "guard": ["c < 1"], "updates": [], "target": "l0"},
                        {"source": "l0", "event": "a", "guard": ["c == 1"], "updates": [], "target": "l0"},
                        {"source": "l0", "event": "a", "guard": ["c > 1"], "updates": [], "target": "l1"},
                        {"source": "l2", "event": "a", "guard": [], "updates": [], "target": "l0"})");
  auto s = simplify(a);
  CHECK(s.locations.size() == 1);
  REQUIRE(s.edges.size() == 1);
  CHECK(s.edges[0].guard == Guard{ClockConstraint{0, Cmp::Le, 1}});
  std::mt19937_64 rng(11);
  for (int k = 0; k < 300; ++k) {
    auto w = rand_word(rng, {"a"}, 4, 2);
    CHECK(simulate(s, w) == simulate(a, w));
  }
}

TEST_CASE("zones") {
  Zone z(1);
  z.up();
  CHECK(z.contains({Rational(5)}));
  CHECK(z.meet(Box{oo(1, 2)}));
  CHECK_FALSE(z.contains({Rational(1)}));
  CHECK(z.contains({Rational(3, 2)}));
  auto p = z.post({Update::constant(Rational(1, 2))});
  CHECK(p.contains({Rational(1, 2)}));
  CHECK_FALSE(p.contains({Rational(0)}));
  Zone start(1);
  auto win = start.delay_window({Rational(0)});
  REQUIRE(win.has_value());
  z = Zone(1);
  z.up();
  z.meet(Box{oo(1, 2)});
  auto w2 = z.delay_window({Rational(0)});
  REQUIRE(w2.has_value());
  Rational d = pick_delay(*w2);
  CHECK(d > 1);
  CHECK(d < 2);
}

TEST_CASE("file format round trip") {
  for (const char* f : {"fig1c.json", "unbalanced1.json", "unbalanced2.json", "nonconvex.json", "train.json"}) {
    auto text = read_text(std::string(LEARNTA_DATA_DIR) + "/" + f);
    CHECK(serialize(parse_automaton(text)) == text);
  }
  auto a3 = parse_automaton(kFig4c);
  CHECK(serialize(parse_automaton(serialize(a3))) == serialize(a3));
  CHECK(to_dot(a3).find("digraph") != std::string::npos);
}

TEST_CASE("guard strings") {
  std::vector<std::string> clocks{"c", "d"};
  auto g = parse_guard("1 < c <= 3", clocks);
  REQUIRE(g.size() == 2);
  CHECK(guard_strings(g, clocks) == std::vector<std::string>{"1 < c <= 3"});
  CHECK(guard_strings(parse_guard("c > 1", clocks), clocks) == std::vector<std::string>{"c > 1"});
  CHECK(parse_guard("d == 2", clocks) == Guard{ClockConstraint{1, Cmp::Eq, 2}});
  CHECK_THROWS_AS(parse_guard("e < 1", clocks), ParseError);
}
