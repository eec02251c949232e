#include "helpers.hh"
#include "learnta/learner.hh"

#include <doctest.h>

using namespace th;

namespace {

ElementaryLanguage s1() { return lang("a", {{0, 0, oo(0, 1)}, {1, 1, pt(0)}}); }

}  // namespace

TEST_CASE("initial table is cohesive and yields the universal hypothesis") {
  Teacher t(data("fig1c.json"));
  ObservationTable o(t, {"a"});
  CHECK(o.check_cohesion().kind == CohesionReport::Kind::Cohesive);
  REQUIRE(o.p_order().size() == 1);
  CHECK(o.rows()[0].lang == lang("", {{0, 0, pt(0)}}));
  CHECK(o.find_row(lang("", {{0, 0, oo(0, 1)}})) >= 0);
  CHECK(o.find_row(lang("a", {{0, 0, pt(0)}, {1, 1, pt(0)}})) >= 0);

  auto h = o.make_dta();
  CHECK(h.locations.size() == 1);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 200; ++k) CHECK(simulate(h, rand_word(rng, {"a"}, 4, 3)));
}

TEST_CASE("counterexample analysis follows the running example") {
  Teacher t(data("fig1c.json"));
  ObservationTable o(t, {"a"});
  o.make_cohesive();
  auto h = o.make_dta();
  auto a = analyze_cex(o, t, W("1 a 0"), h);
  CHECK(a.chain == std::vector<TimedWord>{W("1 a 0"), W("0.5 a 0"), W("0 a 0"), W("0")});
  REQUIRE(a.suffix.has_value());
  CHECK(*a.suffix == s1());
  CHECK_THROWS_AS(analyze_cex(o, t, W("0.5 a 0"), h), NoFlipFound);
}

TEST_CASE("the new suffix breaks closedness at p1") {
  Teacher t(data("fig1c.json"));
  ObservationTable o(t, {"a"});
  CHECK(o.add_suffix(s1()));
  CHECK_FALSE(o.add_suffix(s1()));
  auto rep = o.check_cohesion();
  CHECK(rep.kind == CohesionReport::Kind::NotClosed);
  REQUIRE(rep.row >= 0);
  CHECK(o.rows()[rep.row].lang == lang("", {{0, 0, oo(0, 1)}}));

  o.repair(rep);
  CHECK(o.rows()[rep.row].in_p);
  const auto& r = o.rows()[rep.row];
  REQUIRE(r.time_child >= 0);
  CHECK(o.rows()[r.time_child].lang == lang("", {{0, 0, pt(1)}}));
  REQUIRE(r.event_child.count("a"));
  CHECK(o.rows()[r.event_child.at("a")].lang == lang("a", {{0, 0, oo(0, 1)}, {0, 1, oo(0, 1)}, {1, 1, pt(0)}}));
  CHECK(o.rows()[r.event_child.at("a")].cells.size() == 2);
}

TEST_CASE("cohesive tables are row-faithful") {
  Teacher t(data("fig1c.json"));
  ObservationTable o(t, {"a"});
  o.add_suffix(s1());
  o.make_cohesive();
  CHECK(o.check_cohesion().kind == CohesionReport::Kind::Cohesive);
  auto h = o.make_dta();
  std::mt19937_64 rng(9);
  for (std::size_t r = 0; r < o.rows().size(); ++r)
    for (int k = 0; k < 5; ++k) {
      auto tau = random_member_durations(o.rows()[r].lang.cond, rng);
      auto w = flatten(o.rows()[r].lang.word, tau);
      CHECK(simulate(h, w) == t.membership(w));
    }
}

TEST_CASE("learning the running example") {
  Teacher t(data("fig1c.json"));
  auto res = learn(t);
  CHECK_FALSE(find_distinguishing_word(res.automaton, t.target()).has_value());
  CHECK(res.hypotheses.size() >= 2);
  CHECK(res.rounds == static_cast<int>(res.hypotheses.size()));
  CHECK(std::find(res.suffixes.begin(), res.suffixes.end(), s1()) != res.suffixes.end());
  CHECK(t.stats().equivalence_count == res.rounds);
  CHECK(t.stats().membership_memoized <= t.stats().membership_raw);
}

TEST_CASE("without time saturation the last time chain never closes") {
  Teacher t(data("fig1c.json"));
  LearnerOptions opt;
  opt.time_saturation = false;
  opt.max_iterations = 8;
  CHECK_THROWS_AS(learn(t, opt), std::runtime_error);
}

TEST_CASE("learning a small two-event target") {
  Teacher t(data("unbalanced1.json"));
  auto res = learn(t);
  CHECK_FALSE(find_distinguishing_word(res.automaton, t.target()).has_value());
  std::mt19937_64 rng(21);
  for (int k = 0; k < 500; ++k) {
    auto w = rand_word(rng, t.target().alphabet, 5, 4);
    CHECK(simulate(res.automaton, w) == simulate(t.target(), w));
  }
}

TEST_CASE("words of rows") {
  Teacher t(data("fig1c.json"));
  ObservationTable o(t, {"a"});
  int r = o.find_row(lang("a", {{0, 0, pt(0)}, {1, 1, pt(0)}}));
  REQUIRE(r >= 0);
  CHECK(o.word(r, {Rational(0), Rational(0)}) == W("0 a 0"));
  CHECK(o.word(0, {Rational(3, 2)}) == W("1.5"));
}
