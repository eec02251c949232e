#include "helpers.hh"
#include "learnta/congruence.hh"

#include <doctest.h>

using namespace th;

namespace {

struct Row {
  ElementaryLanguage lang;
  std::vector<SymbolicMembership> cells;
  RowData data() const { return RowData{&lang, &cells}; }
};

Row row(Teacher& t, const ElementaryLanguage& p, const std::vector<ElementaryLanguage>& S) {
  Row r{p, {}};
  for (const auto& s : S) r.cells.push_back(t.symbolic_membership(juxtapose(p, s)));
  return r;
}

std::vector<ElementaryLanguage> fig4_suffixes() {
  return {lang("", {{0, 0, pt(0)}}), lang("a", {{0, 0, oo(0, 1)}, {1, 1, pt(0)}})};
}

bool has_pair(const RenamingEquation& r, int i, int j) {
  return std::find(r.pairs.begin(), r.pairs.end(), std::make_pair(i, j)) != r.pairs.end();
}

}  // namespace

TEST_CASE("example pair is equivalent with T(0,1) = T'(1,2)") {
  Teacher t(data("example1.json"));
  auto S = fig4_suffixes();
  auto p1 = row(t, lang("a", {{0, 0, oo(0, 1)}, {1, 1, oo(0, 1)}, {0, 1, oo(0, 1)}}), S);
  auto p2 = row(t,
                lang("a a", {{0, 0, oo(1, 2)},
                             {1, 1, oo(0, 1)},
                             {2, 2, oo(0, 1)},
                             {1, 2, oo(0, 1)},
                             {0, 1, oo(1, 2)},
                             {0, 2, oo(1, 2)}}),
                S);
  REQUIRE(p1.lang.simple());
  REQUIRE(p2.lang.simple());
  RenamingOptions opt;
  opt.function_like = false;
  auto r = find_renaming(p1.data(), p2.data(), S, opt);
  REQUIRE(r.has_value());
  CHECK(has_pair(*r, 0, 1));
  // T'(0,2) in (1,2) has no source of equal range in p1.
  CHECK_FALSE(find_renaming(p1.data(), p2.data(), S).has_value());
  auto bf = brute_force_renaming(p1.data(), p2.data(), S);
  REQUIRE(bf.has_value());
  CHECK(bf->pairs == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(check_pair(p1.data(), p2.data(), S, *r));
  CHECK(check_pair(p2.data(), p1.data(), S, r->transposed()));
  CHECK_FALSE(check_pair(p1.data(), p2.data(), S, RenamingEquation{}));
}

TEST_CASE("p1 and p0 are inequivalent after the first counterexample") {
  Teacher t(data("fig1c.json"));
  auto S = fig4_suffixes();
  auto p0 = row(t, lang("", {{0, 0, pt(0)}}), S);
  auto p1 = row(t, lang("", {{0, 0, oo(0, 1)}}), S);
  CHECK(p0.cells[1].full);
  CHECK_FALSE(p1.cells[1].full);
  CHECK_FALSE(find_renaming(p1.data(), p0.data(), S).has_value());
  CHECK_FALSE(brute_force_renaming(p1.data(), p0.data(), S).has_value());
  CHECK_FALSE(check_pair(p1.data(), p0.data(), S, RenamingEquation{}));

  auto p2 = row(t, lang("a", {{0, 0, pt(0)}, {1, 1, pt(0)}}), S);
  auto r = find_renaming(p2.data(), p0.data(), S);
  REQUIRE(r.has_value());
  CHECK(check_pair(p2.data(), p0.data(), S, *r));
}

TEST_CASE("renaming example with T(1,1) = T'(2,2)") {
  Teacher t(data("fig1c.json"));
  std::vector<ElementaryLanguage> S{lang("a", {{0, 0, oo(0, 1)}, {1, 1, pt(0)}})};
  auto p = row(t, lang("a", {{0, 0, oo(1, 2)}, {0, 1, oo(1, 2)}, {1, 1, oo(0, 1)}}), S);
  auto q = row(t, lang("a a", {{0, 0, oo(0, 1)}, {0, 1, oo(1, 2)}, {1, 2, oo(1, 2)}, {2, 2, oo(0, 1)}}), S);
  RenamingEquation r{{{1, 2}}};
  CHECK(satisfiable(p.lang.cond, q.lang.cond, r));
  CHECK(check_pair(p.data(), q.data(), S, r));
  CHECK_FALSE(check_pair(p.data(), q.data(), S, RenamingEquation{}));

  // Lifted left membership restricted by R matches the lifted right one.
  auto left = apply_renaming(p.cells[0], p.lang, q.lang, S[0], r, true);
  auto right = apply_renaming(q.cells[0], p.lang, q.lang, S[0], r, false);
  for (const auto& d : left) CHECK(covered_by(d, right));
  for (const auto& d : right) CHECK(covered_by(d, left));
}

TEST_CASE("rows are equivalent to themselves") {
  Teacher t(data("unbalanced1.json"));
  std::vector<ElementaryLanguage> S{lang("", {{0, 0, pt(0)}})};
  std::mt19937_64 rng(17);
  for (int k = 0; k < 30; ++k) {
    auto p = row(t, of_word(rand_word(rng, t.target().alphabet, 2, 2)), S);
    auto r = find_renaming(p.data(), p.data(), S);
    REQUIRE(r.has_value());
    CHECK(check_pair(p.data(), p.data(), S, *r));
  }
}

TEST_CASE("renaming equation printing and transposition") {
  RenamingEquation r{{{0, 1}, {1, 2}}};
  CHECK(r.transposed().pairs == std::vector<std::pair<int, int>>{{1, 0}, {2, 1}});
  CHECK_FALSE(r.str(1, 2).empty());
  CHECK(RenamingEquation{}.top());
}

TEST_CASE("candidate graph and function-like completion") {
  Teacher t(data("example1.json"));
  auto S = fig4_suffixes();
  auto p1 = row(t, lang("a", {{0, 0, oo(0, 1)}, {1, 1, oo(0, 1)}, {0, 1, oo(0, 1)}}), S);
  auto p2 = row(t,
                lang("a a", {{0, 0, oo(1, 2)},
                             {1, 1, oo(0, 1)},
                             {2, 2, oo(0, 1)},
                             {1, 2, oo(0, 1)},
                             {0, 1, oo(1, 2)},
                             {0, 2, oo(1, 2)}}),
                S);
  CHECK(nontrivial_vars(p1.data(), S) == std::vector<int>{0, 1});
  CHECK(nontrivial_vars(p2.data(), S) == std::vector<int>{1, 2});
  auto g = candidate_graph(p1.data(), p2.data(), S);
  CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 1}, {1, 2}});
  REQUIRE(g.components.size() == 1);
  auto cands = candidate_renamings(g, p1.lang, p2.lang);
  REQUIRE_FALSE(cands.empty());
  bool found = false;
  for (const auto& r : cands) found = found || (has_pair(r, 0, 1) && check_pair(p1.data(), p2.data(), S, r));
  CHECK(found);
  CHECK_FALSE(complete_function_like(RenamingEquation{{{0, 1}}}, p1.lang, p2.lang).has_value());

  // Unreset time variable: every variable of the right side has a source.
  auto q0 = lang("a", {{0, 0, oo(0, 1)}, {0, 1, oo(0, 1)}, {1, 1, oo(0, 1)}});
  auto q1 = lang("a", {{0, 0, oo(0, 1)}, {0, 1, oo(0, 1)}, {1, 1, oo(0, 1)}});
  auto f = complete_function_like(RenamingEquation{{{0, 0}}}, q0, q1);
  REQUIRE(f.has_value());
  CHECK(f->pairs.size() == 2);
  for (auto [i, j] : f->pairs) CHECK(q0.cond.range(i, 1) == q1.cond.range(j, 1));
}
