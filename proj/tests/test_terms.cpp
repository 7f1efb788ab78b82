#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "funring/term.hpp"

using namespace funring;

namespace {

TermUniverse::Ptr comm3() {
  return TermUniverse::commutative({"X1", "X2", "X3"},
                                   {OrderingKind::Deglex, {}});
}

TermUniverse::Ptr free_group_on_a() {
  // free group on one generator presented as (a, b; ab = ba = 1)
  return TermUniverse::presented_monoid(
      {"a", "b"}, {{{0, 1}, {}}, {{1, 0}, {}}}, {OrderingKind::LenLex, {}});
}

TermUniverse::Ptr sat_letter_table() {
  // a o b = a, b o a = b^2 - b, a o a = 0 over words on {a,b,c}
  std::map<std::pair<int, int>, TermSum> entries;
  entries[{0, 1}] = {{Rat(1), Term{{0}, {}}}};
  entries[{1, 0}] = {{Rat(1), Term{{1, 1}, {}}}, {Rat(-1), Term{{1}, {}}}};
  entries[{0, 0}] = {};
  // precedence c > b > a
  return TermUniverse::letter_table({"a", "b", "c"}, entries,
                                    {OrderingKind::LenLex, {2, 1, 0}});
}

}  // namespace

TEST_CASE("commutative terms") {
  auto u = comm3();
  Term a = u->exp_term({2, 1, 0});
  Term b = u->exp_term({1, 0, 1});
  auto prod = u->mul(a, b);
  REQUIRE(prod.size() == 1);
  CHECK(prod[0].second == u->exp_term({3, 1, 1}));

  CHECK(u->compare(u->exp_term({1, 1, 0}), u->exp_term({0, 0, 2})) > 0);
  CHECK(u->compare(a, a) == 0);
  CHECK(u->reductive_leq(u->exp_term({1, 0, 0}), u->exp_term({1, 1, 0})));

  auto cms = u->common_multiples_right(u->exp_term({2, 1, 0}),
                                       u->exp_term({1, 0, 1}), 2);
  REQUIRE(cms.first.size() == 1);
  CHECK(cms.first[0].t == u->exp_term({2, 1, 1}));
  CHECK(cms.second);
}

TEST_CASE("free group ring universe") {
  auto u = free_group_on_a();
  Term a = u->generator(0), b = u->generator(1);
  auto prod = u->mul(a, b);
  REQUIRE(prod.size() == 1);
  CHECK(prod[0].second == u->unit());

  // a^2 o b^2 = 1 after two collapses
  CHECK(u->srs_normalize({0, 0, 1, 1}) == u->unit());
  CHECK(u->srs_normalize({0, 0, 1}) == a);
  CHECK(u->confluence_report().confluent);

  CHECK_FALSE(u->reductive_leq(a, u->word_term({1, 0})));  // no ba left
  CHECK(u->compare(a, b) > 0);
}

TEST_CASE("free word ordering") {
  auto u = TermUniverse::free_words({"a", "b"}, {OrderingKind::LenLex, {}});
  // ab > b^2 under lenlex with a > b
  CHECK(u->compare(u->word_term({0, 1}), u->word_term({1, 1})) > 0);
}

TEST_CASE("monoid with rule ab->a") {
  auto u = TermUniverse::presented_monoid({"a", "b", "c"}, {{{0, 1}, {0}}},
                                          {OrderingKind::LenLex, {2, 1, 0}});
  CHECK(u->srs_normalize({0, 1, 1, 1}) == u->generator(0));
  Term ca = u->word_term({2, 0});
  auto prod = u->mul(ca, u->generator(1));
  REQUIRE(prod.size() == 1);
  CHECK(prod[0].second == ca);
}

TEST_CASE("local confluence checks") {
  auto cmp = [](const std::vector<int>&, const std::vector<int>&) { return 0; };
  CHECK(TermUniverse::srs_local_confluence({{{0, 1}, {}}, {{1, 0}, {}}}, cmp)
            .confluent);
  CHECK(TermUniverse::srs_local_confluence({}, cmp).confluent);
  // ({a,b,c}; ab=a, ac=a, bc=b)
  CHECK(TermUniverse::srs_local_confluence(
            {{{0, 1}, {0}}, {{0, 2}, {0}}, {{1, 2}, {1}}}, cmp)
            .confluent);
  auto bad = TermUniverse::srs_local_confluence({{{0, 1}, {0}}, {{0, 1}, {1}}},
                                                cmp);
  CHECK_FALSE(bad.confluent);
  CHECK_FALSE(bad.failures.empty());
  CHECK_THROWS(TermUniverse::presented_monoid(
      {"a", "b"}, {{{0, 1}, {0}}, {{0, 1}, {1}}}, {OrderingKind::LenLex, {}}));
}

TEST_CASE("solvable universe of the skew example") {
  // X2 o X1 = X2 + X3, X3 o X1 = X1 X3, X3 o X2 = X2 X3
  std::map<std::pair<int, int>, SolvableRelation> rels;
  rels[{1, 0}] = {Rat(0),
                  {{Rat(1), Term{{0, 1, 0}, {}}}, {Rat(1), Term{{0, 0, 1}, {}}}}};
  auto u = TermUniverse::solvable({"X1", "X2", "X3"}, rels,
                                  {OrderingKind::Deglex, {}});
  auto prod = u->mul(u->generator(1), u->generator(0));
  REQUIRE(prod.size() == 2);
  CHECK(prod[0].second == u->exp_term({0, 1, 0}));
  CHECK(prod[1].second == u->exp_term({0, 0, 1}));
  // default pairs commute upward
  auto prod2 = u->mul(u->generator(2), u->generator(0));
  REQUIRE(prod2.size() == 1);
  CHECK(prod2[0].second == u->exp_term({1, 0, 1}));
}

TEST_CASE("matrix unit table") {
  // e_ij o e_kl = delta_jk e_il
  std::vector<std::string> elems{"e11", "e12", "e21", "e22"};
  auto idx = [&](int i, int j) { return (i - 1) * 2 + (j - 1); };
  std::vector<std::vector<TermSum>> table(4, std::vector<TermSum>(4));
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k)
        for (int l = 1; l <= 2; ++l) {
          TermSum s;
          if (j == k) s.push_back({Rat(1), Term{{idx(i, l)}, {}}});
          table[idx(i, j)][idx(k, l)] = s;
        }
  auto u = TermUniverse::finite_table(elems, table,
                                      {OrderingKind::TableRank, {}}, {});
  CHECK(u->mul(Term{{idx(1, 2)}, {}}, Term{{idx(1, 1)}, {}}).empty());
  auto p = u->mul(Term{{idx(1, 2)}, {}}, Term{{idx(2, 1)}, {}});
  REQUIRE(p.size() == 1);
  CHECK(p[0].second == Term{{idx(1, 1)}, {}});
  CHECK_FALSE(u->has_unit());  // the unit e11+e22 is not a single element

  // non-associative tables are rejected
  std::vector<std::vector<TermSum>> bad(2, std::vector<TermSum>(2));
  bad[0][0] = {{Rat(1), Term{{1}, {}}}};  // x*x = y
  bad[0][1] = {{Rat(1), Term{{0}, {}}}};  // x*y = x
  bad[1][0] = {{Rat(1), Term{{0}, {}}}};  // y*x = x
  bad[1][1] = {{Rat(1), Term{{0}, {}}}};  // y*y = x
  CHECK_THROWS(TermUniverse::finite_table({"x", "y"}, bad,
                                          {OrderingKind::TableRank, {}}, {}));
}

TEST_CASE("orderings") {
  auto w = TermUniverse::free_words({"a", "b"}, {OrderingKind::LenLex, {}});
  CHECK(w->compare(w->word_term({0, 1}), w->word_term({1, 1})) > 0);  // ab > bb
  CHECK(w->reductive_leq(w->word_term({1}), w->word_term({1, 0})));   // prefix
  CHECK_FALSE(w->reductive_leq(w->word_term({0}), w->word_term({1, 0})));

  auto sub = TermUniverse::free_words({"a", "b"}, {OrderingKind::LenLex, {}},
                                      ReductiveKind::Subword);
  CHECK(sub->reductive_leq(sub->word_term({1}), sub->word_term({0, 1, 0})));
}

TEST_CASE("two-sided common multiples of words") {
  auto u = TermUniverse::free_words({"a", "b"}, {OrderingKind::LenLex, {}},
                                    ReductiveKind::Subword);
  Term ab = u->word_term({0, 1});
  Term ba = u->word_term({1, 0});
  auto [cms, complete] = u->common_multiples_two_sided(ab, ba, 2);
  CHECK(complete);
  bool has_aba = false, has_bab = false;
  for (const auto& cm : cms) {
    if (cm.t == u->word_term({0, 1, 0})) has_aba = true;
    if (cm.t == u->word_term({1, 0, 1})) has_bab = true;
  }
  CHECK(has_aba);
  CHECK(has_bab);

  // disjoint heads give no right common multiples
  auto [cmr, c2] = u->common_multiples_right(u->word_term({0}),
                                             u->word_term({1}), 3);
  CHECK(cmr.empty());
}

TEST_CASE("the LCM monoid of the critical-pair example") {
  // (a,b,c,d1,d2,x1,x2 ; ax_i = cx_i, bx_i = cx_i, d_j x_i = x_i d_j)
  std::vector<std::string> L{"a", "b", "c", "d", "e", "x", "y"};
  // d == d1, e == d2, x == x1, y == x2
  std::vector<SrsRule> rules{
      {{0, 5}, {2, 5}}, {{0, 6}, {2, 6}}, {{1, 5}, {2, 5}}, {{1, 6}, {2, 6}},
      {{3, 5}, {5, 3}}, {{3, 6}, {6, 3}}, {{4, 5}, {5, 4}}, {{4, 6}, {6, 4}}};
  auto u = TermUniverse::presented_monoid(L, rules,
                                          {OrderingKind::LenLex, {}});
  CHECK(u->confluence_report().confluent);
  auto [cms, complete] =
      u->common_multiples_right(u->generator(0), u->generator(1), 2);
  REQUIRE(cms.size() == 2);
  bool has_cx = false, has_cy = false;
  for (const auto& cm : cms) {
    if (cm.t == u->word_term({2, 5})) {
      has_cx = true;
      CHECK(cm.w1 == u->generator(5));
      CHECK(cm.w2 == u->generator(5));
    }
    if (cm.t == u->word_term({2, 6})) has_cy = true;
  }
  CHECK(has_cx);
  CHECK(has_cy);
}

TEST_CASE("letter table universe of the saturator example") {
  auto u = sat_letter_table();
  Term ca = u->word_term({2, 0});
  // ca o b = ca, ca o a = 0
  auto p1 = u->mul(ca, u->generator(1));
  REQUIRE(p1.size() == 1);
  CHECK(p1[0].second == ca);
  CHECK(u->mul(ca, u->generator(0)).empty());
  // b o a = b^2 - b
  auto p2 = u->mul(u->generator(1), u->generator(0));
  REQUIRE(p2.size() == 2);
  CHECK(p2[0].second == u->word_term({1, 1}));
  CHECK(p2[1].first == -1);
  // ba is not a carrier word
  CHECK_THROWS(u->word_term({1, 0}));
  // collapse multipliers of ca are b and a
  auto ws = u->collapse_multipliers(ca, false);
  REQUIRE(ws.size() == 2);
  // the table is not associative on all triples; the probe records this
  CHECK(u->stability_warning().has_value());
}

TEST_CASE("associativity samples") {
  std::mt19937_64 rng(5);
  for (auto u : {comm3(), free_group_on_a()}) {
    auto pool = u->enumerate_terms(25, 3);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < 60; ++i) {
      const Term& a = pool[pick(rng)];
      const Term& b = pool[pick(rng)];
      const Term& c = pool[pick(rng)];
      TermSum lhs, rhs;
      for (const auto& [q, t] : u->mul(a, b))
        for (const auto& [q2, t2] : u->mul(t, c)) lhs.emplace_back(q * q2, t2);
      for (const auto& [q, t] : u->mul(b, c))
        for (const auto& [q2, t2] : u->mul(a, t)) rhs.emplace_back(q * q2, t2);
      CHECK(u->canonicalize(lhs) == u->canonicalize(rhs));
    }
  }
}

namespace {

// rightmost-first rewriting as an independent oracle for confluent systems
std::vector<int> rightmost_normalize(const std::vector<SrsRule>& rules,
                                     std::vector<int> w) {
  bool fired = true;
  while (fired) {
    fired = false;
    for (std::size_t from = w.size(); from-- > 0 && !fired;)
      for (const auto& r : rules) {
        if (from + r.lhs.size() > w.size()) continue;
        if (!std::equal(r.lhs.begin(), r.lhs.end(), w.begin() + from))
          continue;
        std::vector<int> nw(w.begin(), w.begin() + from);
        nw.insert(nw.end(), r.rhs.begin(), r.rhs.end());
        nw.insert(nw.end(), w.begin() + from + r.lhs.size(), w.end());
        w = std::move(nw);
        fired = true;
        break;
      }
  }
  return w;
}

}  // namespace

TEST_CASE("srs normalization is idempotent and strategy independent") {
  auto u = free_group_on_a();
  std::vector<SrsRule> rules{{{0, 1}, {}}, {{1, 0}, {}}};
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> len(0, 8), letter(0, 1);
  for (int i = 0; i < 200; ++i) {
    std::vector<int> w;
    int n = len(rng);
    for (int k = 0; k < n; ++k) w.push_back(letter(rng));
    Term nf = u->srs_normalize(w);
    CHECK(u->srs_normalize(nf.data) == nf);
    CHECK(nf.data == rightmost_normalize(rules, w));
  }
}

TEST_CASE("reductive ordering is consistent with the term ordering") {
  for (auto u : {comm3(), free_group_on_a(), sat_letter_table()}) {
    auto pool = u->enumerate_terms(40, 3);
    for (const auto& s : pool)
      for (const auto& t : pool)
        if (u->reductive_leq(s, t)) CHECK(u->compare(t, s) >= 0);
  }
}
