#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "funring/poly.hpp"

using namespace funring;

namespace {

FunctionRing::Ptr qq_comm3() {
  auto u = TermUniverse::commutative({"X1", "X2", "X3"},
                                     {OrderingKind::Deglex, {}});
  return FunctionRing::make(u, CoefficientDomain::rationals());
}

FunctionRing::Ptr zz_x() {
  auto u = TermUniverse::commutative({"X"}, {OrderingKind::Deglex, {}});
  return FunctionRing::make(u, CoefficientDomain::integers());
}

FunctionRing::Ptr qq_free_group() {
  auto u = TermUniverse::presented_monoid(
      {"a", "b"}, {{{0, 1}, {}}, {{1, 0}, {}}}, {OrderingKind::LenLex, {}});
  return FunctionRing::make(u, CoefficientDomain::rationals());
}

Poly mono(const FunctionRing::Ptr& r, long c, std::vector<int> exps) {
  return Poly::monomial(r, r->domain().from_int(c),
                        r->universe().exp_term(std::move(exps)));
}

}  // namespace

TEST_CASE("addition and subtraction") {
  auto r = qq_comm3();
  Poly f1 = mono(r, 1, {2, 0, 0}) + mono(r, 1, {0, 1, 0});
  Poly f2 = mono(r, 1, {2, 0, 0}) + mono(r, 1, {0, 0, 1});
  Poly d = f1 - f2;
  CHECK(d == mono(r, 1, {0, 1, 0}) - mono(r, 1, {0, 0, 1}));
  CHECK(d.str() == "X2 - X3");
  CHECK((f1 + (-f1)).is_zero());

  auto rz = zz_x();
  Poly g = (mono(rz, 3, {2}) + mono(rz, 1, {1})) -
           (mono(rz, 2, {2}) + mono(rz, 1, {1}));
  CHECK(g == mono(rz, 1, {2}));
}

TEST_CASE("monomial products in a group ring") {
  auto r = qq_free_group();
  const auto& u = r->universe();
  Poly a1 = Poly::monomial(r, r->domain().one(), u.generator(0)) +
            Poly::unit(r);
  Poly p = a1.mul_monomial({r->domain().one(), u.generator(1)}, false);
  // (a+1) o b = 1 + b
  CHECK(p == Poly::monomial(r, r->domain().one(), u.generator(1)) +
                 Poly::unit(r));
  CHECK(p.head_term() == u.generator(1));
  CHECK(a1.mul_monomial({r->domain().one(), u.unit()}, false) == a1);
}

TEST_CASE("products in the ab=a monoid ring") {
  auto u = TermUniverse::presented_monoid({"a", "b", "c"}, {{{0, 1}, {0}}},
                                          {OrderingKind::LenLex, {2, 1, 0}});
  auto r = FunctionRing::make(u, CoefficientDomain::rationals());
  Poly f = Poly::monomial(r, r->domain().one(), u->word_term({2, 0})) +
           Poly::unit(r);  // ca + 1
  Poly h = Poly::monomial(r, r->domain().one(), u->word_term({1, 1})) -
           Poly::monomial(r, r->domain().one(), u->word_term({1}));  // b^2-b
  Poly prod = f.mul(h);
  CHECK(prod == h);  // (ca+1)(b^2 - b) = b^2 - b
  Poly fb = f.mul_monomial({r->domain().one(), u->generator(1)}, false);
  CHECK(fb.head_term() == u->word_term({2, 0}));  // HT(ca + b) = ca
}

TEST_CASE("schoolbook product") {
  auto r = qq_comm3();
  Poly x = mono(r, 1, {1, 0, 0});
  Poly p = (x + Poly::unit(r)).mul(x - Poly::unit(r));
  CHECK(p == mono(r, 1, {2, 0, 0}) - Poly::unit(r));
  CHECK(p.mul(Poly::zero(r)).is_zero());
}

TEST_CASE("head data") {
  auto r = qq_comm3();
  Poly f = mono(r, 1, {2, 0, 0}) + mono(r, 1, {0, 1, 0});
  CHECK(f.head_term() == r->universe().exp_term({2, 0, 0}));
  CHECK(f.head_coeff() == r->domain().one());
  CHECK(f.reductum() == mono(r, 1, {0, 1, 0}));
  CHECK(mono(r, 5, {1, 1, 1}).reductum().is_zero());
  CHECK_THROWS(Poly::zero(r).head_term());
}

TEST_CASE("head monomial in the x*x=1 table ring") {
  std::vector<std::vector<TermSum>> table(2, std::vector<TermSum>(2));
  // elements: x (index 0), 1 (index 1)
  table[0][0] = {{Rat(1), Term{{1}, {}}}};
  table[0][1] = {{Rat(1), Term{{0}, {}}}};
  table[1][0] = {{Rat(1), Term{{0}, {}}}};
  table[1][1] = {{Rat(1), Term{{1}, {}}}};
  auto u = TermUniverse::finite_table({"x", "1"}, table,
                                      {OrderingKind::TableRank, {}},
                                      {{1, 0}});  // 1 <= x declared
  auto r = FunctionRing::make(u, CoefficientDomain::rationals());
  Poly f = Poly::monomial(r, r->domain().one(), Term{{0}, {}}) +
           Poly::monomial(r, r->domain().one(), Term{{1}, {}});
  CHECK(f.head_term() == Term{{0}, {}});
  Poly fx = f.mul_monomial({r->domain().one(), Term{{0}, {}}}, false);
  // HM((x+1) o x) = x while HM(f) o x = 1
  CHECK(fx.head_term() == Term{{0}, {}});
}

TEST_CASE("polynomial comparison") {
  auto r = qq_comm3();
  Poly p = mono(r, 1, {2, 0, 0}) + mono(r, 1, {0, 1, 0});
  Poly q = mono(r, 1, {2, 0, 0}) + mono(r, 1, {0, 0, 1});
  CHECK(poly_compare(p, q) == std::partial_ordering::greater);
  CHECK(poly_compare(p, p) == std::partial_ordering::equivalent);
  CHECK(poly_compare(p, Poly::zero(r)) == std::partial_ordering::greater);

  auto rz = zz_x();
  Poly a = mono(rz, 2, {1});
  Poly b = mono(rz, -1, {1});
  // 2 <_Z -1 at equal head terms
  CHECK(poly_compare(a, b) == std::partial_ordering::less);
}

TEST_CASE("canonicalization is a fixpoint and distributivity holds") {
  auto r = qq_comm3();
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> ev(0, 2), cv(-3, 3);
  auto rnd = [&]() {
    Poly p = Poly::zero(r);
    for (int i = 0; i < 3; ++i)
      p = p + mono(r, cv(rng), {ev(rng), ev(rng), ev(rng)});
    return p;
  };
  for (int i = 0; i < 100; ++i) {
    Poly p = rnd(), q = rnd();
    Monomial m{r->domain().from_int(cv(rng)),
               r->universe().exp_term({ev(rng), ev(rng), ev(rng)})};
    Poly lhs = (p + q).mul_monomial(m, false);
    Poly rhs = p.mul_monomial(m, false) + q.mul_monomial(m, false);
    CHECK(lhs == rhs);
    // re-canonicalization is the identity
    Poly again(r, std::vector<Monomial>(p.monomials().begin(),
                                        p.monomials().end()));
    CHECK(again == p);
  }
}
