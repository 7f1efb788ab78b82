#include "funring/critical.hpp"

#include <deque>
#include <stdexcept>

namespace funring {

Poly spol_apply_side(const Poly& p, const Poly& q, int side,
                     const std::optional<Monomial>& left,
                     const Monomial& right) {
  Poly f = side == 0 ? p : q;
  if (left) f = f.mul_monomial(*left, true);
  return f.mul_monomial(right, false);
}

namespace {

// sign-normalize an integer multiple to a positive head coefficient,
// folding the flip into the multiplier coefficient
void positive_mult(const FunctionRing& ring, Poly& mult, Monomial& m) {
  if (!mult.is_zero() && mult.head_coeff().scalar() < 0) {
    mult = -mult;
    m.coeff = ring.domain().neg(m.coeff);
  }
}

}  // namespace

std::pair<std::vector<SPolyInstance>, bool> s_polynomials(
    const Poly& p, const Poly& q, const ReductionSpec& spec, int bound) {
  std::vector<SPolyInstance> out;
  if (p.is_zero() || q.is_zero())
    throw std::invalid_argument("s-polynomials need nonzero operands");
  const auto& ring = *p.ring();
  const auto& u = ring.universe();
  const auto& dom = ring.domain();
  const Coeff one = dom.one();
  bool complete = true;

  struct RawPair {
    Term t;
    std::optional<Monomial> u1, u2;
    Monomial w1, w2;
  };
  std::vector<RawPair> raw;
  if (!spec.two_sided()) {
    auto [cms, c] = u.common_multiples_right(p.head_term(), q.head_term(),
                                             bound);
    complete = c;
    for (auto& cm : cms)
      raw.push_back({cm.t, std::nullopt, std::nullopt,
                     {one, cm.w1}, {one, cm.w2}});
  } else {
    auto [cms, c] = u.common_multiples_two_sided(p.head_term(), q.head_term(),
                                                 bound);
    complete = c;
    for (auto& cm : cms)
      raw.push_back({cm.t, Monomial{one, cm.u1}, Monomial{one, cm.u2},
                     {one, cm.v1}, {one, cm.v2}});
  }

  for (auto& rp : raw) {
    Poly pm = spol_apply_side(p, q, 0, rp.u1, rp.w1);
    Poly qm = spol_apply_side(p, q, 1, rp.u2, rp.w2);
    // the critical-set condition: the full multiples must still peak at t
    if (pm.is_zero() || qm.is_zero()) continue;
    if (!(pm.head_term() == rp.t) || !(qm.head_term() == rp.t)) continue;

    SPolyInstance inst;
    inst.overlap = rp.t;
    if (!spec.integer_variant()) {
      // HC^{-1}-scaled difference; heads cancel
      Coeff s1 = *dom.invert(pm.head_coeff());
      Coeff s2 = *dom.invert(qm.head_coeff());
      inst.a_side = 0;
      inst.b_side = 1;
      inst.a_left = rp.u1;
      inst.b_left = rp.u2;
      inst.a_right = {dom.mul(rp.w1.coeff, s1), rp.w1.term};
      inst.b_right = {dom.mul(rp.w2.coeff, s2), rp.w2.term};
      inst.value = pm.scale(s1) - qm.scale(s2);
    } else {
      // gamma1 >= gamma2 > 0 after sign normalization, then
      // value = (multiple of the smaller) * beta - (multiple of the larger)
      Monomial m1 = rp.w1, m2 = rp.w2;
      positive_mult(ring, pm, m1);
      positive_mult(ring, qm, m2);
      Rat g1 = pm.head_coeff().scalar();
      Rat g2 = qm.head_coeff().scalar();
      int big = 0;
      if (g1 < g2) std::swap(g1, g2), big = 1;
      const Poly& bigm = big == 0 ? pm : qm;
      const Poly& smallm = big == 0 ? qm : pm;
      Int beta, delta;
      Int n1 = g1.get_num(), n2 = g2.get_num();
      mpz_fdiv_qr(beta.get_mpz_t(), delta.get_mpz_t(), n1.get_mpz_t(),
                  n2.get_mpz_t());
      Coeff bc = Coeff(Rat(beta));
      inst.a_side = big == 0 ? 1 : 0;  // smaller side carries beta
      inst.b_side = big;
      inst.a_left = big == 0 ? rp.u2 : rp.u1;
      inst.b_left = big == 0 ? rp.u1 : rp.u2;
      const Monomial& sm = big == 0 ? m2 : m1;
      const Monomial& bm = big == 0 ? m1 : m2;
      inst.a_right = {dom.mul(sm.coeff, bc), sm.term};
      inst.b_right = bm;
      inst.value = smallm.scale(bc) - bigm;
    }
    // drop exact duplicates
    bool dup = false;
    for (const auto& x : out)
      if (x.overlap == inst.overlap && x.a_side == inst.a_side &&
          x.a_right == inst.a_right && x.b_right == inst.b_right &&
          x.a_left == inst.a_left && x.b_left == inst.b_left)
        dup = true;
    if (!dup) out.push_back(std::move(inst));
  }
  return {out, complete};
}

SaturatorSet saturator(const Poly& f, const ReductionSpec& spec, int bound) {
  if (f.is_zero()) throw std::invalid_argument("saturator of zero");
  const auto& ring = *f.ring();
  const auto& u = ring.universe();
  const auto& dom = ring.domain();
  SaturatorSet sat;
  sat.seed = f;
  sat.elements.push_back({f, std::nullopt, std::nullopt});

  std::deque<std::size_t> queue{0};
  int processed = 0;
  const Coeff one = dom.one();
  auto head_subsumed = [&](const Term& h) {
    for (const auto& e : sat.elements) {
      const Term& eh = e.value.head_term();
      if (!(eh == h) && u.reductive_leq(eh, h)) return true;
    }
    return false;
  };
  auto compose_right = [&](const std::optional<Monomial>& base,
                           const Term& w) -> std::optional<Monomial> {
    if (!base) return Monomial{one, w};
    TermSum prod = u.mul(base->term, w);
    if (prod.size() != 1 || prod[0].first != 1) return std::nullopt;
    return Monomial{base->coeff, prod[0].second};
  };
  auto compose_left = [&](const std::optional<Monomial>& base,
                          const Term& w) -> std::optional<Monomial> {
    if (!base) return Monomial{one, w};
    TermSum prod = u.mul(w, base->term);
    if (prod.size() != 1 || prod[0].first != 1) return std::nullopt;
    return Monomial{base->coeff, prod[0].second};
  };
  auto try_add = [&](std::optional<Monomial> l, std::optional<Monomial> r) {
    Poly cand = f;
    if (l) cand = cand.mul_monomial(*l, true);
    if (r) cand = cand.mul_monomial(*r, false);
    if (cand.is_zero()) return;
    for (const auto& e : sat.elements)
      if (e.value == cand) return;
    if (head_subsumed(cand.head_term())) return;
    sat.elements.push_back({std::move(cand), std::move(l), std::move(r)});
    queue.push_back(sat.elements.size() - 1);
  };

  while (!queue.empty()) {
    if (++processed > bound) {
      sat.complete = false;
      break;
    }
    std::size_t idx = queue.front();
    queue.pop_front();
    // copy: elements may reallocate while adding
    SaturatorElement el = sat.elements[idx];
    const Term& h = el.value.head_term();
    for (const auto& w : u.collapse_multipliers(h, false)) {
      auto r = compose_right(el.right, w);
      if (!r) continue;  // the multiplier chain left the monomials
      try_add(el.left, r);
    }
    if (spec.two_sided()) {
      for (const auto& w : u.collapse_multipliers(h, true)) {
        auto l = compose_left(el.left, w);
        if (!l) continue;
        try_add(l, el.right);
      }
    }
  }
  return sat;
}

SaturationReport saturation_check(std::span<const Poly> F,
                                  const ReductionSpec& spec,
                                  std::size_t sample_budget) {
  SaturationReport rep;
  if (F.empty()) return rep;
  const auto& ring = *F[0].ring();
  const auto& u = ring.universe();
  const auto& dom = ring.domain();
  auto mults = u.enumerate_terms(sample_budget, 4);
  const Coeff one = dom.one();
  for (std::size_t i = 0; i < F.size(); ++i) {
    for (const auto& m : mults) {
      if (rep.samples >= sample_budget) return rep;
      ++rep.samples;
      Poly multiple = F[i].mul_monomial({one, m}, false);
      if (multiple.is_zero()) continue;
      auto nf = normal_form(multiple, F, spec, 2000);
      if (!nf.normal_form.is_zero()) {
        rep.passed = false;
        rep.failures.push_back({i, multiple, u.term_str(m)});
        if (rep.failures.size() >= 5) return rep;
      }
    }
  }
  return rep;
}

}  // namespace funring
