#include "funring/reduction.hpp"

#include <stdexcept>

namespace funring {

void ReductionSpec::validate(const FunctionRing& ring) const {
  if (integer_variant()) {
    if (ring.domain().kind() != DomainKind::IntegersDivRem)
      throw std::invalid_argument(
          "integer reduction variants need ZZ coefficients");
  } else {
    if (!ring.domain().is_field())
      throw std::invalid_argument("field reduction variants need a field");
  }
  if (variant == ReductionVariant::BuchbergerCommutativeField &&
      !ring.universe().is_commutative())
    throw std::invalid_argument(
        "Buchberger reduction needs a commutative universe");
  // the prefix restriction only orders right multiples; two-sided word
  // reduction needs the subword restriction
  const auto& u = ring.universe();
  if (two_sided() &&
      (u.kind() == UniverseKind::FreeWords ||
       u.kind() == UniverseKind::PresentedMonoid ||
       u.kind() == UniverseKind::LetterTable) &&
      u.reductive().kind == ReductiveKind::Prefix)
    throw std::invalid_argument(
        "two-sided reduction over words needs a subword reductive spec");
}

ReductionSpec default_spec(const FunctionRing& ring, bool two_sided) {
  ReductionSpec spec;
  const bool zz = ring.domain().kind() == DomainKind::IntegersDivRem;
  if (ring.universe().is_commutative() && !zz) {
    spec.variant = ReductionVariant::BuchbergerCommutativeField;
  } else if (zz) {
    spec.variant = two_sided && !ring.universe().is_commutative()
                       ? ReductionVariant::TwoSidedInt
                       : ReductionVariant::RightInt;
  } else {
    spec.variant = two_sided && !ring.universe().is_commutative()
                       ? ReductionVariant::TwoSidedField
                       : ReductionVariant::RightField;
  }
  return spec;
}

namespace {

struct Candidate {
  std::size_t reducer;
  std::optional<Monomial> left;
  Monomial right;      // unit coefficient; scaling applied later
  Poly multiple;       // left o f o right with unit coefficients
};

// all monomial multiples of basis elements whose head lands on t and
// which satisfy the reductive conditions of the variant
std::vector<Candidate> position_candidates(const Term& t,
                                           std::span<const Poly> basis,
                                           const ReductionSpec& spec,
                                           const FunctionRing& ring) {
  const auto& u = ring.universe();
  const auto& dom = ring.domain();
  std::vector<Candidate> out;
  const Coeff one = dom.one();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Poly& f = basis[i];
    if (f.is_zero()) continue;
    const Term& h = f.head_term();
    if (spec.variant == ReductionVariant::BuchbergerCommutativeField) {
      // HT(f) divides t; no reductive gate beyond divisibility
      auto ws = u.right_multiplier_candidates(h, t, spec.multiplier_bound);
      for (auto& w : ws) {
        Poly mult = f.mul_monomial({one, w}, false);
        if (mult.is_zero() || !(mult.head_term() == t)) continue;
        out.push_back({i, std::nullopt, {one, std::move(w)}, std::move(mult)});
      }
      continue;
    }
    if (!u.reductive_leq(h, t)) continue;
    if (!spec.two_sided()) {
      auto ws = u.right_multiplier_candidates(h, t, spec.multiplier_bound);
      for (auto& w : ws) {
        Poly mult = f.mul_monomial({one, w}, false);
        if (mult.is_zero() || !(mult.head_term() == t)) continue;
        out.push_back({i, std::nullopt, {one, std::move(w)}, std::move(mult)});
      }
    } else {
      auto uvs = u.two_sided_multiplier_candidates(h, t, spec.multiplier_bound);
      for (auto& [lu, rv] : uvs) {
        Poly mult = f.mul_monomial({one, lu}, true).mul_monomial({one, rv},
                                                                 false);
        if (mult.is_zero() || !(mult.head_term() == t)) continue;
        out.push_back({i, Monomial{one, std::move(lu)},
                       {one, std::move(rv)}, std::move(mult)});
      }
    }
  }
  return out;
}

}  // namespace

std::optional<std::pair<ReductionStep, Poly>> reduce_once(
    const Poly& p, std::span<const Poly> basis, const ReductionSpec& spec) {
  if (p.is_zero()) return std::nullopt;
  const auto& ring = *p.ring();
  const auto& dom = ring.domain();

  const auto& ms = p.monomials();
  std::vector<std::size_t> order(ms.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = spec.policy == PositionPolicy::HeadFirst ? i
                                                        : ms.size() - 1 - i;

  for (std::size_t pos : order) {
    const Term& t = ms[pos].term;
    const Coeff& alpha = ms[pos].coeff;
    auto cands = position_candidates(t, basis, spec, ring);
    if (cands.empty()) continue;

    if (!spec.integer_variant()) {
      // field variants: the first candidate clears the position exactly
      const Candidate& c = cands.front();
      Coeff gamma = dom.mul(alpha, *dom.invert(c.multiple.head_coeff()));
      Poly sub = c.multiple.scale(gamma);
      ReductionStep st;
      st.reducer = c.reducer;
      st.left = c.left;
      st.right = {dom.mul(c.right.coeff, gamma), c.right.term};
      st.position = t;
      st.before = alpha;
      st.after = dom.zero();
      return std::make_pair(std::move(st), p - sub);
    }

    // integer variants: positive head coefficient, division with remainder;
    // smallest applicable head coefficient first
    const Candidate* best = nullptr;
    Rat best_c;
    int best_sign = 1;
    for (const auto& c : cands) {
      Rat hc = c.multiple.head_coeff().scalar();
      int sign = hc < 0 ? -1 : 1;
      Rat cc = abs(hc);
      const Rat& a = alpha.scalar();
      bool applicable = a < 0 || a >= cc;
      if (!applicable) continue;
      if (!best || cc < best_c) {
        best = &c;
        best_c = cc;
        best_sign = sign;
      }
    }
    if (!best) continue;
    Int q, r;
    Int a = alpha.scalar().get_num();
    Int cc = best_c.get_num();
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), cc.get_mpz_t());
    Rat beta = Rat(q) * best_sign;
    Poly sub = best->multiple.scale(Coeff(beta));
    ReductionStep st;
    st.reducer = best->reducer;
    st.left = best->left;
    st.right = {dom.mul(best->right.coeff, Coeff(beta)), best->right.term};
    st.position = t;
    st.before = alpha;
    st.after = Coeff(Rat(r));
    return std::make_pair(std::move(st), p - sub);
  }
  return std::nullopt;
}

NormalFormResult normal_form(const Poly& p, std::span<const Poly> basis,
                             const ReductionSpec& spec, std::size_t budget) {
  NormalFormResult res;
  res.normal_form = p;
  while (true) {
    if (res.steps >= budget) {
      res.budget_exhausted = true;
      return res;
    }
    auto st = reduce_once(res.normal_form, basis, spec);
    if (!st) return res;
    res.trace.push_back(std::move(st->first));
    res.normal_form = std::move(st->second);
    ++res.steps;
  }
}

Poly step_contribution(const ReductionStep& st, std::span<const Poly> basis) {
  Poly f = basis[st.reducer];
  if (st.left) f = f.mul_monomial(*st.left, true);
  return f.mul_monomial(st.right, false);
}

Poly replay_rep(const StandardRep& rep, std::span<const Poly> basis,
                const FunctionRing::Ptr& ring) {
  Poly acc = Poly::zero(ring);
  for (const auto& e : rep.entries) {
    Poly f = basis[e.reducer];
    if (e.left) f = f.mul_monomial(*e.left, true);
    acc = acc + f.mul_monomial(e.right, false);
  }
  return acc;
}

std::optional<StandardRep> reduces_to_zero(const Poly& p,
                                           std::span<const Poly> basis,
                                           const ReductionSpec& spec,
                                           std::size_t budget) {
  ReductionSpec head_first = spec;
  head_first.policy = PositionPolicy::HeadFirst;
  auto nf = normal_form(p, basis, head_first, budget);
  if (!nf.normal_form.is_zero()) return std::nullopt;
  StandardRep rep;
  for (const auto& st : nf.trace)
    rep.entries.push_back({st.reducer, st.left, st.right});
  // replay identity and head-term bounds
  Poly back = replay_rep(rep, basis, p.ring());
  if (!(back == p)) throw std::logic_error("standard representation replay failed");
  if (!p.is_zero()) {
    const auto& u = p.ring()->universe();
    std::optional<Term> prev;
    for (const auto& e : rep.entries) {
      Poly contrib = replay_rep(StandardRep{{e}}, basis, p.ring());
      if (contrib.is_zero()) continue;
      const Term& ht = contrib.head_term();
      if (u.compare(ht, p.head_term()) > 0)
        throw std::logic_error("representation exceeds the head bound");
      if (prev && u.compare(*prev, ht) < 0)
        throw std::logic_error("representation heads not ordered");
      prev = ht;
    }
  }
  return rep;
}

}  // namespace funring
