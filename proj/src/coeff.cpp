#include "funring/coeff.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace funring {

namespace {

Int rat_num(const Rat& r) { return r.get_num(); }

bool is_integral(const Rat& r) { return r.get_den() == 1; }

// 0 <= r < q with n = q*b + r (floor division on the absolute value).
void fdiv(const Int& n, const Int& b, Int& q, Int& r) {
  Int babs = abs(b);
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), babs.get_mpz_t());
  if (b < 0) q = -q;
}

}  // namespace

CoefficientDomain CoefficientDomain::rationals() {
  CoefficientDomain d;
  d.kind_ = DomainKind::Rationals;
  return d;
}

CoefficientDomain CoefficientDomain::prime_field(unsigned long p) {
  if (p < 2) throw std::invalid_argument("prime field needs p >= 2");
  for (unsigned long q = 2; q * q <= p; ++q)
    if (p % q == 0) throw std::invalid_argument("prime field modulus not prime");
  CoefficientDomain d;
  d.kind_ = DomainKind::PrimeField;
  d.modulus_ = p;
  return d;
}

CoefficientDomain CoefficientDomain::integers() {
  CoefficientDomain d;
  d.kind_ = DomainKind::IntegersDivRem;
  return d;
}

CoefficientDomain CoefficientDomain::integers_divisor() {
  CoefficientDomain d;
  d.kind_ = DomainKind::IntegersDivisor;
  return d;
}

CoefficientDomain CoefficientDomain::quotient(unsigned long modulus) {
  if (modulus < 2) throw std::invalid_argument("quotient modulus must be >= 2");
  CoefficientDomain d;
  d.kind_ = DomainKind::Quotient;
  d.modulus_ = modulus;
  return d;
}

CoefficientDomain CoefficientDomain::direct_sum(CoefficientDomain left,
                                                CoefficientDomain right) {
  CoefficientDomain d;
  d.kind_ = DomainKind::DirectSum;
  d.left_ = std::make_shared<CoefficientDomain>(std::move(left));
  d.right_ = std::make_shared<CoefficientDomain>(std::move(right));
  return d;
}

bool CoefficientDomain::declares_a4() const {
  switch (kind_) {
    case DomainKind::IntegersDivisor:
      return false;
    case DomainKind::DirectSum:
      return left_->declares_a4() && right_->declares_a4();
    default:
      return true;
  }
}

bool CoefficientDomain::same_domain(const CoefficientDomain& o) const {
  if (kind_ != o.kind_ || modulus_ != o.modulus_) return false;
  if (kind_ == DomainKind::DirectSum)
    return left_->same_domain(*o.left_) && right_->same_domain(*o.right_);
  return true;
}

Coeff CoefficientDomain::zero() const {
  if (kind_ == DomainKind::DirectSum)
    return Coeff(left_->zero(), right_->zero());
  return Coeff(Rat(0));
}

Coeff CoefficientDomain::one() const {
  if (kind_ == DomainKind::DirectSum) return Coeff(left_->one(), right_->one());
  return Coeff(Rat(1));
}

Coeff CoefficientDomain::from_int(long v) const { return from_rat(Rat(v)); }

Coeff CoefficientDomain::from_rat(const Rat& v) const {
  switch (kind_) {
    case DomainKind::Rationals:
      return Coeff(v);
    case DomainKind::IntegersDivRem:
    case DomainKind::IntegersDivisor:
      if (!is_integral(v))
        throw std::invalid_argument("non-integral value in integer domain");
      return Coeff(v);
    case DomainKind::PrimeField:
    case DomainKind::Quotient: {
      Int m(modulus_);
      Int num = rat_num(v);
      Int den = v.get_den();
      Int r;
      mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), m.get_mpz_t());
      if (den != 1) {
        if (kind_ == DomainKind::Quotient)
          throw std::invalid_argument("non-integral value in quotient domain");
        Int dinv;
        if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
          throw std::invalid_argument("denominator not invertible mod p");
        r = (r * dinv) % m;
      }
      return Coeff(Rat(r));
    }
    case DomainKind::DirectSum:
      return Coeff(left_->from_rat(v), right_->from_rat(v));
  }
  throw std::logic_error("unreachable");
}

Coeff CoefficientDomain::pair(Coeff l, Coeff r) const {
  if (kind_ != DomainKind::DirectSum)
    throw std::invalid_argument("pair only valid in direct sums");
  return Coeff(std::move(l), std::move(r));
}

bool CoefficientDomain::is_zero(const Coeff& a) const {
  if (kind_ == DomainKind::DirectSum)
    return left_->is_zero(a.left()) && right_->is_zero(a.right());
  return a.scalar() == 0;
}

Coeff CoefficientDomain::add(const Coeff& a, const Coeff& b) const {
  if (kind_ == DomainKind::DirectSum)
    return Coeff(left_->add(a.left(), b.left()),
                 right_->add(a.right(), b.right()));
  if (kind_ == DomainKind::PrimeField || kind_ == DomainKind::Quotient)
    return from_rat(a.scalar() + b.scalar());
  return Coeff(a.scalar() + b.scalar());
}

Coeff CoefficientDomain::sub(const Coeff& a, const Coeff& b) const {
  return add(a, neg(b));
}

Coeff CoefficientDomain::neg(const Coeff& a) const {
  if (kind_ == DomainKind::DirectSum)
    return Coeff(left_->neg(a.left()), right_->neg(a.right()));
  if (kind_ == DomainKind::PrimeField || kind_ == DomainKind::Quotient)
    return from_rat(-a.scalar());
  return Coeff(-a.scalar());
}

Coeff CoefficientDomain::mul(const Coeff& a, const Coeff& b) const {
  if (kind_ == DomainKind::DirectSum)
    return Coeff(left_->mul(a.left(), b.left()),
                 right_->mul(a.right(), b.right()));
  if (kind_ == DomainKind::PrimeField || kind_ == DomainKind::Quotient)
    return from_rat(a.scalar() * b.scalar());
  return Coeff(a.scalar() * b.scalar());
}

std::optional<Coeff> CoefficientDomain::invert(const Coeff& a) const {
  if (is_zero(a)) return std::nullopt;
  switch (kind_) {
    case DomainKind::Rationals:
      return Coeff(Rat(1) / a.scalar());
    case DomainKind::PrimeField: {
      Int inv;
      Int m(modulus_);
      Int n = rat_num(a.scalar());
      if (mpz_invert(inv.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t()) == 0)
        return std::nullopt;
      return Coeff(Rat(inv));
    }
    case DomainKind::IntegersDivRem:
    case DomainKind::IntegersDivisor:
      if (a.scalar() == 1 || a.scalar() == -1) return a;
      return std::nullopt;
    case DomainKind::Quotient: {
      Int inv;
      Int m(modulus_);
      Int n = rat_num(a.scalar());
      if (mpz_invert(inv.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t()) == 0)
        return std::nullopt;
      return Coeff(Rat(inv));
    }
    case DomainKind::DirectSum: {
      auto li = left_->invert(a.left());
      auto ri = right_->invert(a.right());
      if (!li || !ri) return std::nullopt;
      return Coeff(*li, *ri);
    }
  }
  return std::nullopt;
}

std::optional<CoeffStep> CoefficientDomain::reduce_step(const Coeff& a,
                                                        const Coeff& b) const {
  if (is_zero(b))
    throw std::invalid_argument("zero divisor in reduction position");
  if (is_zero(a)) return std::nullopt;
  switch (kind_) {
    case DomainKind::Rationals:
    case DomainKind::PrimeField: {
      // Every nonzero field element reduces to zero in one step.
      CoeffStep st;
      st.result = zero();
      auto binv = invert(b);
      st.factor = mul(a, *binv).scalar();
      return st;
    }
    case DomainKind::IntegersDivRem: {
      const Int n = rat_num(a.scalar());
      const Int d = rat_num(b.scalar());
      Int q, r;
      fdiv(n, d, q, r);
      if (q == 0) return std::nullopt;  // already a remainder of |b|
      CoeffStep st;
      st.result = Coeff(Rat(r));
      st.factor = Rat(q);
      return st;
    }
    case DomainKind::IntegersDivisor: {
      const Int n = rat_num(a.scalar());
      const Int d = rat_num(b.scalar());
      if (n % d != 0) return std::nullopt;
      CoeffStep st;
      st.result = zero();
      st.factor = Rat(Int(n / d));
      return st;
    }
    case DomainKind::Quotient: {
      // Step in Z followed by normal form modulo the quotient basis {m};
      // carriers are remainders of m so the Z-remainder is already reduced.
      const Int n = rat_num(a.scalar());
      const Int d = rat_num(b.scalar());
      Int q, r;
      fdiv(n, d, q, r);
      if (q == 0) return std::nullopt;
      CoeffStep st;
      st.result = Coeff(Rat(r));
      st.factor = Rat(q);
      return st;
    }
    case DomainKind::DirectSum: {
      std::optional<CoeffStep> ls, rs;
      if (!left_->is_zero(b.left()))
        ls = left_->reduce_step(a.left(), b.left());
      if (!right_->is_zero(b.right()))
        rs = right_->reduce_step(a.right(), b.right());
      if (!ls && !rs) return std::nullopt;
      CoeffStep st;
      st.result = Coeff(ls ? ls->result : a.left(), rs ? rs->result : a.right());
      st.part_steps.push_back(std::move(ls));
      st.part_steps.push_back(std::move(rs));
      return st;
    }
  }
  return std::nullopt;
}

Coeff CoefficientDomain::normal_form(const Coeff& a,
                                     std::span<const Coeff> basis) const {
  // Stable reducer order: smallest positive absolute value first for the
  // scalar kinds, input order otherwise.
  std::vector<std::size_t> order(basis.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (kind_ != DomainKind::DirectSum) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) {
                       return abs(basis[i].scalar()) < abs(basis[j].scalar());
                     });
  }
  Coeff cur = a;
  bool progress = true;
  while (progress && !is_zero(cur)) {
    progress = false;
    for (std::size_t i : order) {
      if (is_zero(basis[i])) continue;
      if (auto st = reduce_step(cur, basis[i])) {
        cur = st->result;
        progress = true;
        break;
      }
    }
  }
  return cur;
}

namespace {

// gcd of F with Bezout provenance rows over F.
void integer_gcd_basis(const std::vector<Coeff>& gens, Int& g,
                       std::vector<Int>& lambda) {
  g = 0;
  lambda.assign(gens.size(), Int(0));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Int v = gens[i].scalar().get_num();
    if (v == 0) continue;
    if (g == 0) {
      g = abs(v);
      lambda[i] = v > 0 ? 1 : -1;
      continue;
    }
    Int s, t, ng;
    mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(),
               v.get_mpz_t());
    for (auto& l : lambda) l *= s;
    lambda[i] += t;
    g = ng;
  }
}

}  // namespace

CoeffIdealBasis CoefficientDomain::ideal_gb(
    const std::vector<Coeff>& gens) const {
  CoeffIdealBasis out;
  out.generators = gens;
  switch (kind_) {
    case DomainKind::Rationals:
    case DomainKind::PrimeField: {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!is_zero(gens[i])) {
          out.groebner = {one()};
          std::vector<Coeff> row(gens.size(), zero());
          row[i] = *invert(gens[i]);
          out.provenance = {row};
          return out;
        }
      }
      return out;
    }
    case DomainKind::IntegersDivRem:
    case DomainKind::IntegersDivisor: {
      Int g;
      std::vector<Int> lambda;
      integer_gcd_basis(gens, g, lambda);
      if (g == 0) return out;
      out.groebner = {Coeff(Rat(g))};
      std::vector<Coeff> row;
      row.reserve(gens.size());
      for (const auto& l : lambda) row.push_back(Coeff(Rat(l)));
      out.provenance = {row};
      return out;
    }
    case DomainKind::Quotient: {
      // Lift to Z, adjoin the modulus, drop the modulus contribution.
      std::vector<Coeff> lifted = gens;
      lifted.push_back(Coeff(Rat(Int(modulus_))));
      Int g;
      std::vector<Int> lambda;
      integer_gcd_basis(lifted, g, lambda);
      if (g == 0 || g % Int(modulus_) == 0) return out;
      out.groebner = {Coeff(Rat(g))};
      std::vector<Coeff> row;
      for (std::size_t i = 0; i < gens.size(); ++i)
        row.push_back(from_rat(Rat(lambda[i])));
      out.provenance = {row};
      return out;
    }
    case DomainKind::DirectSum: {
      std::vector<Coeff> lg, rg;
      for (const auto& c : gens) {
        lg.push_back(c.left());
        rg.push_back(c.right());
      }
      auto lb = left_->ideal_gb(lg);
      auto rb = right_->ideal_gb(rg);
      for (std::size_t i = 0; i < lb.groebner.size(); ++i) {
        out.groebner.push_back(Coeff(lb.groebner[i], right_->zero()));
        std::vector<Coeff> row;
        for (std::size_t j = 0; j < gens.size(); ++j)
          row.push_back(Coeff(lb.provenance[i][j], right_->zero()));
        out.provenance.push_back(std::move(row));
      }
      for (std::size_t i = 0; i < rb.groebner.size(); ++i) {
        out.groebner.push_back(Coeff(left_->zero(), rb.groebner[i]));
        std::vector<Coeff> row;
        for (std::size_t j = 0; j < gens.size(); ++j)
          row.push_back(Coeff(left_->zero(), rb.provenance[i][j]));
        out.provenance.push_back(std::move(row));
      }
      return out;
    }
  }
  return out;
}

std::string CoefficientDomain::to_string(const Coeff& a) const {
  if (kind_ == DomainKind::DirectSum) {
    return "(" + left_->to_string(a.left()) + "," +
           right_->to_string(a.right()) + ")";
  }
  std::ostringstream os;
  os << a.scalar();
  return os.str();
}

std::string CoefficientDomain::describe() const {
  switch (kind_) {
    case DomainKind::Rationals:
      return "QQ";
    case DomainKind::PrimeField:
      return "GF(" + std::to_string(modulus_) + ")";
    case DomainKind::IntegersDivRem:
      return "ZZ";
    case DomainKind::IntegersDivisor:
      return "ZZ.divisor";
    case DomainKind::Quotient:
      return "ZZ/" + std::to_string(modulus_);
    case DomainKind::DirectSum:
      return left_->describe() + "(+)" + right_->describe();
  }
  return "?";
}

// --- modules over Z ---------------------------------------------------

namespace {

std::size_t leading_index(const CoefficientDomain& zz, const ModuleVector& v) {
  for (std::size_t i = 0; i < v.coords.size(); ++i)
    if (!zz.is_zero(v.coords[i])) return i;
  return v.coords.size();
}

}  // namespace

std::optional<ModuleVector> module_reduce_once(
    const CoefficientDomain& zz, const ModuleVector& a,
    std::span<const ModuleVector> basis) {
  for (const auto& b : basis) {
    std::size_t s = leading_index(zz, b);
    if (s >= b.coords.size()) continue;
    auto st = zz.reduce_step(a.coords[s], b.coords[s]);
    if (!st) continue;
    ModuleVector c = a;
    for (std::size_t i = 0; i < c.coords.size(); ++i)
      c.coords[i] = zz.sub(c.coords[i],
                           zz.mul(Coeff(st->factor), b.coords[i]));
    return c;
  }
  return std::nullopt;
}

ModuleVector module_normal_form(const CoefficientDomain& zz,
                                const ModuleVector& a,
                                std::span<const ModuleVector> basis) {
  ModuleVector cur = a;
  while (auto nxt = module_reduce_once(zz, cur, basis)) cur = *nxt;
  return cur;
}

std::vector<ModuleVector> module_gb(const CoefficientDomain& zz,
                                    const std::vector<ModuleVector>& vs) {
  if (vs.empty()) return {};
  const std::size_t k = vs[0].coords.size();
  for (const auto& v : vs)
    if (v.coords.size() != k)
      throw std::invalid_argument("module vectors of mixed lengths");
  if (k == 0) return {};

  std::vector<Coeff> firsts;
  firsts.reserve(vs.size());
  for (const auto& v : vs) firsts.push_back(v.coords[0]);
  auto basis = zz.ideal_gb(firsts);

  std::vector<ModuleVector> out;
  std::vector<ModuleVector> tails;
  if (basis.groebner.empty()) {
    // First coordinates all zero: recurse on the tails directly.
    for (const auto& v : vs) {
      ModuleVector t;
      t.coords.assign(v.coords.begin() + 1, v.coords.end());
      tails.push_back(std::move(t));
    }
  } else {
    // Lift gcd via the Bezout provenance, then strip first coordinates.
    const Coeff g = basis.groebner[0];
    ModuleVector c;
    c.coords.assign(k, zz.zero());
    for (std::size_t j = 0; j < vs.size(); ++j)
      for (std::size_t i = 0; i < k; ++i)
        c.coords[i] = zz.add(c.coords[i],
                             zz.mul(basis.provenance[0][j], vs[j].coords[i]));
    out.push_back(c);
    if (k == 1) return out;
    for (const auto& v : vs) {
      // v - (v0/g) * c has zero first coordinate.
      Rat q = v.coords[0].scalar() / g.scalar();
      ModuleVector t;
      t.coords.reserve(k - 1);
      for (std::size_t i = 1; i < k; ++i)
        t.coords.push_back(zz.sub(v.coords[i], zz.mul(Coeff(q), c.coords[i])));
      bool nonzero = false;
      for (const auto& x : t.coords) nonzero = nonzero || !zz.is_zero(x);
      if (nonzero) tails.push_back(std::move(t));
    }
  }
  if (k > 1) {
    for (auto& d : module_gb(zz, tails)) {
      ModuleVector padded;
      padded.coords.push_back(zz.zero());
      for (auto& x : d.coords) padded.coords.push_back(std::move(x));
      out.push_back(std::move(padded));
    }
  }
  return out;
}

// --- axiom probe -------------------------------------------------------

namespace {

Coeff sample(const CoefficientDomain& dom, std::mt19937_64& rng) {
  switch (dom.kind()) {
    case DomainKind::Rationals: {
      std::uniform_int_distribution<long> num(-20, 20);
      std::uniform_int_distribution<long> den(1, 12);
      return Coeff(Rat(num(rng), den(rng)));
    }
    case DomainKind::PrimeField:
    case DomainKind::Quotient: {
      std::uniform_int_distribution<long> v(
          0, static_cast<long>(dom.characteristic_modulus()) - 1);
      return Coeff(Rat(v(rng)));
    }
    case DomainKind::IntegersDivRem:
    case DomainKind::IntegersDivisor: {
      std::uniform_int_distribution<long> v(-50, 50);
      return Coeff(Rat(v(rng)));
    }
    case DomainKind::DirectSum:
      return Coeff(sample(dom.left(), rng), sample(dom.right(), rng));
  }
  return Coeff(Rat(0));
}

// Reducers are used with positive head values throughout (the integer
// machinery normalizes signs before reducing); (A4) is probed in that
// convention.
Coeff positive_reducer(const CoefficientDomain& dom, const Coeff& c) {
  if (dom.kind() == DomainKind::DirectSum)
    return Coeff(positive_reducer(dom.left(), c.left()),
                 positive_reducer(dom.right(), c.right()));
  if (c.scalar() < 0) return dom.neg(c);
  return c;
}

bool replay_step(const CoefficientDomain& dom, const Coeff& a,
                 const Coeff& b, const CoeffStep& st) {
  if (dom.kind() == DomainKind::DirectSum) {
    const auto& ls = st.part_steps[0];
    const auto& rs = st.part_steps[1];
    bool okl = ls ? replay_step(dom.left(), a.left(), b.left(), *ls)
                  : a.left() == st.result.left();
    bool okr = rs ? replay_step(dom.right(), a.right(), b.right(), *rs)
                  : a.right() == st.result.right();
    return okl && okr;
  }
  if (dom.kind() == DomainKind::Quotient) {
    // a - c = factor*b modulo m.
    Rat diff = a.scalar() - st.result.scalar() - st.factor * b.scalar();
    if (diff.get_den() != 1) return false;
    Int n = diff.get_num();
    return n % Int(dom.characteristic_modulus()) == 0;
  }
  if (dom.kind() == DomainKind::PrimeField) {
    Rat diff = a.scalar() - st.result.scalar() - st.factor * b.scalar();
    if (diff.get_den() != 1) return false;
    Int n = diff.get_num();
    return n % Int(dom.characteristic_modulus()) == 0;
  }
  return a.scalar() - st.result.scalar() == st.factor * b.scalar();
}

}  // namespace

AxiomReport axiom_probe(const CoefficientDomain& dom, int samples,
                        std::uint64_t seed) {
  AxiomReport rep;
  std::mt19937_64 rng(seed);
  const int step_cap = 10000;

  rep.a1.checked = rep.a2.checked = rep.a3.checked = true;
  rep.a4.checked = dom.declares_a4();

  for (int s = 0; s < samples; ++s) {
    Coeff a = sample(dom, rng);
    std::vector<Coeff> bs;
    std::uniform_int_distribution<int> nb(1, 3);
    int n = nb(rng);
    for (int i = 0; i < n; ++i) {
      Coeff b = sample(dom, rng);
      if (!dom.is_zero(b)) bs.push_back(b);
    }
    if (bs.empty()) continue;

    // (A1): arbitrary reducer choices terminate within the cap.
    {
      Coeff cur = a;
      int steps = 0;
      while (steps <= step_cap) {
        std::vector<std::pair<std::size_t, CoeffStep>> options;
        for (std::size_t i = 0; i < bs.size(); ++i)
          if (auto st = dom.reduce_step(cur, bs[i]))
            options.emplace_back(i, std::move(*st));
        if (options.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        auto& [idx, st] = options[pick(rng)];
        // (A2): the witness multipliers prove a - c in ideal(b).
        if (!replay_step(dom, cur, bs[idx], st)) {
          rep.a2.passed = false;
          rep.a2.witness = dom.to_string(cur) + " => " + dom.to_string(st.result);
        }
        cur = st.result;
        ++steps;
      }
      if (steps > step_cap) {
        rep.a1.passed = false;
        rep.a1.witness = dom.to_string(a);
      }
    }

    // (A3): every nonzero element takes itself to zero in one step.
    if (!dom.is_zero(a)) {
      auto st = dom.reduce_step(a, a);
      if (!st || !dom.is_zero(st->result)) {
        rep.a3.passed = false;
        rep.a3.witness = dom.to_string(a);
      }
    }

    // (A4): alpha =>_beta and beta =>_gamma delta imply alpha =>_gamma
    // or alpha =>_delta.
    if (rep.a4.checked) {
      Coeff alpha = sample(dom, rng);
      Coeff beta = positive_reducer(dom, sample(dom, rng));
      Coeff gamma = positive_reducer(dom, sample(dom, rng));
      if (!dom.is_zero(beta) && !dom.is_zero(gamma)) {
        bool alpha_red_beta = dom.reduce_step(alpha, beta).has_value();
        auto bg = dom.reduce_step(beta, gamma);
        if (alpha_red_beta && bg) {
          bool ok = dom.reduce_step(alpha, gamma).has_value();
          if (!ok && !dom.is_zero(bg->result))
            ok = dom.reduce_step(alpha, bg->result).has_value();
          if (!ok) {
            rep.a4.passed = false;
            rep.a4.witness = dom.to_string(alpha) + "," + dom.to_string(beta) +
                             "," + dom.to_string(gamma);
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace funring
