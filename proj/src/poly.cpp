#include "funring/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace funring {

Poly::Poly(FunctionRing::Ptr ring, std::vector<Monomial> ms)
    : ring_(std::move(ring)), ms_(std::move(ms)) {
  canonicalize();
}

Poly Poly::monomial(FunctionRing::Ptr ring, Coeff c, Term t) {
  Poly p(std::move(ring));
  if (!p.ring_->domain().is_zero(c))
    p.ms_.push_back({std::move(c), std::move(t)});
  return p;
}

Poly Poly::unit(FunctionRing::Ptr ring) {
  const auto& u = ring->universe();
  if (!u.has_unit()) throw std::logic_error("ring has no unit term");
  Coeff one = ring->domain().one();
  Term t = u.unit();
  return monomial(std::move(ring), std::move(one), std::move(t));
}

Poly Poly::from_term_sum(FunctionRing::Ptr ring, const TermSum& s,
                         const Coeff& scale) {
  std::vector<Monomial> ms;
  const auto& dom = ring->domain();
  for (const auto& [q, t] : s) {
    Coeff c = dom.mul(dom.from_rat(q), scale);
    if (!dom.is_zero(c)) ms.push_back({std::move(c), t});
  }
  return Poly(std::move(ring), std::move(ms));
}

void Poly::canonicalize() {
  if (!ring_) return;
  const auto& u = ring_->universe();
  const auto& dom = ring_->domain();
  std::stable_sort(ms_.begin(), ms_.end(),
                   [&](const Monomial& a, const Monomial& b) {
                     return u.compare(a.term, b.term) > 0;
                   });
  std::vector<Monomial> out;
  for (auto& m : ms_) {
    if (!out.empty() && out.back().term == m.term) {
      out.back().coeff = dom.add(out.back().coeff, m.coeff);
      if (dom.is_zero(out.back().coeff)) out.pop_back();
    } else if (!dom.is_zero(m.coeff)) {
      out.push_back(std::move(m));
    }
  }
  ms_ = std::move(out);
}

const Coeff& Poly::head_coeff() const {
  if (is_zero()) throw std::invalid_argument("head of zero polynomial");
  return ms_.front().coeff;
}

const Term& Poly::head_term() const {
  if (is_zero()) throw std::invalid_argument("head of zero polynomial");
  return ms_.front().term;
}

Monomial Poly::head_monomial() const {
  if (is_zero()) throw std::invalid_argument("head of zero polynomial");
  return ms_.front();
}

Poly Poly::reductum() const {
  if (is_zero()) throw std::invalid_argument("reductum of zero polynomial");
  Poly p(ring_);
  p.ms_.assign(ms_.begin() + 1, ms_.end());
  return p;
}

std::optional<Coeff> Poly::coeff_at(const Term& t) const {
  for (const auto& m : ms_)
    if (m.term == t) return m.coeff;
  return std::nullopt;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Monomial> ms = ms_;
  ms.insert(ms.end(), o.ms_.begin(), o.ms_.end());
  return Poly(ring_ ? ring_ : o.ring_, std::move(ms));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly p(ring_);
  const auto& dom = ring_->domain();
  p.ms_ = ms_;
  for (auto& m : p.ms_) m.coeff = dom.neg(m.coeff);
  return p;
}

Poly Poly::scale(const Coeff& c) const {
  std::vector<Monomial> ms;
  const auto& dom = ring_->domain();
  for (const auto& m : ms_) {
    Coeff nc = dom.mul(m.coeff, c);
    if (!dom.is_zero(nc)) ms.push_back({std::move(nc), m.term});
  }
  return Poly(ring_, std::move(ms));
}

Poly Poly::mul_monomial(const Monomial& m, bool left) const {
  const auto& u = ring_->universe();
  const auto& dom = ring_->domain();
  std::vector<Monomial> ms;
  for (const auto& mine : ms_) {
    Coeff c = dom.mul(mine.coeff, m.coeff);
    const TermSum prod =
        left ? u.mul(m.term, mine.term) : u.mul(mine.term, m.term);
    for (const auto& [q, t] : prod) {
      Coeff nc = dom.mul(c, dom.from_rat(q));
      if (!dom.is_zero(nc)) ms.push_back({std::move(nc), t});
    }
  }
  return Poly(ring_, std::move(ms));
}

Poly Poly::mul(const Poly& o) const {
  Poly acc(ring_);
  for (const auto& m : o.ms_) acc = acc + mul_monomial(m, false);
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  auto inv = ring_->domain().invert(head_coeff());
  if (!inv) throw std::logic_error("head coefficient not invertible");
  return scale(*inv);
}

Poly Poly::positive_head() const {
  if (is_zero()) return *this;
  if (head_coeff().scalar() < 0) return -*this;
  return *this;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  const auto& u = ring_->universe();
  const auto& dom = ring_->domain();
  std::ostringstream os;
  bool first = true;
  for (const auto& m : ms_) {
    std::string cs = dom.to_string(m.coeff);
    bool neg = !cs.empty() && cs[0] == '-';
    if (!first)
      os << (neg ? " - " : " + ");
    else if (neg)
      os << "-";
    if (neg) cs = cs.substr(1);
    std::string ts = u.term_str(m.term);
    if (ts == "1") {
      os << cs;
    } else if (cs == "1") {
      os << ts;
    } else {
      os << cs << "*" << ts;
    }
    first = false;
  }
  return os.str();
}

bool z_less(const Rat& a, const Rat& b) {
  if (a == b) return false;
  bool an = a < 0, bn = b < 0;
  if (an != bn) return !an;  // non-negatives below negatives
  if (!an) return a < b;
  return a > b;  // among negatives, -1 < -2 < ...
}

std::partial_ordering poly_compare(const Poly& p, const Poly& q) {
  if (p.is_zero() && q.is_zero()) return std::partial_ordering::equivalent;
  if (p.is_zero()) return std::partial_ordering::less;
  if (q.is_zero()) return std::partial_ordering::greater;
  const auto& u = p.ring()->universe();
  const auto& dom = p.ring()->domain();
  int tc = u.compare(p.head_term(), q.head_term());
  if (tc != 0)
    return tc > 0 ? std::partial_ordering::greater
                  : std::partial_ordering::less;
  const Coeff& a = p.head_coeff();
  const Coeff& b = q.head_coeff();
  if (!(a == b)) {
    if (dom.is_integers()) {
      return z_less(a.scalar(), b.scalar()) ? std::partial_ordering::less
                                            : std::partial_ordering::greater;
    }
    // equal head terms, different coefficients: only comparable through
    // the trivial ordering on the coefficients
    return std::partial_ordering::unordered;
  }
  return poly_compare(p.reductum(), q.reductum());
}

}  // namespace funring
