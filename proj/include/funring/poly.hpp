#ifndef FUNRING_POLY_HPP
#define FUNRING_POLY_HPP

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "funring/coeff.hpp"
#include "funring/term.hpp"

namespace funring {

// A function ring: terms from a universe, coefficients from a domain,
// with the universe's ordering and reductive restriction.
class FunctionRing {
 public:
  using Ptr = std::shared_ptr<const FunctionRing>;

  static Ptr make(TermUniverse::Ptr universe, CoefficientDomain domain) {
    return Ptr(new FunctionRing(std::move(universe), std::move(domain)));
  }

  const TermUniverse& universe() const { return *universe_; }
  TermUniverse::Ptr universe_ptr() const { return universe_; }
  const CoefficientDomain& domain() const { return domain_; }

 private:
  FunctionRing(TermUniverse::Ptr u, CoefficientDomain d)
      : universe_(std::move(u)), domain_(std::move(d)) {}
  TermUniverse::Ptr universe_;
  CoefficientDomain domain_;
};

struct Monomial {
  Coeff coeff;
  Term term;
  bool operator==(const Monomial& o) const {
    return coeff == o.coeff && term == o.term;
  }
};

// Canonical finite formal sum: monomials sorted strictly descending by the
// term ordering, no zero coefficients, empty = zero.
class Poly {
 public:
  Poly() = default;
  explicit Poly(FunctionRing::Ptr ring) : ring_(std::move(ring)) {}
  Poly(FunctionRing::Ptr ring, std::vector<Monomial> ms);

  static Poly zero(FunctionRing::Ptr ring) { return Poly(std::move(ring)); }
  static Poly monomial(FunctionRing::Ptr ring, Coeff c, Term t);
  static Poly unit(FunctionRing::Ptr ring);
  static Poly from_term_sum(FunctionRing::Ptr ring, const TermSum& s,
                            const Coeff& scale);

  const FunctionRing::Ptr& ring() const { return ring_; }
  const std::vector<Monomial>& monomials() const { return ms_; }
  bool is_zero() const { return ms_.empty(); }
  std::size_t size() const { return ms_.size(); }

  const Coeff& head_coeff() const;
  const Term& head_term() const;
  Monomial head_monomial() const;
  Poly reductum() const;
  std::optional<Coeff> coeff_at(const Term& t) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  bool operator==(const Poly& o) const { return ms_ == o.ms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly scale(const Coeff& c) const;
  // right or left multiplication by a monomial
  Poly mul_monomial(const Monomial& m, bool left = false) const;
  Poly mul(const Poly& o) const;
  Poly monic() const;                // fields
  Poly positive_head() const;        // integers: flip sign if HC < 0

  std::string str() const;

 private:
  void canonicalize();
  FunctionRing::Ptr ring_;
  std::vector<Monomial> ms_;
};

// Strict partial order on polynomials: head monomial comparison refined
// through the reductum; over the integers heads at equal terms compare
// by the natural well-founded ordering on Z.
std::partial_ordering poly_compare(const Poly& p, const Poly& q);

// a <_Z b:  0 < 1 < 2 < ... < -1 < -2 < ...
bool z_less(const Rat& a, const Rat& b);

}  // namespace funring

#endif
