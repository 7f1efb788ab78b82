#ifndef FUNRING_COEFF_HPP
#define FUNRING_COEFF_HPP

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace funring {

using Int = mpz_class;
using Rat = mpq_class;

// Coefficient domains with exact arithmetic and a reduction relation
// satisfying (A1)-(A3), optionally (A4).  Scalar kinds carry a rational
// value (integral for the integer-like kinds); direct sums carry one
// coefficient per component.
enum class DomainKind {
  Rationals,
  PrimeField,
  IntegersDivRem,
  IntegersDivisor,
  Quotient,
  DirectSum,
};

class CoefficientDomain;

class Coeff {
 public:
  Coeff() : value_(0) {}
  explicit Coeff(Rat v) : value_(std::move(v)) { value_.canonicalize(); }
  Coeff(Coeff left, Coeff right) {
    parts_.push_back(std::move(left));
    parts_.push_back(std::move(right));
  }

  const Rat& scalar() const { return value_; }
  bool is_pair() const { return !parts_.empty(); }
  const Coeff& left() const { return parts_[0]; }
  const Coeff& right() const { return parts_[1]; }

  bool operator==(const Coeff& o) const {
    if (is_pair() != o.is_pair()) return false;
    if (is_pair()) return parts_[0] == o.parts_[0] && parts_[1] == o.parts_[1];
    return value_ == o.value_;
  }
  bool operator!=(const Coeff& o) const { return !(*this == o); }

 private:
  Rat value_;
  std::vector<Coeff> parts_;
};

// One legal reduction step a => c by b, with the witness multipliers
// proving a - c in ideal(b).  Scalar kinds use a single factor:
// a - c == factor * b.  Direct sums record the component steps.
struct CoeffStep {
  Coeff result;
  Rat factor;
  std::vector<std::optional<CoeffStep>> part_steps;
};

struct CoeffIdealBasis {
  std::vector<Coeff> generators;
  std::vector<Coeff> groebner;
  // provenance[i][j]: groebner[i] == sum_j provenance[i][j] * generators[j]
  std::vector<std::vector<Coeff>> provenance;
};

struct AxiomCheck {
  bool checked = false;
  bool passed = true;
  std::string witness;
};

struct AxiomReport {
  AxiomCheck a1, a2, a3, a4;
  bool all_passed() const {
    return a1.passed && a2.passed && a3.passed && (!a4.checked || a4.passed);
  }
};

class CoefficientDomain {
 public:
  static CoefficientDomain rationals();
  static CoefficientDomain prime_field(unsigned long p);
  static CoefficientDomain integers();          // division with remainder
  static CoefficientDomain integers_divisor();  // D-reduction
  static CoefficientDomain quotient(unsigned long modulus);
  static CoefficientDomain direct_sum(CoefficientDomain left,
                                      CoefficientDomain right);

  DomainKind kind() const { return kind_; }
  bool is_field() const {
    return kind_ == DomainKind::Rationals || kind_ == DomainKind::PrimeField;
  }
  bool is_integers() const {
    return kind_ == DomainKind::IntegersDivRem ||
           kind_ == DomainKind::IntegersDivisor;
  }
  // (A4) holds for all kinds built here except that we do not declare it
  // for the divisor relation, matching the instances certified in the
  // axiom probes.
  bool declares_a4() const;
  unsigned long characteristic_modulus() const { return modulus_; }
  const CoefficientDomain& left() const { return *left_; }
  const CoefficientDomain& right() const { return *right_; }

  bool same_domain(const CoefficientDomain& o) const;

  Coeff zero() const;
  Coeff one() const;
  Coeff from_int(long v) const;
  Coeff from_rat(const Rat& v) const;
  Coeff pair(Coeff l, Coeff r) const;

  bool is_zero(const Coeff& a) const;
  bool equal(const Coeff& a, const Coeff& b) const { return a == b; }
  Coeff add(const Coeff& a, const Coeff& b) const;
  Coeff sub(const Coeff& a, const Coeff& b) const;
  Coeff neg(const Coeff& a) const;
  Coeff mul(const Coeff& a, const Coeff& b) const;
  std::optional<Coeff> invert(const Coeff& a) const;

  // One reduction step, absent iff a is irreducible by b.
  // Throws std::invalid_argument on a zero reducer.
  std::optional<CoeffStep> reduce_step(const Coeff& a, const Coeff& b) const;

  // Deterministic iterated reduction: reducers tried smallest positive
  // absolute value first, then input order.
  Coeff normal_form(const Coeff& a, std::span<const Coeff> basis) const;

  CoeffIdealBasis ideal_gb(const std::vector<Coeff>& gens) const;

  std::string to_string(const Coeff& a) const;
  std::string describe() const;

 private:
  CoefficientDomain() = default;
  DomainKind kind_ = DomainKind::Rationals;
  unsigned long modulus_ = 0;  // prime for PrimeField, m for Quotient
  std::shared_ptr<const CoefficientDomain> left_, right_;
};

struct ModuleVector {
  std::vector<Coeff> coords;
  bool operator==(const ModuleVector& o) const { return coords == o.coords; }
};

// Groebner basis of the submodule of Z^k generated by vs, via the
// first-coordinate recursion.  Throws on mixed lengths.
std::vector<ModuleVector> module_gb(const CoefficientDomain& zz,
                                    const std::vector<ModuleVector>& vs);

// One module reduction step at the leading coordinate of the reducer.
std::optional<ModuleVector> module_reduce_once(
    const CoefficientDomain& zz, const ModuleVector& a,
    std::span<const ModuleVector> basis);

ModuleVector module_normal_form(const CoefficientDomain& zz,
                                const ModuleVector& a,
                                std::span<const ModuleVector> basis);

AxiomReport axiom_probe(const CoefficientDomain& dom, int samples,
                        std::uint64_t seed);

}  // namespace funring

#endif
