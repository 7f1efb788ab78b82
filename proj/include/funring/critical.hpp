#ifndef FUNRING_CRITICAL_HPP
#define FUNRING_CRITICAL_HPP

#include <span>
#include <string>
#include <vector>

#include "funring/reduction.hpp"

namespace funring {

// One critical situation between two polynomials: the defining combination
// is value == apply(a) - apply(b), where apply(x) multiplies the operand
// picked by x_side by the recorded monomials.  All coefficient factors
// (inverse head coefficients, the integer quotient beta, sign flips) are
// folded into the right multipliers, so the replay identity is exact.
struct SPolyInstance {
  Term overlap;
  int a_side = 0;  // 0 = first operand, 1 = second
  int b_side = 1;
  std::optional<Monomial> a_left, b_left;
  Monomial a_right, b_right;
  Poly value;
};

Poly spol_apply_side(const Poly& p, const Poly& q, int side,
                     const std::optional<Monomial>& left,
                     const Monomial& right);

// Instances at the stable localization derived from the common-multiple
// sets; .second is false when a bounded search may be incomplete.
std::pair<std::vector<SPolyInstance>, bool> s_polynomials(
    const Poly& p, const Poly& q, const ReductionSpec& spec, int bound);

struct SaturatorElement {
  Poly value;  // == left o seed o right, exactly
  std::optional<Monomial> left;
  std::optional<Monomial> right;  // both absent for the seed itself
};

struct SaturatorSet {
  Poly seed;
  std::vector<SaturatorElement> elements;
  bool complete = true;
};

// Closure of f under head-collapsing monomial multipliers, pruned by
// stable-divisor subsumption on head terms.
SaturatorSet saturator(const Poly& f, const ReductionSpec& spec, int bound);

struct SaturationFailure {
  std::size_t index;  // offending generator
  Poly multiple;
  std::string multiplier;
};

struct SaturationReport {
  bool passed = true;
  std::vector<SaturationFailure> failures;
  std::size_t samples = 0;
};

// Samples monomial multiples of the generators and verifies reduction to
// zero by the set itself.
SaturationReport saturation_check(std::span<const Poly> F,
                                  const ReductionSpec& spec,
                                  std::size_t sample_budget);

}  // namespace funring

#endif
