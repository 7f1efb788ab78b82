#ifndef FUNRING_REDUCTION_HPP
#define FUNRING_REDUCTION_HPP

#include <optional>
#include <span>
#include <vector>

#include "funring/poly.hpp"

namespace funring {

enum class ReductionVariant {
  BuchbergerCommutativeField,
  RightField,
  TwoSidedField,
  RightInt,
  TwoSidedInt,
};

enum class PositionPolicy { HeadFirst, Any };

struct ReductionSpec {
  ReductionVariant variant = ReductionVariant::RightField;
  PositionPolicy policy = PositionPolicy::HeadFirst;
  // extra length allowed in multiplier searches over presented monoids
  int multiplier_bound = 2;

  bool two_sided() const {
    return variant == ReductionVariant::TwoSidedField ||
           variant == ReductionVariant::TwoSidedInt;
  }
  bool integer_variant() const {
    return variant == ReductionVariant::RightInt ||
           variant == ReductionVariant::TwoSidedInt;
  }
  // throws when the variant does not fit the ring
  void validate(const FunctionRing& ring) const;
};

// picks the default variant for a ring and sidedness
ReductionSpec default_spec(const FunctionRing& ring, bool two_sided);

struct ReductionStep {
  std::size_t reducer = 0;
  std::optional<Monomial> left;  // absent for right/commutative variants
  Monomial right;                // all coefficient factors folded in here
  Term position;
  Coeff before;
  Coeff after;  // zero and absent from the output for field variants
};

struct NormalFormResult {
  Poly normal_form;
  std::vector<ReductionStep> trace;
  std::size_t steps = 0;
  bool budget_exhausted = false;
};

// One legal step at the position chosen by the policy; smallest reducer
// index wins ties (integer variants prefer the smallest applicable head
// coefficient first).  Absent iff p is irreducible.
std::optional<std::pair<ReductionStep, Poly>> reduce_once(
    const Poly& p, std::span<const Poly> basis, const ReductionSpec& spec);

NormalFormResult normal_form(const Poly& p, std::span<const Poly> basis,
                             const ReductionSpec& spec,
                             std::size_t budget = 100000);

// The monomial multiple of basis[entry.reducer] contributed by one step.
Poly step_contribution(const ReductionStep& st, std::span<const Poly> basis);

struct StandardRepEntry {
  std::size_t reducer = 0;
  std::optional<Monomial> left;
  Monomial right;
};

struct StandardRep {
  std::vector<StandardRepEntry> entries;
};

Poly replay_rep(const StandardRep& rep, std::span<const Poly> basis,
                const FunctionRing::Ptr& ring);

// On success the representation satisfies the head-term bounds of a
// (right) reductive standard representation; this is asserted internally.
std::optional<StandardRep> reduces_to_zero(const Poly& p,
                                           std::span<const Poly> basis,
                                           const ReductionSpec& spec,
                                           std::size_t budget = 100000);

}  // namespace funring

#endif
