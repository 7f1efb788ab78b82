#ifndef FUNRING_APPLICATIONS_HPP
#define FUNRING_APPLICATIONS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "funring/completion.hpp"

namespace funring {

enum class Verdict { Yes, No, Unknown };

// A generated (one- or two-sided) ideal with a lazily computed and cached
// completion.
class IdealHandle {
 public:
  IdealHandle(FunctionRing::Ptr ring, std::vector<Poly> gens,
              ReductionSpec spec, CompletionBudget budget = {});

  const FunctionRing::Ptr& ring() const { return ring_; }
  const std::vector<Poly>& generators() const { return gens_; }
  const ReductionSpec& spec() const { return spec_; }
  const CompletionBudget& budget() const { return budget_; }

  const CompletionResult& completion() const;
  bool basis_complete() const;
  void replace_generators(std::vector<Poly> gens);  // invalidates the cache

  // install an externally certified completion (elimination results)
  void install_completion(CompletionResult res) const;

 private:
  FunctionRing::Ptr ring_;
  std::vector<Poly> gens_;
  ReductionSpec spec_;
  CompletionBudget budget_;
  mutable std::optional<CompletionResult> cache_;
};

struct MemberResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<StandardRep> basis_rep;  // over the completed basis
};

MemberResult member(const Poly& f, const IdealHandle& I);

// Representation over the original generators, composed from the basis
// representation and the completion provenance; restricted to fields.
Provenance represent(const Poly& f, const IdealHandle& I);

Verdict inclusion(const IdealHandle& inner, const IdealHandle& outer);
Verdict equality(const IdealHandle& a, const IdealHandle& b);
Verdict triviality(const IdealHandle& I);

IdealHandle ideal_sum(const IdealHandle& a, const IdealHandle& b);
// pairwise generator products; commutative rings only
IdealHandle ideal_product(const IdealHandle& a, const IdealHandle& b);

struct ResidueTable {
  std::vector<Term> residues;
  bool complete = false;
  // entries[i][j] = representative of residues[i] * residues[j]
  std::vector<std::vector<Poly>> entries;
};

class QuotientContext {
 public:
  explicit QuotientContext(const IdealHandle& I);
  Poly representative(const Poly& f) const;
  bool congruent(const Poly& f, const Poly& g) const;
  Poly add(const Poly& f, const Poly& g) const;
  Poly mul(const Poly& f, const Poly& g) const;
  ResidueTable multiplication_table(std::size_t max_residues,
                                    int size_bound) const;

 private:
  const IdealHandle& ideal_;
};

// --- elimination-based constructions ------------------------------------

FunctionRing::Ptr tag_ring(const FunctionRing::Ptr& base, int ntags,
                           bool tags_larger);
Poly embed_in_tag_ring(const Poly& f, const FunctionRing::Ptr& tring,
                       const std::vector<int>& tagword);
Poly strip_tags(const Poly& f, const FunctionRing::Ptr& base);
bool tag_free(const Poly& f);

// Keeps the tag-free part of a certified basis computed under a
// tags-largest elimination ordering.
IdealHandle eliminate(const IdealHandle& tagged,
                      const FunctionRing::Ptr& base_ring);

IdealHandle intersect(const IdealHandle& a, const IdealHandle& b);
Verdict radical_member(const Poly& f, const IdealHandle& I);

struct InverseResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Poly> inverse;
};

// side: false = right inverse, true = left inverse.  With modulo set the
// inverse is taken in ring/ideal.
InverseResult inverse_element(const Poly& f, bool left_side,
                              const IdealHandle* modulo,
                              const CompletionBudget& budget = {});

// --- polynomial mappings --------------------------------------------------

class PolyMap {
 public:
  PolyMap(std::vector<Poly> targets, const CompletionBudget& budget = {});
  const std::vector<Poly>& targets() const { return targets_; }
  const IdealHandle& graph_ideal() const { return *handle_; }
  const FunctionRing::Ptr& tag_ring_ptr() const { return tring_; }

  // substitute targets for tags in a tag-only polynomial
  Poly apply(const Poly& tag_only) const;
  std::vector<Poly> kernel_basis() const;
  Verdict kernel_member(const Poly& tag_only) const;
  // preimage via the tag-only normal form; replayed before returning
  std::optional<Poly> preimage(const Poly& f) const;
  Verdict onto() const;

 private:
  std::vector<Poly> targets_;
  FunctionRing::Ptr tring_;
  std::shared_ptr<IdealHandle> handle_;
};

// --- one-sided linear equations over the integers -------------------------

struct SolutionSet {
  bool solvable = false;
  std::vector<Poly> particular;                 // length m when solvable
  std::vector<std::vector<Poly>> homogeneous;   // generators, each length m
  std::vector<std::vector<Poly>> P, Q;          // f * P = g, g * Q = f
  bool complete = true;  // localizations and saturators were finite
};

// f_1 o X_1 + ... + f_m o X_m = f_0 over Z with term-valued multiplication
SolutionSet solve_linear_int(const std::vector<Poly>& fs, const Poly& f0,
                             const CompletionBudget& budget = {});

}  // namespace funring

#endif
