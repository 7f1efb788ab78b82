#ifndef FUNRING_COMPLETION_HPP
#define FUNRING_COMPLETION_HPP

#include <span>
#include <string>
#include <vector>

#include "funring/critical.hpp"

namespace funring {

// basis element == sum of left o F[gen] o right over the entries
struct ProvEntry {
  std::size_t gen = 0;
  std::optional<Monomial> left;   // absent = identity
  std::optional<Monomial> right;  // coefficient factors live here
};

using Provenance = std::vector<ProvEntry>;

Poly replay_provenance(const Provenance& prov, std::span<const Poly> gens,
                       const FunctionRing::Ptr& ring);
Provenance prov_scale(const FunctionRing& ring, Provenance prov,
                      const Coeff& c);
Provenance prov_mul_right(const FunctionRing& ring, const Provenance& prov,
                          const Monomial& m);
Provenance prov_mul_left(const FunctionRing& ring, const Provenance& prov,
                         const Monomial& m);
Provenance prov_add(const FunctionRing& ring, Provenance a,
                    const Provenance& b);
Provenance prov_neg(const FunctionRing& ring, Provenance prov);

struct CompletionBudget {
  std::size_t work_items = 10000;
  std::size_t nf_steps = 4000;
  int multiplier_bound = 2;
  int saturator_bound = 64;
};

enum class CertVerdict { Pass, Fail, Indeterminate };

struct GroebnerCertificate {
  CertVerdict verdict = CertVerdict::Indeterminate;
  std::string witness;
  std::size_t checks = 0;
  bool localization_complete = true;
};

struct CompletionResult {
  enum class Status { Complete, BudgetExhausted };
  std::vector<Poly> basis;
  std::vector<Provenance> provenance;
  Status status = Status::BudgetExhausted;
  GroebnerCertificate certificate;
  std::size_t work_items = 0;
  bool localization_complete = true;
  std::vector<std::string> log;  // one line per processed work item
};

// Fair completion: a single FIFO over pair and saturation work items.
CompletionResult complete(const std::vector<Poly>& gens,
                          const ReductionSpec& spec,
                          const CompletionBudget& budget = {});

// The classical commutative procedure; interreduced and monic.
CompletionResult buchberger_commutative(const std::vector<Poly>& gens,
                                        const CompletionBudget& budget = {});

// Interreduction of a certified basis; keeps the provenance aligned when
// run on a CompletionResult.
std::vector<Poly> interreduce(std::vector<Poly> basis,
                              const ReductionSpec& spec);
void interreduce_result(CompletionResult& res, const ReductionSpec& spec);

GroebnerCertificate is_groebner(std::span<const Poly> basis,
                                const ReductionSpec& spec,
                                const CompletionBudget& budget = {});

}  // namespace funring

#endif
