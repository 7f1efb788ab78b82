#include "funring/completion.hpp"

#include <deque>
#include <sstream>
#include <stdexcept>

namespace funring {

Poly replay_provenance(const Provenance& prov, std::span<const Poly> gens,
                       const FunctionRing::Ptr& ring) {
  Poly acc = Poly::zero(ring);
  for (const auto& e : prov) {
    Poly f = gens[e.gen];
    if (e.left) f = f.mul_monomial(*e.left, true);
    if (e.right) f = f.mul_monomial(*e.right, false);
    acc = acc + f;
  }
  return acc;
}

Provenance prov_scale(const FunctionRing& ring, Provenance prov,
                      const Coeff& c) {
  const auto& dom = ring.domain();
  for (auto& e : prov) {
    if (e.right)
      e.right->coeff = dom.mul(e.right->coeff, c);
    else if (ring.universe().has_unit())
      e.right = Monomial{c, ring.universe().unit()};
    else
      throw std::logic_error("cannot scale an identity multiplier");
  }
  return prov;
}

Provenance prov_mul_right(const FunctionRing& ring, const Provenance& prov,
                          const Monomial& m) {
  const auto& u = ring.universe();
  const auto& dom = ring.domain();
  Provenance out;
  for (const auto& e : prov) {
    if (!e.right) {
      out.push_back({e.gen, e.left, m});
      continue;
    }
    for (const auto& [q, t] : u.mul(e.right->term, m.term)) {
      Coeff c = dom.mul(dom.mul(e.right->coeff, m.coeff), dom.from_rat(q));
      if (!dom.is_zero(c)) out.push_back({e.gen, e.left, Monomial{c, t}});
    }
  }
  return out;
}

Provenance prov_mul_left(const FunctionRing& ring, const Provenance& prov,
                         const Monomial& m) {
  const auto& u = ring.universe();
  const auto& dom = ring.domain();
  Provenance out;
  for (const auto& e : prov) {
    if (!e.left) {
      ProvEntry ne{e.gen, m, e.right};
      // keep multiplier coefficients on the right component
      if (!(m.coeff == dom.one())) {
        if (ne.right)
          ne.right->coeff = dom.mul(ne.right->coeff, m.coeff);
        else
          ne.right = Monomial{m.coeff, u.unit()};
        ne.left->coeff = dom.one();
      }
      out.push_back(std::move(ne));
      continue;
    }
    for (const auto& [q, t] : u.mul(m.term, e.left->term)) {
      Coeff c = dom.mul(m.coeff, dom.from_rat(q));
      ProvEntry ne{e.gen, Monomial{dom.one(), t}, e.right};
      if (ne.right)
        ne.right->coeff = dom.mul(ne.right->coeff, c);
      else
        ne.right = Monomial{c, u.unit()};
      out.push_back(std::move(ne));
    }
  }
  return out;
}

Provenance prov_add(const FunctionRing& ring, Provenance a,
                    const Provenance& b) {
  const auto& dom = ring.domain();
  for (const auto& e : b) {
    bool merged = false;
    for (auto& x : a) {
      bool same_left = (!x.left && !e.left) ||
                       (x.left && e.left && x.left->term == e.left->term &&
                        x.left->coeff == e.left->coeff);
      bool same_right_term =
          (!x.right && !e.right) ||
          (x.right && e.right && x.right->term == e.right->term);
      if (x.gen == e.gen && same_left && same_right_term && x.right &&
          e.right) {
        x.right->coeff = dom.add(x.right->coeff, e.right->coeff);
        merged = true;
        break;
      }
    }
    if (!merged) a.push_back(e);
  }
  // drop zero entries
  Provenance out;
  for (auto& e : a) {
    if (e.right && dom.is_zero(e.right->coeff)) continue;
    out.push_back(std::move(e));
  }
  return out;
}

Provenance prov_neg(const FunctionRing& ring, Provenance prov) {
  return prov_scale(ring, std::move(prov), ring.domain().neg(ring.domain().one()));
}

namespace {

struct WorkItem {
  enum class Kind { Seed, Pair, Saturation } kind;
  std::size_t a = 0, b = 0;  // seed: gen index; pair: basis indices
  Term multiplier;           // saturation multiplier
  bool left_side = false;    // saturation side
};

struct Engine {
  const std::vector<Poly>& gens;
  const ReductionSpec& spec;
  const CompletionBudget& budget;
  FunctionRing::Ptr ring;
  CompletionResult res;
  std::deque<WorkItem> queue;

  Engine(const std::vector<Poly>& g, const ReductionSpec& s,
         const CompletionBudget& b)
      : gens(g), spec(s), budget(b) {
    if (!gens.empty()) ring = gens[0].ring();
  }

  // normal form against the current basis with provenance tracking
  std::pair<Poly, Provenance> reduce_with_prov(Poly p, Provenance prov) {
    auto nf = normal_form(p, res.basis, spec, budget.nf_steps);
    for (const auto& st : nf.trace) {
      Provenance contrib = res.provenance[st.reducer];
      if (st.left) contrib = prov_mul_left(*ring, contrib, *st.left);
      contrib = prov_mul_right(*ring, contrib, st.right);
      prov = prov_add(*ring, std::move(prov), prov_neg(*ring, contrib));
    }
    return {std::move(nf.normal_form), std::move(prov)};
  }

  void enqueue_new_element(std::size_t n) {
    for (std::size_t k = 0; k <= n; ++k)
      queue.push_back({WorkItem::Kind::Pair, k, n, {}, false});
    const Term& h = res.basis[n].head_term();
    const auto& u = ring->universe();
    for (const auto& w : u.collapse_multipliers(h, false))
      queue.push_back({WorkItem::Kind::Saturation, n, 0, w, false});
    if (spec.two_sided())
      for (const auto& w : u.collapse_multipliers(h, true))
        queue.push_back({WorkItem::Kind::Saturation, n, 0, w, true});
  }

  void add_candidate(Poly cand, Provenance prov, const std::string& what) {
    auto [nf, nfprov] = reduce_with_prov(std::move(cand), std::move(prov));
    if (nf.is_zero()) {
      res.log.push_back(what + " -> 0");
      return;
    }
    if (!spec.integer_variant()) {
      Coeff inv = *ring->domain().invert(nf.head_coeff());
      nf = nf.scale(inv);
      nfprov = prov_scale(*ring, std::move(nfprov), inv);
    } else if (nf.head_coeff().scalar() < 0) {
      nf = -nf;
      nfprov = prov_neg(*ring, std::move(nfprov));
    }
    // soundness: everything entering the basis replays over the generators
    if (!(replay_provenance(nfprov, gens, ring) == nf))
      throw std::logic_error("provenance replay failed for " + what);
    res.basis.push_back(std::move(nf));
    res.provenance.push_back(std::move(nfprov));
    std::size_t n = res.basis.size() - 1;
    res.log.push_back(what + " -> basis[" + std::to_string(n) +
                      "] = " + res.basis[n].str());
    enqueue_new_element(n);
  }

  void run() {
    for (std::size_t g = 0; g < gens.size(); ++g)
      queue.push_back({WorkItem::Kind::Seed, g, 0, {}, false});
    while (!queue.empty()) {
      if (res.work_items >= budget.work_items) {
        res.status = CompletionResult::Status::BudgetExhausted;
        return;
      }
      WorkItem item = std::move(queue.front());
      queue.pop_front();
      ++res.work_items;
      switch (item.kind) {
        case WorkItem::Kind::Seed: {
          // G starts from F itself; only candidates derived later are
          // normalized against the current basis
          Poly f = gens[item.a];
          if (f.is_zero()) {
            res.log.push_back("seed " + std::to_string(item.a) + " -> 0");
            break;
          }
          Provenance prov{{item.a, std::nullopt, std::nullopt}};
          if (!spec.integer_variant()) {
            Coeff inv = *ring->domain().invert(f.head_coeff());
            f = f.scale(inv);
            prov = prov_scale(*ring, std::move(prov), inv);
          } else if (f.head_coeff().scalar() < 0) {
            f = -f;
            prov = prov_neg(*ring, std::move(prov));
          }
          bool dup = false;
          for (const auto& b : res.basis) dup = dup || b == f;
          if (dup) {
            res.log.push_back("seed " + std::to_string(item.a) +
                              " -> duplicate");
            break;
          }
          res.basis.push_back(std::move(f));
          res.provenance.push_back(std::move(prov));
          std::size_t n = res.basis.size() - 1;
          res.log.push_back("seed " + std::to_string(item.a) + " -> basis[" +
                            std::to_string(n) + "]");
          enqueue_new_element(n);
          break;
        }
        case WorkItem::Kind::Pair: {
          auto [insts, complete] =
              s_polynomials(res.basis[item.a], res.basis[item.b], spec,
                            budget.multiplier_bound);
          if (!complete) res.localization_complete = false;
          for (const auto& inst : insts) {
            if (inst.value.is_zero()) continue;
            auto side_prov = [&](int side, const std::optional<Monomial>& l,
                                 const Monomial& r) {
              Provenance pr =
                  res.provenance[side == 0 ? item.a : item.b];
              if (l) pr = prov_mul_left(*ring, pr, *l);
              return prov_mul_right(*ring, pr, r);
            };
            Provenance prov = prov_add(
                *ring, side_prov(inst.a_side, inst.a_left, inst.a_right),
                prov_neg(*ring, side_prov(inst.b_side, inst.b_left,
                                          inst.b_right)));
            add_candidate(inst.value, std::move(prov),
                          "spol(" + std::to_string(item.a) + "," +
                              std::to_string(item.b) + ")@" +
                              ring->universe().term_str(inst.overlap));
          }
          break;
        }
        case WorkItem::Kind::Saturation: {
          const Poly& f = res.basis[item.a];
          Monomial m{ring->domain().one(), item.multiplier};
          Poly cand = f.mul_monomial(m, item.left_side);
          Provenance prov =
              item.left_side
                  ? prov_mul_left(*ring, res.provenance[item.a], m)
                  : prov_mul_right(*ring, res.provenance[item.a], m);
          add_candidate(std::move(cand), std::move(prov),
                        "sat(" + std::to_string(item.a) + " o " +
                            ring->universe().term_str(item.multiplier) + ")");
          break;
        }
      }
    }
    res.status = CompletionResult::Status::Complete;
  }
};

}  // namespace

CompletionResult complete(const std::vector<Poly>& gens,
                          const ReductionSpec& spec,
                          const CompletionBudget& budget) {
  CompletionResult empty;
  if (gens.empty()) {
    empty.status = CompletionResult::Status::Complete;
    empty.certificate.verdict = CertVerdict::Pass;
    return empty;
  }
  spec.validate(*gens[0].ring());
  Engine eng(gens, spec, budget);
  eng.run();
  CompletionResult res = std::move(eng.res);
  if (res.status == CompletionResult::Status::Complete) {
    // A drained queue with a non-failing certificate counts as complete;
    // bounded localizations leave the certificate Indeterminate and that
    // nuance is surfaced separately.
    res.certificate = is_groebner(res.basis, spec, budget);
    if (!res.localization_complete)
      res.certificate.localization_complete = false;
    if (res.certificate.verdict == CertVerdict::Fail)
      throw std::logic_error("completion drained but certificate failed: " +
                             res.certificate.witness);
  } else {
    res.certificate.verdict = CertVerdict::Indeterminate;
    res.certificate.witness = "budget exhausted";
  }
  return res;
}

CompletionResult buchberger_commutative(const std::vector<Poly>& gens,
                                        const CompletionBudget& budget) {
  if (gens.empty()) {
    CompletionResult res;
    res.status = CompletionResult::Status::Complete;
    res.certificate.verdict = CertVerdict::Pass;
    return res;
  }
  ReductionSpec spec;
  spec.variant = ReductionVariant::BuchbergerCommutativeField;
  auto res = complete(gens, spec, budget);
  interreduce_result(res, spec);
  return res;
}

std::vector<Poly> interreduce(std::vector<Poly> basis,
                              const ReductionSpec& spec) {
  if (basis.empty()) return basis;
  auto ring = basis[0].ring();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::vector<Poly> others;
      for (std::size_t j = 0; j < basis.size(); ++j)
        if (j != i) others.push_back(basis[j]);
      auto nf = normal_form(basis[i], others, spec, 4000);
      if (!(nf.normal_form == basis[i])) {
        changed = true;
        if (nf.normal_form.is_zero()) {
          basis.erase(basis.begin() + i);
        } else {
          basis[i] = nf.normal_form;
        }
        break;
      }
    }
  }
  for (auto& b : basis)
    b = spec.integer_variant() ? b.positive_head() : b.monic();
  std::sort(basis.begin(), basis.end(), [&](const Poly& a, const Poly& b) {
    return ring->universe().compare(a.head_term(), b.head_term()) > 0;
  });
  return basis;
}

void interreduce_result(CompletionResult& res, const ReductionSpec& spec) {
  if (res.basis.empty()) return;
  auto ring = res.basis[0].ring();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < res.basis.size(); ++i) {
      std::vector<Poly> others;
      std::vector<Provenance> oprov;
      for (std::size_t j = 0; j < res.basis.size(); ++j)
        if (j != i) {
          others.push_back(res.basis[j]);
          oprov.push_back(res.provenance[j]);
        }
      auto nf = normal_form(res.basis[i], others, spec, 4000);
      if (nf.normal_form == res.basis[i]) continue;
      changed = true;
      Provenance prov = res.provenance[i];
      for (const auto& st : nf.trace) {
        Provenance contrib = oprov[st.reducer];
        if (st.left) contrib = prov_mul_left(*ring, contrib, *st.left);
        contrib = prov_mul_right(*ring, contrib, st.right);
        prov = prov_add(*ring, std::move(prov), prov_neg(*ring, contrib));
      }
      if (nf.normal_form.is_zero()) {
        res.basis.erase(res.basis.begin() + i);
        res.provenance.erase(res.provenance.begin() + i);
      } else {
        res.basis[i] = nf.normal_form;
        res.provenance[i] = std::move(prov);
      }
      break;
    }
  }
  for (std::size_t i = 0; i < res.basis.size(); ++i) {
    if (spec.integer_variant()) {
      if (res.basis[i].head_coeff().scalar() < 0) {
        res.basis[i] = -res.basis[i];
        res.provenance[i] = prov_neg(*ring, std::move(res.provenance[i]));
      }
    } else {
      Coeff inv = *ring->domain().invert(res.basis[i].head_coeff());
      res.basis[i] = res.basis[i].scale(inv);
      res.provenance[i] = prov_scale(*ring, std::move(res.provenance[i]), inv);
    }
  }
  // stable order: descending head terms
  std::vector<std::size_t> idx(res.basis.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return ring->universe().compare(res.basis[a].head_term(),
                                    res.basis[b].head_term()) > 0;
  });
  std::vector<Poly> nb;
  std::vector<Provenance> np;
  for (std::size_t i : idx) {
    nb.push_back(std::move(res.basis[i]));
    np.push_back(std::move(res.provenance[i]));
  }
  res.basis = std::move(nb);
  res.provenance = std::move(np);
}

GroebnerCertificate is_groebner(std::span<const Poly> basis,
                                const ReductionSpec& spec,
                                const CompletionBudget& budget) {
  GroebnerCertificate cert;
  cert.verdict = CertVerdict::Pass;
  if (basis.empty()) return cert;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    // saturator elements reduce to zero
    auto sat = saturator(basis[i], spec, budget.saturator_bound);
    if (!sat.complete) {
      cert.localization_complete = false;
      cert.verdict = CertVerdict::Indeterminate;
    }
    for (const auto& el : sat.elements) {
      ++cert.checks;
      auto nf = normal_form(el.value, basis, spec, budget.nf_steps);
      if (!nf.normal_form.is_zero()) {
        cert.verdict = CertVerdict::Fail;
        cert.witness = nf.normal_form.str();
        return cert;
      }
    }
    for (std::size_t j = i; j < basis.size(); ++j) {
      auto [insts, complete] =
          s_polynomials(basis[i], basis[j], spec, budget.multiplier_bound);
      if (!complete) {
        cert.localization_complete = false;
        cert.verdict = CertVerdict::Indeterminate;
      }
      for (const auto& inst : insts) {
        ++cert.checks;
        auto nf = normal_form(inst.value, basis, spec, budget.nf_steps);
        if (!nf.normal_form.is_zero()) {
          cert.verdict = CertVerdict::Fail;
          cert.witness = nf.normal_form.str();
          return cert;
        }
      }
    }
  }
  if (cert.verdict == CertVerdict::Indeterminate && cert.witness.empty())
    cert.witness = "incomplete localization within budget";
  return cert;
}

}  // namespace funring
