#include "funring/applications.hpp"

#include <deque>
#include <stdexcept>

namespace funring {

IdealHandle::IdealHandle(FunctionRing::Ptr ring, std::vector<Poly> gens,
                         ReductionSpec spec, CompletionBudget budget)
    : ring_(std::move(ring)),
      gens_(std::move(gens)),
      spec_(spec),
      budget_(budget) {}

const CompletionResult& IdealHandle::completion() const {
  if (!cache_) cache_ = complete(gens_, spec_, budget_);
  return *cache_;
}

bool IdealHandle::basis_complete() const {
  return completion().status == CompletionResult::Status::Complete;
}

void IdealHandle::replace_generators(std::vector<Poly> gens) {
  gens_ = std::move(gens);
  cache_.reset();
}

void IdealHandle::install_completion(CompletionResult res) const {
  cache_ = std::move(res);
}

MemberResult member(const Poly& f, const IdealHandle& I) {
  MemberResult out;
  const auto& res = I.completion();
  auto rep = reduces_to_zero(f, res.basis, I.spec(), I.budget().nf_steps);
  if (rep) {
    out.verdict = Verdict::Yes;
    out.basis_rep = std::move(rep);
    return out;
  }
  out.verdict = I.basis_complete() ? Verdict::No : Verdict::Unknown;
  return out;
}

namespace {

// representation of f over the original generators via provenance,
// checked by value replay
std::optional<Provenance> represent_internal(const Poly& f,
                                             const IdealHandle& I) {
  auto m = member(f, I);
  if (m.verdict != Verdict::Yes) return std::nullopt;
  const auto& ring = *I.ring();
  const auto& res = I.completion();
  Provenance out;
  for (const auto& e : m.basis_rep->entries) {
    Provenance part = res.provenance[e.reducer];
    if (e.left) part = prov_mul_left(ring, part, *e.left);
    part = prov_mul_right(ring, part, e.right);
    out = prov_add(ring, std::move(out), part);
  }
  Poly back = replay_provenance(out, I.generators(), I.ring());
  if (!(back == f))
    throw std::logic_error("generator representation replay failed");
  return out;
}

Poly unit_poly(const FunctionRing::Ptr& ring) {
  if (!ring->universe().has_unit())
    throw std::invalid_argument("ring has no unit");
  return Poly::unit(ring);
}

}  // namespace

Provenance represent(const Poly& f, const IdealHandle& I) {
  if (!I.ring()->domain().is_field())
    throw std::invalid_argument(
        "representations over the original generators need field "
        "coefficients");
  auto rep = represent_internal(f, I);
  if (!rep) throw std::invalid_argument("polynomial is not a known member");
  return *rep;
}

Verdict inclusion(const IdealHandle& inner, const IdealHandle& outer) {
  bool unknown = false;
  for (const auto& g : inner.generators()) {
    auto m = member(g, outer);
    if (m.verdict == Verdict::No) return Verdict::No;
    if (m.verdict == Verdict::Unknown) unknown = true;
  }
  return unknown ? Verdict::Unknown : Verdict::Yes;
}

Verdict equality(const IdealHandle& a, const IdealHandle& b) {
  Verdict i1 = inclusion(a, b);
  if (i1 == Verdict::No) return Verdict::No;
  Verdict i2 = inclusion(b, a);
  if (i2 == Verdict::No) return Verdict::No;
  if (i1 == Verdict::Yes && i2 == Verdict::Yes) return Verdict::Yes;
  return Verdict::Unknown;
}

Verdict triviality(const IdealHandle& I) {
  return member(unit_poly(I.ring()), I).verdict;
}

IdealHandle ideal_sum(const IdealHandle& a, const IdealHandle& b) {
  std::vector<Poly> gens = a.generators();
  for (const auto& g : b.generators()) gens.push_back(g);
  return IdealHandle(a.ring(), std::move(gens), a.spec(), a.budget());
}

IdealHandle ideal_product(const IdealHandle& a, const IdealHandle& b) {
  if (!a.ring()->universe().is_commutative())
    throw std::invalid_argument("ideal products need a commutative ring");
  std::vector<Poly> gens;
  for (const auto& f : a.generators())
    for (const auto& g : b.generators()) {
      Poly p = f.mul(g);
      if (!p.is_zero()) gens.push_back(p);
    }
  return IdealHandle(a.ring(), std::move(gens), a.spec(), a.budget());
}

// --- quotient rings ---------------------------------------------------------

QuotientContext::QuotientContext(const IdealHandle& I) : ideal_(I) {
  if (!I.basis_complete())
    throw std::invalid_argument(
        "quotient contexts need a complete basis for unique representatives");
}

Poly QuotientContext::representative(const Poly& f) const {
  return normal_form(f, ideal_.completion().basis, ideal_.spec(),
                     ideal_.budget().nf_steps)
      .normal_form;
}

bool QuotientContext::congruent(const Poly& f, const Poly& g) const {
  return representative(f - g).is_zero();
}

Poly QuotientContext::add(const Poly& f, const Poly& g) const {
  return representative(f + g);
}

Poly QuotientContext::mul(const Poly& f, const Poly& g) const {
  return representative(f.mul(g));
}

ResidueTable QuotientContext::multiplication_table(std::size_t max_residues,
                                                   int size_bound) const {
  ResidueTable table;
  const auto& ring = ideal_.ring();
  const auto& u = ring->universe();
  auto terms = u.enumerate_terms(8 * max_residues + 64, size_bound);
  int last_irreducible_size = -1;
  int max_size_seen = 0;
  std::size_t found = 0;
  for (const auto& t : terms) {
    max_size_seen = std::max(max_size_seen, u.term_size(t));
    Poly tp = Poly::monomial(ring, ring->domain().one(), t);
    if (representative(tp) == tp) {
      ++found;
      if (table.residues.size() < max_residues) table.residues.push_back(t);
      last_irreducible_size = std::max(last_irreducible_size, u.term_size(t));
    }
  }
  // in divisor-closed universes an empty top layer certifies completeness
  bool divisor_closed = u.kind() == UniverseKind::Commutative ||
                        u.kind() == UniverseKind::FreeWords ||
                        u.kind() == UniverseKind::FiniteTable;
  table.complete = found == table.residues.size() && divisor_closed &&
                   last_irreducible_size < max_size_seen;
  if (u.kind() == UniverseKind::FiniteTable)
    table.complete = found == table.residues.size();
  table.entries.resize(table.residues.size());
  for (std::size_t i = 0; i < table.residues.size(); ++i) {
    for (std::size_t j = 0; j < table.residues.size(); ++j) {
      Poly ti = Poly::monomial(ring, ring->domain().one(), table.residues[i]);
      Poly tj = Poly::monomial(ring, ring->domain().one(), table.residues[j]);
      table.entries[i].push_back(representative(ti.mul(tj)));
    }
  }
  return table;
}

// --- tag machinery ----------------------------------------------------------

FunctionRing::Ptr tag_ring(const FunctionRing::Ptr& base, int ntags,
                           bool tags_larger) {
  auto u = TermUniverse::tag_extension(base->universe_ptr(), ntags,
                                       tags_larger);
  return FunctionRing::make(u, base->domain());
}

Poly embed_in_tag_ring(const Poly& f, const FunctionRing::Ptr& tring,
                       const std::vector<int>& tagword) {
  std::vector<Monomial> ms;
  for (const auto& m : f.monomials())
    ms.push_back({m.coeff, Term{m.term.data, tagword}});
  return Poly(tring, std::move(ms));
}

bool tag_free(const Poly& f) {
  for (const auto& m : f.monomials())
    if (!m.term.tags.empty()) return false;
  return true;
}

Poly strip_tags(const Poly& f, const FunctionRing::Ptr& base) {
  std::vector<Monomial> ms;
  for (const auto& m : f.monomials()) {
    if (!m.term.tags.empty())
      throw std::invalid_argument("polynomial still carries tag symbols");
    ms.push_back({m.coeff, Term{m.term.data, {}}});
  }
  return Poly(base, std::move(ms));
}

IdealHandle eliminate(const IdealHandle& tagged,
                      const FunctionRing::Ptr& base_ring) {
  const auto& u = tagged.ring()->universe();
  if (u.kind() != UniverseKind::TagExtension || !u.tags_larger())
    throw std::invalid_argument(
        "elimination needs a tags-largest elimination ordering");
  const auto& res = tagged.completion();
  std::vector<Poly> kept;
  for (const auto& g : res.basis)
    if (tag_free(g)) kept.push_back(strip_tags(g, base_ring));
  ReductionSpec base_spec =
      default_spec(*base_ring, tagged.spec().two_sided());
  IdealHandle out(base_ring, kept, base_spec, tagged.budget());
  CompletionResult synth;
  synth.basis = kept;
  for (std::size_t i = 0; i < kept.size(); ++i)
    synth.provenance.push_back({{i, std::nullopt, std::nullopt}});
  synth.status = res.status;
  synth.certificate = res.certificate;
  synth.localization_complete = res.localization_complete;
  out.install_completion(std::move(synth));
  return out;
}

IdealHandle intersect(const IdealHandle& a, const IdealHandle& b) {
  if (a.ring() != b.ring())
    throw std::invalid_argument("intersection needs a common ring");
  unit_poly(a.ring());
  auto tring = tag_ring(a.ring(), 1, true);
  std::vector<Poly> gens;
  for (const auto& f : a.generators())
    gens.push_back(embed_in_tag_ring(f, tring, {0}));  // z o f
  for (const auto& f : b.generators())
    gens.push_back(embed_in_tag_ring(f, tring, {0}) -
                   embed_in_tag_ring(f, tring, {}));  // (z - 1) o f
  ReductionSpec tspec = default_spec(*tring, a.spec().two_sided());
  IdealHandle tagged(tring, std::move(gens), tspec, a.budget());
  return eliminate(tagged, a.ring());
}

Verdict radical_member(const Poly& f, const IdealHandle& I) {
  if (!I.ring()->universe().is_commutative())
    throw std::invalid_argument(
        "radical membership needs a commutative ring");
  Poly one = unit_poly(I.ring());
  auto tring = tag_ring(I.ring(), 1, true);
  std::vector<Poly> gens;
  for (const auto& g : I.generators())
    gens.push_back(embed_in_tag_ring(g, tring, {}));
  gens.push_back(embed_in_tag_ring(f, tring, {0}) -
                 embed_in_tag_ring(one, tring, {}));  // z o f - 1
  ReductionSpec tspec = default_spec(*tring, I.spec().two_sided());
  IdealHandle tagged(tring, std::move(gens), tspec, I.budget());
  return member(embed_in_tag_ring(one, tring, {}), tagged).verdict;
}

// --- inverse elements -------------------------------------------------------

namespace {

// mirror of a word universe: products read right to left
TermUniverse::Ptr mirror_universe(const TermUniverse& u) {
  switch (u.kind()) {
    case UniverseKind::FreeWords:
      return TermUniverse::free_words(u.generator_names(), u.ordering(),
                                      u.reductive().kind);
    case UniverseKind::PresentedMonoid: {
      std::vector<SrsRule> rev;
      for (const auto& r : u.rules()) {
        SrsRule nr = r;
        std::reverse(nr.lhs.begin(), nr.lhs.end());
        std::reverse(nr.rhs.begin(), nr.rhs.end());
        rev.push_back(std::move(nr));
      }
      return TermUniverse::presented_monoid(u.generator_names(), rev,
                                            u.ordering(), u.reductive().kind);
    }
    default:
      return nullptr;
  }
}

Poly mirror_poly(const Poly& f, const FunctionRing::Ptr& mring) {
  std::vector<Monomial> ms;
  for (const auto& m : f.monomials()) {
    Term t = m.term;
    std::reverse(t.data.begin(), t.data.end());
    ms.push_back({m.coeff, std::move(t)});
  }
  return Poly(mring, std::move(ms));
}

InverseResult ring_right_inverse(const Poly& f,
                                 const CompletionBudget& budget) {
  const auto& ring = f.ring();
  ReductionSpec spec = default_spec(*ring, false);
  IdealHandle I(ring, {f}, spec, budget);
  Poly one = unit_poly(ring);
  auto rep = represent_internal(one, I);
  InverseResult out;
  if (!rep) {
    out.verdict = I.basis_complete() ? Verdict::No : Verdict::Unknown;
    return out;
  }
  // 1 = sum f o m_i, so the inverse is the sum of the right multipliers
  Poly g = Poly::zero(ring);
  for (const auto& e : *rep) {
    if (e.left && !(e.left->term == ring->universe().unit()))
      throw std::logic_error("right-ideal representation with left part");
    Coeff c = e.left ? e.left->coeff : ring->domain().one();
    if (e.right)
      g = g + Poly::monomial(ring, ring->domain().mul(c, e.right->coeff),
                             e.right->term);
    else
      g = g + Poly::monomial(ring, c, ring->universe().unit());
  }
  if (!(f.mul(g) == one)) throw std::logic_error("inverse replay failed");
  out.verdict = Verdict::Yes;
  out.inverse = g;
  return out;
}

// right inverse of f in ring/ideal via the non-commuting tag construction;
// the leading tag factors out, so every tracked polynomial p_i stands for
// z o p_i together with h_i where p_i == f o h_i modulo the ideal
InverseResult quotient_right_inverse(const Poly& f, const IdealHandle& I,
                                     const CompletionBudget& budget) {
  const auto& ring = f.ring();
  const auto& dom = ring->domain();
  Poly one = unit_poly(ring);
  const auto& G = I.completion().basis;
  const ReductionSpec gspec = I.spec();
  ReductionSpec rspec;
  rspec.variant = dom.is_field() ? ReductionVariant::RightField
                                 : ReductionVariant::RightInt;
  rspec.multiplier_bound = gspec.multiplier_bound;

  std::vector<Poly> P;
  std::vector<Poly> H;
  auto reduce_full = [&](Poly p, Poly h) {
    while (true) {
      auto nfg = normal_form(p, G, gspec, budget.nf_steps);
      p = nfg.normal_form;
      auto st = reduce_once(p, P, rspec);
      if (!st) break;
      Poly contrib = H[st->first.reducer];
      if (st->first.left)
        contrib = contrib.mul_monomial(*st->first.left, true);
      contrib = contrib.mul_monomial(st->first.right, false);
      h = h - contrib;
      p = st->second;
    }
    return std::make_pair(p, h);
  };

  struct Item {
    enum class Kind { Sat, Pair } kind;
    std::size_t a = 0, b = 0;
    Term mult;
  };
  std::deque<Item> queue;
  // right multipliers that push the head of a tagged element onto a head
  // of the ambient basis: a suffix of the head completed to a G-head
  auto ghead_multipliers = [&](const Term& ph) {
    std::vector<Term> out;
    const auto& u = ring->universe();
    auto push = [&](Term w) {
      for (const auto& x : out)
        if (x == w) return;
      out.push_back(std::move(w));
    };
    switch (u.kind()) {
      case UniverseKind::FreeWords:
      case UniverseKind::PresentedMonoid:
      case UniverseKind::LetterTable: {
        for (const auto& g : G) {
          const auto& gh = g.head_term().data;
          for (std::size_t k = 1; k < gh.size(); ++k) {
            if (k > ph.data.size()) break;
            if (std::equal(gh.begin(), gh.begin() + k, ph.data.end() - k))
              push(Term{std::vector<int>(gh.begin() + k, gh.end()), {}});
          }
        }
        break;
      }
      case UniverseKind::FiniteTable: {
        for (std::size_t e = 0; e < u.generator_names().size(); ++e)
          push(Term{{static_cast<int>(e)}, {}});
        break;
      }
      default:
        break;
    }
    return out;
  };
  auto add_elem = [&](Poly cand, Poly h) {
    auto [nf, nh] = reduce_full(std::move(cand), std::move(h));
    if (nf.is_zero()) return;
    if (dom.is_field()) {
      Coeff inv = *dom.invert(nf.head_coeff());
      nf = nf.scale(inv);
      nh = nh.scale(inv);
    } else if (nf.head_coeff().scalar() < 0) {
      nf = -nf;
      nh = -nh;
    }
    P.push_back(nf);
    H.push_back(nh);
    std::size_t n = P.size() - 1;
    for (std::size_t k = 0; k <= n; ++k)
      queue.push_back({Item::Kind::Pair, k, n, {}});
    for (const auto& w :
         ring->universe().collapse_multipliers(P[n].head_term(), false))
      queue.push_back({Item::Kind::Sat, n, 0, w});
    for (const auto& w : ghead_multipliers(P[n].head_term()))
      queue.push_back({Item::Kind::Sat, n, 0, w});
  };

  add_elem(f, one);
  InverseResult out;
  if (P.empty()) {
    // f lies in the ideal; no inverse unless the quotient is trivial
    out.verdict = member(one, I).verdict == Verdict::Yes ? Verdict::Yes
                                                         : Verdict::No;
    if (out.verdict == Verdict::Yes) out.inverse = Poly::zero(ring);
    return out;
  }

  std::size_t items = 0;
  bool exhausted = false;
  while (!queue.empty()) {
    if (++items > budget.work_items) {
      exhausted = true;
      break;
    }
    Item it = queue.front();
    queue.pop_front();
    if (it.kind == Item::Kind::Sat) {
      Monomial m{dom.one(), it.mult};
      add_elem(P[it.a].mul_monomial(m, false),
               H[it.a].mul_monomial(m, false));
    } else {
      auto [insts, complete] =
          s_polynomials(P[it.a], P[it.b], rspec, budget.multiplier_bound);
      (void)complete;
      for (const auto& inst : insts) {
        if (inst.value.is_zero()) continue;
        auto apply_h = [&](int side, const std::optional<Monomial>& l,
                           const Monomial& r) {
          Poly h = H[side == 0 ? it.a : it.b];
          if (l) h = h.mul_monomial(*l, true);
          return h.mul_monomial(r, false);
        };
        Poly h = apply_h(inst.a_side, inst.a_left, inst.a_right) -
                 apply_h(inst.b_side, inst.b_left, inst.b_right);
        add_elem(inst.value, h);
      }
    }
  }

  auto [nf1, h1] = reduce_full(one, Poly::zero(ring));
  if (nf1.is_zero()) {
    Poly g = -h1;  // 1 - sum p_i o m_i = 0 modulo the ideal
    Poly check = normal_form(f.mul(g) - one, G, gspec, budget.nf_steps)
                     .normal_form;
    if (!check.is_zero())
      throw std::logic_error("quotient inverse replay failed");
    out.verdict = Verdict::Yes;
    out.inverse = g;
    return out;
  }
  out.verdict = exhausted || !I.basis_complete() ? Verdict::Unknown
                                                 : Verdict::No;
  return out;
}

}  // namespace

InverseResult inverse_element(const Poly& f, bool left_side,
                              const IdealHandle* modulo,
                              const CompletionBudget& budget) {
  const auto& ring = f.ring();
  const auto& u = ring->universe();
  if (f.is_zero()) return {Verdict::No, std::nullopt};
  if (left_side && !u.is_commutative()) {
    auto mu = mirror_universe(u);
    if (!mu)
      throw std::invalid_argument(
          "left inverses are supported for commutative and word universes");
    auto mring = FunctionRing::make(mu, ring->domain());
    if (modulo) {
      std::vector<Poly> mg;
      for (const auto& g : modulo->generators())
        mg.push_back(mirror_poly(g, mring));
      IdealHandle mI(mring, std::move(mg), modulo->spec(), modulo->budget());
      auto res = inverse_element(mirror_poly(f, mring), false, &mI, budget);
      if (res.inverse) res.inverse = mirror_poly(*res.inverse, ring);
      return res;
    }
    auto res = inverse_element(mirror_poly(f, mring), false, nullptr, budget);
    if (res.inverse) res.inverse = mirror_poly(*res.inverse, ring);
    return res;
  }
  if (!modulo) return ring_right_inverse(f, budget);
  if (u.is_commutative()) {
    // 1 in i + ideal(f); the f-entries of the representation assemble g
    std::vector<Poly> gens = modulo->generators();
    gens.push_back(f);
    IdealHandle J(ring, gens, modulo->spec(), budget);
    Poly one = unit_poly(ring);
    auto rep = represent_internal(one, J);
    InverseResult out;
    if (!rep) {
      out.verdict = J.basis_complete() ? Verdict::No : Verdict::Unknown;
      return out;
    }
    Poly g = Poly::zero(ring);
    const std::size_t fidx = gens.size() - 1;
    for (const auto& e : *rep) {
      if (e.gen != fidx) continue;
      Poly part = unit_poly(ring);
      if (e.left) part = part.mul_monomial(*e.left, true);
      if (e.right) part = part.mul_monomial(*e.right, false);
      g = g + part;
    }
    Poly chk = f.mul(g) - one;
    auto nf = normal_form(chk, modulo->completion().basis, modulo->spec(),
                          budget.nf_steps);
    if (!nf.normal_form.is_zero())
      throw std::logic_error("quotient inverse replay failed");
    out.verdict = Verdict::Yes;
    out.inverse = g;
    return out;
  }
  return quotient_right_inverse(f, *modulo, budget);
}

// --- polynomial mappings ----------------------------------------------------

PolyMap::PolyMap(std::vector<Poly> targets, const CompletionBudget& budget)
    : targets_(std::move(targets)) {
  if (targets_.empty()) throw std::invalid_argument("empty polynomial map");
  auto base = targets_[0].ring();
  if (!base->domain().is_field())
    throw std::invalid_argument("polynomial mappings need field coefficients");
  const int n = static_cast<int>(targets_.size());
  tring_ = tag_ring(base, n, false);  // tags are the smaller block
  std::vector<Poly> gens;
  for (int i = 0; i < n; ++i)
    gens.push_back(embed_in_tag_ring(targets_[i], tring_, {}) -
                   Poly::monomial(tring_, tring_->domain().one(),
                                  Term{base->universe().unit().data, {i}}));
  ReductionSpec spec = default_spec(*tring_, true);
  handle_ = std::make_shared<IdealHandle>(tring_, std::move(gens), spec,
                                          budget);
}

Poly PolyMap::apply(const Poly& tag_only) const {
  auto base = targets_[0].ring();
  if (!tag_free(tag_only)) {
    // substitute targets for the tag word, base part must be the unit
    Poly acc = Poly::zero(base);
    for (const auto& m : tag_only.monomials()) {
      if (!(Term{m.term.data, {}} == base->universe().unit()))
        throw std::invalid_argument("preimages must be tag-only");
      Poly part = Poly::monomial(base, m.coeff, base->universe().unit());
      for (int z : m.term.tags) part = part.mul(targets_[z]);
      acc = acc + part;
    }
    return acc;
  }
  return strip_tags(tag_only, base);
}

std::vector<Poly> PolyMap::kernel_basis() const {
  const auto& res = handle_->completion();
  std::vector<Poly> out;
  for (const auto& g : res.basis) {
    bool tagonly = true;
    for (const auto& m : g.monomials())
      tagonly = tagonly &&
                Term{m.term.data, {}} == targets_[0].ring()->universe().unit();
    if (tagonly) out.push_back(g);
  }
  return out;
}

Verdict PolyMap::kernel_member(const Poly& tag_only) const {
  return member(tag_only, *handle_).verdict;
}

std::optional<Poly> PolyMap::preimage(const Poly& f) const {
  Poly embedded = embed_in_tag_ring(f, tring_, {});
  auto nf = normal_form(embedded, handle_->completion().basis,
                        handle_->spec(), handle_->budget().nf_steps);
  const auto& base = targets_[0].ring();
  for (const auto& m : nf.normal_form.monomials())
    if (!(Term{m.term.data, {}} == base->universe().unit()))
      return std::nullopt;
  Poly h = nf.normal_form;
  // Tags commute with terms, so over a non-commutative base the normal
  // form can order a tag word differently from any product of the targets;
  // candidates are only returned when the substitution replays.
  if (!(apply(h) == f)) {
    if (base->universe().is_commutative())
      throw std::logic_error("preimage replay failed");
    return std::nullopt;
  }
  return h;
}

Verdict PolyMap::onto() const {
  const auto& base = targets_[0].ring();
  const auto& u = base->universe();
  if (!u.letter_generated())
    throw std::invalid_argument(
        "surjectivity test needs a letter-generated universe");
  bool unknown = false;
  for (std::size_t i = 0; i < u.generator_names().size(); ++i) {
    Poly gen = Poly::monomial(base, base->domain().one(),
                              u.generator(static_cast<int>(i)));
    auto h = preimage(gen);
    if (!h) {
      if (!handle_->basis_complete()) unknown = true;
      else return Verdict::No;
    }
  }
  return unknown ? Verdict::Unknown : Verdict::Yes;
}

// --- linear equations over the integers -------------------------------------

SolutionSet solve_linear_int(const std::vector<Poly>& fs, const Poly& f0,
                             const CompletionBudget& budget) {
  if (fs.empty()) throw std::invalid_argument("no equation coefficients");
  const auto& ring = fs[0].ring();
  if (ring->domain().kind() != DomainKind::IntegersDivRem)
    throw std::invalid_argument("the solver works over ZZ");
  auto ukind = ring->universe().kind();
  if (ukind != UniverseKind::Commutative && ukind != UniverseKind::FreeWords &&
      ukind != UniverseKind::PresentedMonoid)
    throw std::invalid_argument(
        "the solver needs term-valued multiplication of terms");
  const std::size_t m = fs.size();
  ReductionSpec spec;
  spec.variant = ReductionVariant::RightInt;
  spec.multiplier_bound = budget.multiplier_bound;

  SolutionSet sol;
  auto res = complete(fs, spec, budget);
  if (res.status != CompletionResult::Status::Complete ||
      !res.localization_complete)
    sol.complete = false;
  const auto& G = res.basis;
  const std::size_t n = G.size();

  auto mono_poly = [&](const std::optional<Monomial>& mm) {
    if (!mm) return unit_poly(ring);
    return Poly::monomial(ring, mm->coeff, mm->term);
  };

  // P: f * P = g from the completion provenance
  sol.P.assign(m, std::vector<Poly>(n, Poly::zero(ring)));
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& e : res.provenance[j]) {
      if (e.left && !(e.left->term == ring->universe().unit()))
        throw std::logic_error("right provenance with left multiplier");
      Poly add = mono_poly(e.right);
      if (e.left) add = add.scale(e.left->coeff);
      sol.P[e.gen][j] = sol.P[e.gen][j] + add;
    }
  for (std::size_t j = 0; j < n; ++j) {
    Poly chk = Poly::zero(ring);
    for (std::size_t i = 0; i < m; ++i) chk = chk + fs[i].mul(sol.P[i][j]);
    if (!(chk == G[j])) throw std::logic_error("P replay failed");
  }

  // Q: g * Q = f by reducing the generators
  sol.Q.assign(n, std::vector<Poly>(m, Poly::zero(ring)));
  for (std::size_t i = 0; i < m; ++i) {
    auto rep = reduces_to_zero(fs[i], G, spec, budget.nf_steps);
    if (!rep) throw std::logic_error("generator does not reduce by the basis");
    for (const auto& e : rep->entries)
      sol.Q[e.reducer][i] = sol.Q[e.reducer][i] + mono_poly({e.right});
  }
  for (std::size_t i = 0; i < m; ++i) {
    Poly chk = Poly::zero(ring);
    for (std::size_t j = 0; j < n; ++j) chk = chk + G[j].mul(sol.Q[j][i]);
    if (!(chk == fs[i])) throw std::logic_error("Q replay failed");
  }

  // particular solution from the normal-form trace of f0
  auto rep0 = reduces_to_zero(f0, G, spec, budget.nf_steps);
  if (rep0) {
    std::vector<Poly> h(n, Poly::zero(ring));
    for (const auto& e : rep0->entries)
      h[e.reducer] = h[e.reducer] + mono_poly({e.right});
    sol.particular.assign(m, Poly::zero(ring));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        sol.particular[i] = sol.particular[i] + sol.P[i][j].mul(h[j]);
    Poly chk = Poly::zero(ring);
    for (std::size_t i = 0; i < m; ++i)
      chk = chk + fs[i].mul(sol.particular[i]);
    if (!(chk == f0)) throw std::logic_error("particular solution replay failed");
    sol.solvable = true;
  } else if (!f0.is_zero() && !res.basis.empty() &&
             res.status == CompletionResult::Status::Complete) {
    sol.solvable = false;
  }

  // homogeneous generators over the basis: a-vectors from s-polynomials,
  // b-vectors from saturator elements
  std::vector<std::vector<Poly>> zvecs;
  auto base_rep_vector = [&](const Poly& p) {
    std::vector<Poly> h(n, Poly::zero(ring));
    auto rep = reduces_to_zero(p, G, spec, budget.nf_steps);
    if (!rep) return std::make_pair(false, h);
    for (const auto& e : rep->entries)
      h[e.reducer] = h[e.reducer] + mono_poly({e.right});
    return std::make_pair(true, h);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      auto [insts, complete] = s_polynomials(G[i], G[j], spec,
                                             budget.multiplier_bound);
      if (!complete) sol.complete = false;
      for (const auto& inst : insts) {
        auto [ok, h] = base_rep_vector(inst.value);
        if (!ok) {
          sol.complete = false;
          continue;
        }
        std::size_t ai = inst.a_side == 0 ? i : j;
        std::size_t bi = inst.b_side == 0 ? i : j;
        h[ai] = h[ai] - mono_poly({inst.a_right});
        h[bi] = h[bi] + mono_poly({inst.b_right});
        zvecs.push_back(std::move(h));
      }
    }
    auto sat = saturator(G[i], spec, budget.saturator_bound);
    if (!sat.complete) sol.complete = false;
    for (const auto& el : sat.elements) {
      if (!el.right) continue;  // the seed itself
      auto [ok, h] = base_rep_vector(el.value);
      if (!ok) {
        sol.complete = false;
        continue;
      }
      h[i] = h[i] - mono_poly(el.right);
      zvecs.push_back(std::move(h));
    }
  }
  // verify and translate through P; append the columns of P*Q - I
  for (auto& z : zvecs) {
    Poly chk = Poly::zero(ring);
    for (std::size_t j = 0; j < n; ++j) chk = chk + G[j].mul(z[j]);
    if (!chk.is_zero()) throw std::logic_error("a/b-vector replay failed");
    std::vector<Poly> w(m, Poly::zero(ring));
    bool nonzero = false;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) w[i] = w[i] + sol.P[i][j].mul(z[j]);
      nonzero = nonzero || !w[i].is_zero();
    }
    if (nonzero) sol.homogeneous.push_back(std::move(w));
  }
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<Poly> w(m, Poly::zero(ring));
    bool nonzero = false;
    for (std::size_t i = 0; i < m; ++i) {
      Poly pq = Poly::zero(ring);
      for (std::size_t j = 0; j < n; ++j)
        pq = pq + sol.P[i][j].mul(sol.Q[j][k]);
      if (i == k) pq = pq - unit_poly(ring);
      w[i] = pq;
      nonzero = nonzero || !pq.is_zero();
    }
    if (nonzero) sol.homogeneous.push_back(std::move(w));
  }
  // every homogeneous generator annihilates f
  for (const auto& w : sol.homogeneous) {
    Poly chk = Poly::zero(ring);
    for (std::size_t i = 0; i < m; ++i) chk = chk + fs[i].mul(w[i]);
    if (!chk.is_zero())
      throw std::logic_error("homogeneous generator replay failed");
  }
  return sol;
}

}  // namespace funring
