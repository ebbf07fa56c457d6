#ifndef MVDL_REDUCTIONS_HPP
#define MVDL_REDUCTIONS_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvdl/core.hpp"
#include "mvdl/learner.hpp"
#include "mvdl/oracles.hpp"
#include "mvdl/relations.hpp"
#include "mvdl/text.hpp"

namespace mvdl {

/// Translates a learner speaking `Dst` examples into one that talks to a
/// teacher speaking `Src` examples. Both translations reach the target only
/// through the source membership oracle they are handed.
template <class Src, class Dst>
struct ReductionPair {
  std::function<bool(const Dst&, const Membership<Src>&)> f_mem;
  std::function<Dst(const Src&, const MvdFormula&, const Membership<Src>&)> f_eq;
};

template <class E>
ReductionPair<E, E> identity_reduction() {
  return {[](const E& e, const Membership<E>& mem) { return mem(e); },
          [](const E& e, const MvdFormula&, const Membership<E>&) { return e; }};
}

/// Wraps `inner`, a callable (Membership<Dst>, Equivalence<Dst>) -> R, into a
/// callable (Membership<Src>, Equivalence<Src>) -> R.
template <class Src, class Dst, class Inner>
auto compose(ReductionPair<Src, Dst> pair, Inner inner) {
  return [pair = std::move(pair), inner = std::move(inner)](const Membership<Src>& mem, const Equivalence<Src>& eq) {
    Membership<Dst> inner_mem = [&](const Dst& e) { return pair.f_mem(e, mem); };
    Equivalence<Dst> inner_eq = [&](const MvdFormula& h) -> std::optional<Dst> {
      auto ce = eq(h);
      if (!ce) return std::nullopt;
      return pair.f_eq(*ce, h, mem);
    };
    return inner(inner_mem, inner_eq);
  };
}

/// The interpretation learner as a composable inner learner.
inline auto mvdf_learner(UniversePtr u, LearnerOptions options = {}) {
  return [u = std::move(u), options = std::move(options)](const InterpMembership& mem, const InterpEquivalence& eq) {
    return learn(u, mem, eq, options);
  };
}

// --- relations -----------------------------------------------------------------

namespace detail {

inline Relation pair_relation(const SchemaPtr& schema, const Tuple& a, const Tuple& b) {
  Relation r(schema);
  r.insert(a);
  r.insert(b);
  return r;
}

}  // namespace detail

/// Turns a relation counterexample into an interpretation counterexample by
/// scanning its tuple pairs.
inline Interpretation relation_ce_to_interp(const Relation& r, const MvdFormula& h, const Membership<Relation>& mem) {
  require_same_universe(r.schema(), h.universe());
  // h fails in r exactly when r is a positive counterexample.
  const bool positive = !mvd_holds(r, h);
  const auto& rows = r.tuples();
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      Relation p = detail::pair_relation(r.schema(), rows[i], rows[j]);
      if (mvd_holds(p, h) == positive) continue;
      if (mem(p) == positive) return agreement_interp(rows[i], rows[j], r.schema());
    }
  throw ContractViolation("no tuple pair of the " + std::to_string(rows.size()) +
                          "-tuple relation separates target and hypothesis; it is not a counterexample");
}

inline ReductionPair<Relation, Interpretation> relation_reduction(SchemaPtr schema) {
  return {[schema](const Interpretation& i, const Membership<Relation>& mem) { return mem(interp_to_pair(i, schema)); },
          [](const Relation& r, const MvdFormula& h, const Membership<Relation>& mem) {
            return relation_ce_to_interp(r, h, mem);
          }};
}

/// Learns a set of proper multivalued dependencies from relation examples.
inline LearnResult learn_mvd_from_relations(const SchemaPtr& schema, const Membership<Relation>& mem,
                                            const Equivalence<Relation>& eq, LearnerOptions options = {}) {
  return compose(relation_reduction(schema), mvdf_learner(schema, std::move(options)))(mem, eq);
}

// --- Horn from entailments -----------------------------------------------------

/// No exactly when the target entails true(I) -> z for some false z.
inline bool horn_f_mem(const Interpretation& i, const Membership<HornClause>& mem) {
  const auto& u = i.universe();
  for (std::size_t z : i.false_set())
    if (mem(HornClause::make(u, i.true_set(), z))) return false;
  return true;
}

/// Turns a Horn clause counterexample into an interpretation counterexample.
inline Interpretation horn_f_eq(const HornClause& c, const MvdFormula& h, const Membership<HornClause>& mem,
                                std::size_t cap = kDefaultEnumerationCap) {
  require_same_universe(c.universe(), h.universe());
  const auto& u = c.universe();
  const auto hyp_models = models(h, cap);
  const bool hyp_entails =
      std::all_of(hyp_models.begin(), hyp_models.end(), [&](VarSet t) { return c.holds_in(t); });

  if (hyp_entails) {
    // The target does not entail c: its closure of ant(c) is a model of the
    // target that violates c, and so violates h.
    VarSet s = c.antecedent();
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t z : u->all() - s)
        if (mem(HornClause::make(u, s, z))) {
          s.insert(z);
          grew = true;
          break;
        }
    }
    Interpretation out(u, s);
    if (c.holds_in(s))
      throw ContractViolation("Horn counterexample '" + format(c) + "' is entailed by both target and hypothesis");
    return out;
  }

  // The target entails c: a model of h that violates c.
  VarSet meet = u->all();
  bool any = false;
  for (VarSet t : hyp_models)
    if (c.antecedent().subset_of(t)) {
      meet = meet & t;
      any = true;
    }
  if (any && h.holds_in(meet) && !c.holds_in(meet)) return {u, meet};
  VarSet allowed = c.head() ? u->all() - VarSet::single(*c.head()) : u->all();
  auto hit = find_first_between(c.antecedent(), allowed, [&](VarSet t) { return h.holds_in(t) && !c.holds_in(t); });
  if (!hit) throw ContractViolation("Horn counterexample '" + format(c) + "' is entailed by neither side");
  return {u, *hit};
}

inline ReductionPair<HornClause, Interpretation> horn_reduction(std::size_t cap = kDefaultEnumerationCap) {
  return {[](const Interpretation& i, const Membership<HornClause>& mem) { return horn_f_mem(i, mem); },
          [cap](const HornClause& c, const MvdFormula& h, const Membership<HornClause>& mem) {
            return horn_f_eq(c, h, mem, cap);
          }};
}

/// Raised when a learned mvd formula has no Horn form under the extraction
/// scheme; carries the formula.
class HornExtractionError : public ContractViolation {
 public:
  explicit HornExtractionError(MvdFormula f)
      : ContractViolation("learned formula is not equivalent to its Horn extraction:\n" + format(f)),
        formula_(std::move(f)) {}
  const MvdFormula& formula() const { return formula_; }

 private:
  MvdFormula formula_;
};

namespace detail {

/// Adds X -> v for every v in the meet of the models of f above X.
inline void add_closure_clauses(HornFormula& out, VarSet x, const std::vector<VarSet>& f_models) {
  const auto& u = out.universe();
  VarSet meet = u->all();
  for (VarSet t : f_models)
    if (x.subset_of(t)) meet = meet & t;
  for (std::size_t v : meet - x) out.add(HornClause::make(u, x, v));
}

inline HornFormula antecedent_extraction(const MvdFormula& f, const std::vector<VarSet>& f_models) {
  HornFormula out(f.universe());
  std::vector<VarSet> seen;
  for (const auto& c : f) {
    if (std::find(seen.begin(), seen.end(), c.antecedent()) != seen.end()) continue;
    seen.push_back(c.antecedent());
    add_closure_clauses(out, c.antecedent(), f_models);
  }
  if (!f.holds_in(f.universe()->all())) out.add(HornClause::bottom(f.universe()));
  return out;
}

}  // namespace detail

/// Every X -> v with X an antecedent of f and f |= X -> v, plus V -> F when
/// entailed. Verified equivalent to f.
inline HornFormula mvdf_to_horn(const MvdFormula& f, std::size_t cap = kDefaultEnumerationCap) {
  auto out = detail::antecedent_extraction(f, models(f, cap));
  if (!equivalent(f, out, cap)) throw HornExtractionError(f);
  return out;
}

/// The strongest Horn formula implied by f. Its models are the intersections
/// of non-empty families of models of f, so it entails exactly the Horn
/// clauses f entails, whether or not f itself is Horn.
inline HornFormula horn_envelope(const MvdFormula& f, std::size_t cap = kDefaultEnumerationCap) {
  const auto f_models = models(f, cap);
  auto out = detail::antecedent_extraction(f, f_models);
  const VarSet::Bits limit = f.universe()->all().bits();
  for (VarSet::Bits b = 0; b < limit; ++b)
    if (out.holds_in(VarSet(b))) detail::add_closure_clauses(out, VarSet(b), f_models);
  return out;
}

struct HornLearnResult {
  HornFormula formula;
  LearnResult inner;
};

/// Learns Horn from interpretations through the mvd learner; every Horn
/// clause has an equivalent pair of mvd clauses.
inline HornLearnResult horn_i_via_mvdf(const UniversePtr& u, const InterpMembership& mem, const InterpEquivalence& eq,
                                       LearnerOptions options = {}, std::size_t cap = kDefaultEnumerationCap) {
  auto inner = learn(u, mem, eq, std::move(options));
  auto horn = mvdf_to_horn(inner.hypothesis, cap);
  return {std::move(horn), std::move(inner)};
}

/// The learner halts once hypothesis and target entail the same Horn clauses,
/// which does not make them equivalent on interpretations; the hypothesis is
/// therefore read back through its Horn envelope.
inline HornLearnResult learn_horn_from_entailments(const UniversePtr& u, const Membership<HornClause>& mem,
                                                   const Equivalence<HornClause>& eq, LearnerOptions options = {},
                                                   std::size_t cap = kDefaultEnumerationCap) {
  auto inner = [&](const InterpMembership& m, const InterpEquivalence& e) {
    auto learned = learn(u, m, e, options);
    auto horn = horn_envelope(learned.hypothesis, cap);
    return HornLearnResult{std::move(horn), std::move(learned)};
  };
  return compose(horn_reduction(cap), inner)(mem, eq);
}

// --- 2-quasi-Horn ----------------------------------------------------------------

/// No exactly when the target entails a clause true(I) -> w v z with w, z
/// distinct false variables; single-false and all-true interpretations use
/// true(I) -> v and V -> F.
inline bool qh_f_mem(const Interpretation& i, const Membership<QuasiHorn2Clause>& mem) {
  const auto& u = i.universe();
  const VarSet x = i.true_set();
  const VarSet falses = i.false_set();
  if (falses.empty()) return !mem(QuasiHorn2Clause::make(u, x, {}));
  if (falses.size() == 1) return !mem(QuasiHorn2Clause::make(u, x, falses));
  for (std::size_t w : falses)
    for (std::size_t z : falses)
      if (w < z && mem(QuasiHorn2Clause::make(u, x, VarSet::single(w) | VarSet::single(z)))) return false;
  return true;
}

/// Grows the clause X -> v v w into an mvd clause separating target and h.
/// Each remaining variable joins Y when the side entailing c also entails
/// X -> (Y + w') v Z, and joins Z otherwise.
inline MvdClause qh_ce_to_mvd(const QuasiHorn2Clause& c, const MvdFormula& h, const Membership<QuasiHorn2Clause>& mem,
                              std::size_t cap = kDefaultEnumerationCap) {
  require_same_universe(c.universe(), h.universe());
  if (c.heads().size() != 2) throw InvalidInput("expected a clause with exactly two consequents");
  const auto& u = c.universe();
  const VarSet x = c.antecedent();
  const auto hyp = ModelSet::of(h, cap);
  const bool hyp_side = hyp.entails(c);
  auto side_entails = [&](std::size_t a, std::size_t b) {
    auto q = QuasiHorn2Clause::make(u, x, VarSet::single(a) | VarSet::single(b));
    return hyp_side ? hyp.entails(q) : mem(q);
  };

  VarSet y = VarSet::single(c.heads().lowest());
  VarSet z = c.heads() - y;
  for (std::size_t w : u->all() - x - c.heads()) {
    bool joins_y = true;
    for (std::size_t b : z)
      if (!side_entails(w, b)) {
        joins_y = false;
        break;
      }
    if (joins_y)
      y.insert(w);
    else
      z.insert(w);
  }
  return MvdClause::make(u, x, y, z);
}

/// An interpretation counterexample in place of the clause counterexample c,
/// found by enumerating the interpretations that violate c.
inline Interpretation qh_interp_ce_substitute(const QuasiHorn2Clause& c, const MvdFormula& h,
                                              const Membership<QuasiHorn2Clause>& mem,
                                              std::size_t cap = kDefaultEnumerationCap) {
  require_same_universe(c.universe(), h.universe());
  const auto& u = c.universe();
  require_enumerable(u, cap);
  const bool hyp_entails = entails(h, c, cap);
  auto hit = find_first_between(c.antecedent(), u->all() - c.heads(), [&](VarSet t) {
    return hyp_entails ? qh_f_mem(Interpretation(u, t), mem) : h.holds_in(t);
  });
  if (!hit) throw ContractViolation("clause '" + format(c) + "' does not separate target and hypothesis");
  return {u, *hit};
}

inline ReductionPair<QuasiHorn2Clause, Interpretation> quasi2_reduction(std::size_t cap = kDefaultEnumerationCap) {
  return {[](const Interpretation& i, const Membership<QuasiHorn2Clause>& mem) { return qh_f_mem(i, mem); },
          [cap](const QuasiHorn2Clause& c, const MvdFormula& h, const Membership<QuasiHorn2Clause>& mem) {
            return qh_interp_ce_substitute(c, h, mem, cap);
          }};
}

inline LearnResult learn_mvdf_from_quasi2(const UniversePtr& u, const Membership<QuasiHorn2Clause>& mem,
                                          const Equivalence<QuasiHorn2Clause>& eq, LearnerOptions options = {},
                                          std::size_t cap = kDefaultEnumerationCap) {
  return compose(quasi2_reduction(cap), mvdf_learner(u, std::move(options)))(mem, eq);
}

}  // namespace mvdl

#endif  // MVDL_REDUCTIONS_HPP
