#ifndef MVDL_LEARNER_HPP
#define MVDL_LEARNER_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mvdl/core.hpp"
#include "mvdl/oracles.hpp"
#include "mvdl/text.hpp"

namespace mvdl {

using InterpMembership = Membership<Interpretation>;
using InterpEquivalence = Equivalence<Interpretation>;

/// V -> F when the all-true interpretation is negative, and V\{v} -> v for
/// every v whose single-false interpretation is negative. Exactly n+1 queries.
inline MvdFormula construct_h0(const UniversePtr& u, const InterpMembership& mem) {
  MvdFormula h0(u);
  if (!mem(Interpretation::all_true(u))) h0.add(MvdClause::bottom(u));
  for (std::size_t v = 0; v < u->size(); ++v)
    if (!mem(Interpretation(u, u->all() - VarSet::single(v)))) h0.add(MvdClause::unit(u, v));
  return h0;
}

/// The ordered pair (a, b): a loses at least one true variable in a & b, the
/// intersection satisfies h and is negative. Membership is asked last.
inline bool good_candidate(const Interpretation& a, const Interpretation& b, const MvdFormula& h,
                           const InterpMembership& mem) {
  Interpretation meet = intersect(a, b);
  if (!meet.true_set().proper_subset_of(a.true_set())) return false;
  if (!satisfies(meet, h)) return false;
  return !mem(meet);
}

/// Clauses true(i) -> Y v Z induced by the negative example i, after merging
/// in every positive example of p in sequence order.
inline std::vector<MvdClause> build_clauses(const Interpretation& i, const std::vector<Interpretation>& p) {
  const auto& u = i.universe();
  const VarSet x = i.true_set();
  const VarSet falses = i.false_set();
  std::vector<MvdClause> c;
  for (std::size_t v : falses) c.push_back(MvdClause::make(u, x, VarSet::single(v), falses - VarSet::single(v)));

  for (const auto& pos : p) {
    require_same_universe(u, pos.universe());
    std::vector<std::size_t> hit;
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k].violated_by(pos.true_set())) hit.push_back(k);
    if (hit.size() < 2) continue;  // a single violated clause merges into itself
    VarSet ys, zs;
    for (std::size_t k : hit) {
      ys = ys | c[k].left();
      zs = zs | c[k].right();
    }
    c[hit.front()] = MvdClause::make(u, x, ys, zs - ys);
    for (std::size_t k = hit.size(); k-- > 1;) c.erase(c.begin() + static_cast<std::ptrdiff_t>(hit[k]));
  }
  return c;
}

inline bool violates_any(const Interpretation& i, const std::vector<MvdClause>& clauses) {
  return std::any_of(clauses.begin(), clauses.end(), [&](const MvdClause& c) { return violates(i, c); });
}

/// Intersects i with the first l in `negatives` such that (i, l) is a good
/// candidate, and repeats until no such l exists.
inline Interpretation refine_counterexample(const Interpretation& i, const std::vector<Interpretation>& negatives,
                                            const MvdFormula& h, const InterpMembership& mem,
                                            std::size_t* depth = nullptr) {
  Interpretation j = i;
  std::size_t calls = 0;
  for (;;) {
    auto it = std::find_if(negatives.begin(), negatives.end(),
                           [&](const Interpretation& l) { return good_candidate(j, l, h, mem); });
    if (it == negatives.end()) break;
    j = intersect(j, *it);
    ++calls;
  }
  if (depth) *depth = calls;
  return j;
}

/// Appends to p the intersection of the first pair (k < l) of `negatives`
/// that violates build_clauses(k_example, p) and is positive, until none is left.
inline std::vector<Interpretation> update_positive_examples(const Interpretation& k_example,
                                                            std::vector<Interpretation> p,
                                                            const std::vector<Interpretation>& negatives,
                                                            const InterpMembership& mem,
                                                            std::size_t* depth = nullptr) {
  std::size_t calls = 0;
  for (;;) {
    const auto clauses = build_clauses(k_example, p);
    std::optional<Interpretation> found;
    for (std::size_t a = 0; a < negatives.size() && !found; ++a)
      for (std::size_t b = a + 1; b < negatives.size() && !found; ++b) {
        Interpretation meet = intersect(negatives[a], negatives[b]);
        if (violates_any(meet, clauses) && mem(meet)) found.emplace(meet);
      }
    if (!found) break;
    p.push_back(*found);
    ++calls;
  }
  if (depth) *depth = calls;
  return p;
}

inline MvdFormula rebuild_hypothesis(const MvdFormula& h0, const std::vector<Interpretation>& negatives,
                                     const std::vector<Interpretation>& p) {
  MvdFormula h = h0;
  for (const auto& i : negatives)
    for (const auto& c : build_clauses(i, p)) h.add(c);
  return h;
}

// --- the learning loop ------------------------------------------------------

enum class Event { positive, append, replace };

inline const char* to_string(Event e) {
  switch (e) {
    case Event::positive:
      return "positive";
    case Event::append:
      return "append";
    case Event::replace:
      return "replace";
  }
  return "?";
}

struct LearnerState {
  UniversePtr universe;
  MvdFormula h0;
  std::vector<Interpretation> positives;  // P
  std::vector<Interpretation> negatives;  // L
  MvdFormula hypothesis;                  // H

  explicit LearnerState(UniversePtr u) : universe(u), h0(u), hypothesis(u) {}
};

/// What happened in one loop iteration.
struct IterationRecord {
  std::size_t iteration = 0;  // 1-based
  Event event = Event::positive;
  Interpretation counterexample;
  /// Negative iterations: the refined example placed into L and its position.
  std::optional<Interpretation> refined;
  std::optional<std::size_t> position;
  /// Replace iterations: the element J displaced, and the elements removed after it.
  std::optional<Interpretation> replaced;
  std::vector<Interpretation> removed;
  std::size_t positives_added = 0;
  std::size_t refine_depth = 0;
  std::size_t update_depth = 0;
  QueryStats stats;  // cumulative, at the end of the iteration
};

/// One trace line: `iter=3 event=replace ce=01010 J=01000 pos=0 removed=0 P=1 L=2 H=3 mem=29 eq=4 E=...`.
inline std::string format(const IterationRecord& r) {
  std::string out = "iter=" + std::to_string(r.iteration) + " event=" + to_string(r.event) +
                    " ce=" + to_bitstring(r.counterexample);
  if (r.refined) out += " J=" + to_bitstring(*r.refined);
  if (r.position) out += " pos=" + std::to_string(*r.position);
  if (r.event == Event::replace) out += " removed=" + std::to_string(r.removed.size());
  if (r.positives_added) out += " P+=" + std::to_string(r.positives_added);
  return out;
}

struct LearnerOptions {
  /// Size m of the target, known only to test harnesses. Enables the
  /// potential and the per-iteration bound checks.
  std::optional<std::size_t> target_size;
  /// Check each counterexample with one membership query.
  bool validate_counterexamples = true;
  std::function<void(const IterationRecord&, const LearnerState&)> observer;
};

struct LearnResult {
  MvdFormula hypothesis;
  QueryStats stats;
  LearnerState state;
};

/// Exact learner for mvd formulas from interpretations.
class Learner {
 public:
  Learner(UniversePtr u, InterpMembership mem, InterpEquivalence eq, LearnerOptions options = {})
      : universe_(std::move(u)), mem_(std::move(mem)), eq_(std::move(eq)), options_(std::move(options)),
        state_(universe_) {
    if (!universe_) throw InvalidInput("learner without a universe");
  }

  LearnResult run() {
    const std::size_t n = universe_->size();
    InterpMembership counted = [this](const Interpretation& i) {
      require_same_universe(universe_, i.universe());
      ++stats_.membership;
      return mem_(i);
    };
    InterpMembership memo = [this, &counted](const Interpretation& i) {
      auto [it, fresh] = cache_.try_emplace(i.true_set().bits(), false);
      if (fresh) it->second = counted(i);
      return it->second;
    };

    state_.h0 = construct_h0(universe_, counted);
    state_.hypothesis = state_.h0;
    if (options_.target_size) stats_.potential = static_cast<std::int64_t>(big_n(*options_.target_size));

    std::size_t size_estimate = std::max<std::size_t>(1, class_count(state_.hypothesis));
    for (std::size_t iteration = 1;; ++iteration) {
      ++stats_.equivalence;
      auto ce = eq_(state_.hypothesis);
      if (!ce) break;
      require_same_universe(universe_, ce->universe());
      cache_.clear();

      IterationRecord rec{iteration, Event::positive, *ce, {}, {}, {}, {}, 0, 0, 0, {}};
      const bool positive = !satisfies(*ce, state_.hypothesis);
      if (options_.validate_counterexamples && memo(*ce) != positive)
        throw OracleError("counterexample " + to_bitstring(*ce) +
                          (positive ? " violates the hypothesis but is not a model of the target"
                                    : " satisfies the hypothesis and is a model of the target"));
      if (positive) {
        state_.positives.push_back(*ce);
        ++stats_.positive_iterations;
      } else {
        negative_step(*ce, memo, rec);
      }

      state_.hypothesis = rebuild_hypothesis(state_.h0, state_.negatives, state_.positives);
      stats_.max_negatives = std::max(stats_.max_negatives, state_.negatives.size());
      size_estimate = std::max({size_estimate, class_count(state_.hypothesis), state_.negatives.size()});
      check_bounds_after(rec, n, size_estimate);
      rec.stats = stats_;
      if (options_.observer) options_.observer(rec, state_);
    }
    return {state_.hypothesis, stats_, state_};
  }

  const QueryStats& stats() const { return stats_; }
  const LearnerState& state() const { return state_; }

 private:
  std::size_t big_n(std::size_t m) const { return universe_->size() * universe_->size() * m; }

  void negative_step(const Interpretation& ce, const InterpMembership& mem, IterationRecord& rec) {
    auto& negatives = state_.negatives;
    Interpretation j = refine_counterexample(ce, negatives, state_.hypothesis, mem, &rec.refine_depth);
    stats_.max_refine_depth = std::max(stats_.max_refine_depth, rec.refine_depth);
    if (j.false_set().size() < 2)
      throw OracleError("negative example " + to_bitstring(j) +
                        " has fewer than two false variables; the membership answers are inconsistent");
    rec.refined = j;

    auto hit = std::find_if(negatives.begin(), negatives.end(), [&](const Interpretation& l) {
      return good_candidate(l, j, state_.hypothesis, mem);
    });
    if (hit == negatives.end()) {
      rec.event = Event::append;
      rec.position = negatives.size();
      negatives.push_back(j);
      stats_.replacements.push_back(0);
      ++stats_.append_iterations;
      return;
    }

    rec.event = Event::replace;
    const auto pos = static_cast<std::size_t>(hit - negatives.begin());
    const std::size_t before = state_.positives.size();
    state_.positives = update_positive_examples(j, std::move(state_.positives), negatives, mem, &rec.update_depth);
    rec.positives_added = state_.positives.size() - before;
    stats_.max_update_depth = std::max(stats_.max_update_depth, rec.update_depth);

    rec.replaced = negatives[pos];
    negatives[pos] = j;
    ++stats_.replacements[pos];
    ++stats_.replace_iterations;

    // Every other position whose example breaks J's clause block goes.
    const auto block = build_clauses(j, state_.positives);
    std::vector<Interpretation> kept;
    std::vector<std::size_t> kept_counts;
    std::size_t new_pos = 0;
    for (std::size_t k = 0; k < negatives.size(); ++k) {
      if (k != pos && violates_any(negatives[k], block)) {
        rec.removed.push_back(negatives[k]);
        continue;
      }
      if (k == pos) new_pos = kept.size();
      kept.push_back(negatives[k]);
      kept_counts.push_back(stats_.replacements[k]);
    }
    negatives = std::move(kept);
    stats_.replacements = std::move(kept_counts);
    stats_.removals += rec.removed.size();
    rec.position = new_pos;
  }

  void check_bounds_after(const IterationRecord& rec, std::size_t n, std::size_t size_estimate) {
    for (std::size_t r : stats_.replacements) stats_.max_replacements = std::max(stats_.max_replacements, r);
    if (stats_.max_refine_depth > n || stats_.max_update_depth > n)
      throw BoundViolation("recursion depth exceeded the number of variables");

    if (options_.target_size) {
      const std::size_t m = *options_.target_size;
      std::int64_t e = static_cast<std::int64_t>(state_.negatives.size() + big_n(m));
      for (const auto& l : state_.negatives) e -= static_cast<std::int64_t>(l.false_set().size());
      if (rec.event != Event::positive && stats_.potential && e >= *stats_.potential)
        throw BoundViolation("potential did not decrease in iteration " + std::to_string(rec.iteration));
      if (e < 0) throw BoundViolation("potential became negative in iteration " + std::to_string(rec.iteration));
      stats_.potential = e;
      auto report = check_bounds(stats_, n, m);
      if (!report.negatives_ok) throw BoundViolation("more than n^2 m negative counterexample iterations");
      if (!report.size_ok) throw BoundViolation("negative sequence longer than n m");
      if (!report.replacements_ok) throw BoundViolation("a negative example was replaced more than n times");
    }

    const std::uint64_t big = static_cast<std::uint64_t>(big_n(size_estimate));
    if (stats_.iterations() > big * big + big)
      throw BoundViolation("iteration count exceeded N^2 + N with N = " + std::to_string(big));
  }

  UniversePtr universe_;
  InterpMembership mem_;
  InterpEquivalence eq_;
  LearnerOptions options_;
  LearnerState state_;
  QueryStats stats_;
  std::unordered_map<VarSet::Bits, bool> cache_;
};

inline LearnResult learn(const UniversePtr& u, InterpMembership mem, InterpEquivalence eq, LearnerOptions options = {}) {
  return Learner(u, std::move(mem), std::move(eq), std::move(options)).run();
}

}  // namespace mvdl

#endif  // MVDL_LEARNER_HPP
