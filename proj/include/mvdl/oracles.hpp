#ifndef MVDL_ORACLES_HPP
#define MVDL_ORACLES_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mvdl/core.hpp"
#include "mvdl/relations.hpp"
#include "mvdl/text.hpp"

namespace mvdl {

/// Answers "is e in the target concept?".
template <class Example>
using Membership = std::function<bool(const Example&)>;

/// Answers an equivalence query: nullopt for "yes", else a counterexample.
/// Hypotheses are always mvd formulas; every framework here shares that
/// representation class.
template <class Example>
using Equivalence = std::function<std::optional<Example>(const MvdFormula&)>;

/// Counters for one learning session.
struct QueryStats {
  std::uint64_t membership = 0;
  std::uint64_t equivalence = 0;
  std::uint64_t positive_iterations = 0;
  std::uint64_t append_iterations = 0;
  std::uint64_t replace_iterations = 0;
  std::uint64_t removals = 0;
  std::size_t max_negatives = 0;
  /// Replacement count of each current position of the negative sequence.
  std::vector<std::size_t> replacements;
  std::size_t max_replacements = 0;
  std::size_t max_refine_depth = 0;
  std::size_t max_update_depth = 0;
  /// |L| + (N - sum |false(I)|), tracked when the target size is known.
  std::optional<std::int64_t> potential;

  std::uint64_t negative_iterations() const { return append_iterations + replace_iterations; }
  std::uint64_t iterations() const { return positive_iterations + negative_iterations(); }
};

struct BoundReport {
  bool negatives_ok = true;     // negative iterations <= n^2 m
  bool size_ok = true;          // max |L| <= n m
  bool replacements_ok = true;  // every position replaced <= n times
  bool ok() const { return negatives_ok && size_ok && replacements_ok; }
};

inline BoundReport check_bounds(const QueryStats& s, std::size_t n, std::size_t m) {
  BoundReport r;
  r.negatives_ok = s.negative_iterations() <= n * n * m;
  r.size_ok = s.max_negatives <= n * m;
  r.replacements_ok = s.max_replacements <= n;
  return r;
}

inline std::string format(const QueryStats& s) {
  std::string out = "membership=" + std::to_string(s.membership) + " equivalence=" + std::to_string(s.equivalence) +
                    " iterations=" + std::to_string(s.iterations()) + " positive=" +
                    std::to_string(s.positive_iterations) + " append=" + std::to_string(s.append_iterations) +
                    " replace=" + std::to_string(s.replace_iterations) + " removed=" + std::to_string(s.removals) +
                    " max_L=" + std::to_string(s.max_negatives) + " max_replacements=" +
                    std::to_string(s.max_replacements);
  return out;
}

// --- frameworks ------------------------------------------------------------
//
// A framework policy fixes the example kind and its membership semantics.
// `Knowledge` is whatever the policy precomputes from a concept to answer
// membership quickly; `enumerate` walks the (finite part of the) example
// space in a fixed order until the visitor returns true.

/// Models of a formula, as a lookup table plus a sorted list.
struct ModelSet {
  UniversePtr universe;
  std::vector<bool> table;
  std::vector<VarSet> list;

  template <class Formula>
  static ModelSet of(const Formula& f, std::size_t cap) {
    ModelSet m{f.universe(), {}, models(f, cap)};
    m.table.assign(std::size_t{1} << f.universe()->size(), false);
    for (VarSet t : m.list) m.table[t.bits()] = true;
    return m;
  }

  bool contains(VarSet t) const { return table[t.bits()]; }

  template <class Clause>
  bool entails(const Clause& c) const {
    for (VarSet t : list)
      if (!c.holds_in(t)) return false;
    return true;
  }
};

/// Examples are interpretations; a concept contains its models.
struct InterpretationFramework {
  using Example = Interpretation;
  using Knowledge = ModelSet;

  template <class Formula>
  static Knowledge know(const Formula& f, std::size_t cap) {
    return ModelSet::of(f, cap);
  }
  static bool member(const Knowledge& k, const Example& e) {
    require_same_universe(k.universe, e.universe());
    return k.contains(e.true_set());
  }
  template <class Visit>
  static void enumerate(const UniversePtr& u, Visit&& visit) {
    find_first_subset(u->size(), [&](VarSet t) { return visit(Interpretation(u, t)); });
  }
  static std::string describe(const Example& e) { return to_bitstring(e); }
};

/// Examples are Horn clauses; a concept contains the clauses it entails.
struct HornEntailmentFramework {
  using Example = HornClause;
  using Knowledge = ModelSet;

  template <class Formula>
  static Knowledge know(const Formula& f, std::size_t cap) {
    return ModelSet::of(f, cap);
  }
  static bool member(const Knowledge& k, const Example& e) {
    require_same_universe(k.universe, e.universe());
    return k.entails(e);
  }
  template <class Visit>
  static void enumerate(const UniversePtr& u, Visit&& visit) {
    find_first_subset(u->size(), [&](VarSet x) {
      if (x == u->all()) return visit(HornClause::bottom(u));
      for (std::size_t v : u->all() - x)
        if (visit(HornClause::make(u, x, v))) return true;
      return false;
    });
  }
  static std::string describe(const Example& e) { return format(e); }
};

/// Examples are 2-quasi-Horn clauses; a concept contains the clauses it entails.
struct Quasi2Framework {
  using Example = QuasiHorn2Clause;
  using Knowledge = ModelSet;

  template <class Formula>
  static Knowledge know(const Formula& f, std::size_t cap) {
    return ModelSet::of(f, cap);
  }
  static bool member(const Knowledge& k, const Example& e) {
    require_same_universe(k.universe, e.universe());
    return k.entails(e);
  }
  template <class Visit>
  static void enumerate(const UniversePtr& u, Visit&& visit) {
    find_first_subset(u->size(), [&](VarSet x) {
      VarSet rest = u->all() - x;
      if (visit(QuasiHorn2Clause::make(u, x, {}))) return true;
      for (std::size_t v : rest)
        if (visit(QuasiHorn2Clause::make(u, x, VarSet::single(v)))) return true;
      for (std::size_t v : rest)
        for (std::size_t w : rest)
          if (v < w && visit(QuasiHorn2Clause::make(u, x, VarSet::single(v) | VarSet::single(w)))) return true;
      return false;
    });
  }
  static std::string describe(const Example& e) { return format(e); }
};

/// Examples are relations; a concept contains the relations it holds in.
/// The enumerated part of the example space is the two-tuple relations
/// produced from each interpretation; random sampling also tries larger ones.
struct RelationFramework {
  using Example = Relation;
  using Knowledge = MvdFormula;

  static Knowledge know(const MvdFormula& f, std::size_t) { return f; }
  static bool member(const Knowledge& k, const Example& e) { return mvd_holds(e, k); }
  template <class Visit>
  static void enumerate(const UniversePtr& u, Visit&& visit) {
    find_first_subset(u->size(), [&](VarSet t) { return visit(interp_to_pair(Interpretation(u, t), u)); });
  }
  template <class Rng, class IsCounterexample>
  static std::optional<Example> sample(const UniversePtr& u, Rng& rng, IsCounterexample&& is_ce) {
    std::uniform_int_distribution<std::size_t> rows(2, 6);
    std::uniform_int_distribution<int> value(0, 2);
    for (int attempt = 0; attempt < 256; ++attempt) {
      Relation r(u);
      std::size_t k = rows(rng);
      for (std::size_t i = 0; i < k; ++i) {
        Tuple t;
        for (std::size_t a = 0; a < u->size(); ++a) t.push_back(std::to_string(value(rng)));
        r.insert(std::move(t));
      }
      if (is_ce(r)) return r;
    }
    return std::nullopt;
  }
  static std::string describe(const Example& e) { return write_csv(e); }
};

enum class Strategy { exhaustive, random, scripted };

template <class Example>
struct ScriptEntry {
  Example example;
  std::size_t line = 0;
};

/// A simulated teacher answering membership and equivalence queries for a
/// fixed target under one framework.
template <class Framework>
class Teacher {
 public:
  using Example = typename Framework::Example;
  using Knowledge = typename Framework::Knowledge;

  template <class Target>
  Teacher(const Target& target, Strategy strategy, std::uint64_t seed = 0,
          std::vector<ScriptEntry<Example>> script = {}, std::size_t cap = kDefaultEnumerationCap)
      : universe_(target.universe()),
        target_(Framework::know(target, cap)),
        strategy_(strategy),
        rng_(seed),
        script_(std::move(script)),
        cap_(cap) {
    require_enumerable(universe_, cap_);
  }

  const UniversePtr& universe() const { return universe_; }

  bool membership(const Example& e) {
    ++membership_queries_;
    return Framework::member(target_, e);
  }

  std::optional<Example> equivalence(const MvdFormula& h) {
    ++equivalence_queries_;
    require_same_universe(universe_, h.universe());
    Knowledge hk = Framework::know(h, cap_);
    auto is_ce = [&](const Example& e) { return Framework::member(target_, e) != Framework::member(hk, e); };

    if (strategy_ == Strategy::scripted) {
      if (!first_counterexample(is_ce)) return std::nullopt;
      if (cursor_ >= script_.size())
        throw OracleError("script exhausted after " + std::to_string(script_.size()) +
                          " counterexamples while the hypothesis is not equivalent to the target");
      const auto& entry = script_[cursor_++];
      if (!is_ce(entry.example))
        throw OracleError("script entry " + std::to_string(cursor_) + (entry.line ? " (line " + std::to_string(entry.line) + ")" : std::string()) +
                          " is not a counterexample: " + Framework::describe(entry.example));
      return entry.example;
    }
    if (strategy_ == Strategy::exhaustive) return first_counterexample(is_ce);

    if constexpr (requires { Framework::sample(universe_, rng_, is_ce); }) {
      if (auto s = Framework::sample(universe_, rng_, is_ce)) return s;
    }
    std::vector<Example> all;
    Framework::enumerate(universe_, [&](const Example& e) {
      if (is_ce(e)) all.push_back(e);
      return false;
    });
    if (all.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    return all[pick(rng_)];
  }

  Membership<Example> membership_oracle() {
    return [this](const Example& e) { return membership(e); };
  }
  Equivalence<Example> equivalence_oracle() {
    return [this](const MvdFormula& h) { return equivalence(h); };
  }

  std::uint64_t membership_queries() const { return membership_queries_; }
  std::uint64_t equivalence_queries() const { return equivalence_queries_; }
  std::size_t script_position() const { return cursor_; }

 private:
  template <class IsCe>
  std::optional<Example> first_counterexample(IsCe& is_ce) const {
    std::optional<Example> found;
    Framework::enumerate(universe_, [&](const Example& e) {
      if (!is_ce(e)) return false;
      found.emplace(e);
      return true;
    });
    return found;
  }

  UniversePtr universe_;
  Knowledge target_;
  Strategy strategy_;
  std::mt19937_64 rng_;
  std::vector<ScriptEntry<Example>> script_;
  std::size_t cursor_ = 0;
  std::size_t cap_;
  std::uint64_t membership_queries_ = 0;
  std::uint64_t equivalence_queries_ = 0;
};

using InterpretationTeacher = Teacher<InterpretationFramework>;
using HornEntailmentTeacher = Teacher<HornEntailmentFramework>;
using Quasi2Teacher = Teacher<Quasi2Framework>;
using RelationTeacher = Teacher<RelationFramework>;

}  // namespace mvdl

#endif  // MVDL_ORACLES_HPP
