#ifndef MVDL_CORE_HPP
#define MVDL_CORE_HPP

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mvdl/errors.hpp"
#include "mvdl/varset.hpp"

namespace mvdl {

/// Names that the clause text format reserves for itself.
inline bool is_valid_variable_name(std::string_view name) {
  if (name.empty() || name == "-" || name == "*" || name == "F") return false;
  if (name.find("->") != std::string_view::npos) return false;
  return std::none_of(name.begin(), name.end(), [](char c) {
    return c == '#' || c == '|' || c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

/// The ordered set of propositional variables (or attributes) a learning
/// session works over. Index i of every VarSet refers to names()[i].
class VariableUniverse {
 public:
  explicit VariableUniverse(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw InvalidInput("a variable universe needs at least one variable");
    if (names_.size() > kMaxUniverseSize)
      throw InvalidInput("at most " + std::to_string(kMaxUniverseSize) + " variables are supported");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!is_valid_variable_name(names_[i])) throw InvalidInput("invalid variable name '" + names_[i] + "'");
      if (!index_.emplace(names_[i], i).second) throw InvalidInput("duplicate variable name '" + names_[i] + "'");
    }
  }

  static std::shared_ptr<const VariableUniverse> make(std::vector<std::string> names) {
    return std::make_shared<const VariableUniverse>(std::move(names));
  }

  /// Variables named "1", "2", ..., "n".
  static std::shared_ptr<const VariableUniverse> numbered(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
    return make(std::move(names));
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  VarSet all() const { return VarSet::full(names_.size()); }

  std::optional<std::size_t> index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const VariableUniverse& a, const VariableUniverse& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

using UniversePtr = std::shared_ptr<const VariableUniverse>;

inline bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_universe(const UniversePtr& a, const UniversePtr& b) {
  if (!same_universe(a, b)) throw UniverseMismatch();
}

inline void require_enumerable(const UniversePtr& u, std::size_t cap) {
  if (u->size() > cap) throw CapExceeded(u->size(), cap);
}

/// A truth assignment, represented by the set of variables it makes true.
class Interpretation {
 public:
  Interpretation(UniversePtr universe, VarSet true_set) : universe_(std::move(universe)), true_(true_set) {
    if (!universe_) throw InvalidInput("interpretation without a universe");
    if (!true_.subset_of(universe_->all())) throw InvalidInput("true set leaves the universe");
  }

  static Interpretation all_true(UniversePtr u) {
    VarSet all = u->all();
    return {std::move(u), all};
  }
  static Interpretation all_false(UniversePtr u) { return {std::move(u), VarSet{}}; }

  const UniversePtr& universe() const { return universe_; }
  VarSet true_set() const { return true_; }
  VarSet false_set() const { return universe_->all() - true_; }
  bool is_true(std::size_t v) const { return true_.contains(v); }

  friend bool operator==(const Interpretation& a, const Interpretation& b) {
    return a.true_ == b.true_ && same_universe(a.universe_, b.universe_);
  }

 private:
  UniversePtr universe_;
  VarSet true_;
};

/// Componentwise intersection of the true sets.
inline Interpretation intersect(const Interpretation& a, const Interpretation& b) {
  require_same_universe(a.universe(), b.universe());
  return {a.universe(), a.true_set() & b.true_set()};
}

/// Oriented multivalued dependency clause X -> Y v Z with X, Y, Z a partition
/// of the universe. X -> Y v Z and X -> Z v Y are different values.
class MvdClause {
 public:
  static MvdClause make(UniversePtr u, VarSet x, VarSet y, VarSet z) {
    if (!u) throw InvalidInput("clause without a universe");
    if (x.intersects(y) || x.intersects(z) || y.intersects(z))
      throw InvalidInput("mvd clause sides must be pairwise disjoint");
    if ((x | y | z) != u->all()) throw InvalidInput("mvd clause sides must cover every variable");
    return MvdClause(std::move(u), x, y, z);
  }

  /// V -> F
  static MvdClause bottom(UniversePtr u) {
    VarSet all = u->all();
    return make(std::move(u), all, {}, {});
  }

  /// V \ {v} -> v
  static MvdClause unit(UniversePtr u, std::size_t v) {
    VarSet rest = u->all() - VarSet::single(v);
    return make(std::move(u), rest, VarSet::single(v), {});
  }

  const UniversePtr& universe() const { return universe_; }
  VarSet antecedent() const { return x_; }
  VarSet left() const { return y_; }
  VarSet right() const { return z_; }

  bool is_bottom() const { return y_.empty() && z_.empty(); }
  bool is_proper() const { return !y_.empty() && !z_.empty(); }

  MvdClause swapped() const { return MvdClause(universe_, x_, z_, y_); }

  /// Display orientation: the non-empty side first, or the side holding the
  /// smallest variable index when both are non-empty.
  MvdClause canonical() const {
    if (y_.empty() && !z_.empty()) return swapped();
    if (is_proper() && z_.lowest() < y_.lowest()) return swapped();
    return *this;
  }

  bool same_class(const MvdClause& o) const { return *this == o || *this == o.swapped(); }

  /// Satisfaction on a raw true set (no universe check).
  bool holds_in(VarSet true_set) const { return !violated_by(true_set); }

  bool covered_by(VarSet true_set) const { return x_.subset_of(true_set); }

  bool violated_by(VarSet true_set) const {
    if (!covered_by(true_set)) return false;
    VarSet falses = universe_->all() - true_set;
    if (is_proper()) return y_.intersects(falses) && z_.intersects(falses);
    if (is_bottom()) return falses.empty();
    return falses.size() == 1 && falses.subset_of(y_ | z_);
  }

  friend bool operator==(const MvdClause& a, const MvdClause& b) {
    return a.x_ == b.x_ && a.y_ == b.y_ && a.z_ == b.z_ && same_universe(a.universe_, b.universe_);
  }

 private:
  MvdClause(UniversePtr u, VarSet x, VarSet y, VarSet z) : universe_(std::move(u)), x_(x), y_(y), z_(z) {}

  UniversePtr universe_;
  VarSet x_, y_, z_;
};

/// Propositional Horn clause: antecedent -> head, or V -> F.
class HornClause {
 public:
  static HornClause make(UniversePtr u, VarSet antecedent, std::optional<std::size_t> head) {
    if (!u) throw InvalidInput("clause without a universe");
    if (!antecedent.subset_of(u->all())) throw InvalidInput("antecedent leaves the universe");
    if (head) {
      if (*head >= u->size()) throw InvalidInput("head leaves the universe");
      if (antecedent.contains(*head)) throw InvalidInput("Horn head must not occur in its antecedent");
    } else if (antecedent != u->all()) {
      throw InvalidInput("a Horn clause with consequent F must have every variable in its antecedent");
    }
    return HornClause(std::move(u), antecedent, head);
  }

  static HornClause bottom(UniversePtr u) {
    VarSet all = u->all();
    return make(std::move(u), all, std::nullopt);
  }

  const UniversePtr& universe() const { return universe_; }
  VarSet antecedent() const { return ant_; }
  std::optional<std::size_t> head() const { return head_; }
  bool is_bottom() const { return !head_.has_value(); }

  bool holds_in(VarSet true_set) const {
    if (!ant_.subset_of(true_set)) return true;
    return head_ && true_set.contains(*head_);
  }

  friend bool operator==(const HornClause& a, const HornClause& b) {
    return a.ant_ == b.ant_ && a.head_ == b.head_ && same_universe(a.universe_, b.universe_);
  }

 private:
  HornClause(UniversePtr u, VarSet ant, std::optional<std::size_t> head)
      : universe_(std::move(u)), ant_(ant), head_(head) {}

  UniversePtr universe_;
  VarSet ant_;
  std::optional<std::size_t> head_;
};

/// Clause with at most two unnegated literals: antecedent -> h1 v h2.
/// An empty head set is the constant F.
class QuasiHorn2Clause {
 public:
  static QuasiHorn2Clause make(UniversePtr u, VarSet antecedent, VarSet heads) {
    if (!u) throw InvalidInput("clause without a universe");
    if (!(antecedent | heads).subset_of(u->all())) throw InvalidInput("clause leaves the universe");
    if (heads.size() > 2) throw InvalidInput("a 2-quasi-Horn clause has at most two consequents");
    if (antecedent.intersects(heads)) throw InvalidInput("consequents must not occur in the antecedent");
    return QuasiHorn2Clause(std::move(u), antecedent, heads);
  }

  const UniversePtr& universe() const { return universe_; }
  VarSet antecedent() const { return ant_; }
  VarSet heads() const { return heads_; }

  bool holds_in(VarSet true_set) const { return !ant_.subset_of(true_set) || heads_.intersects(true_set); }

  friend bool operator==(const QuasiHorn2Clause& a, const QuasiHorn2Clause& b) {
    return a.ant_ == b.ant_ && a.heads_ == b.heads_ && same_universe(a.universe_, b.universe_);
  }

 private:
  QuasiHorn2Clause(UniversePtr u, VarSet ant, VarSet heads) : universe_(std::move(u)), ant_(ant), heads_(heads) {}

  UniversePtr universe_;
  VarSet ant_;
  VarSet heads_;
};

/// X -> (AND Y) v (AND Z) read propositionally; the sides need not cover the
/// universe and an empty side is the constant true.
class SplitClause {
 public:
  static SplitClause make(UniversePtr u, VarSet x, VarSet y, VarSet z) {
    if (!u) throw InvalidInput("clause without a universe");
    if (x.intersects(y) || x.intersects(z) || y.intersects(z))
      throw InvalidInput("split clause sides must be pairwise disjoint");
    if (!(x | y | z).subset_of(u->all())) throw InvalidInput("clause leaves the universe");
    return SplitClause(std::move(u), x, y, z);
  }

  const UniversePtr& universe() const { return universe_; }
  VarSet antecedent() const { return x_; }
  VarSet left() const { return y_; }
  VarSet right() const { return z_; }

  bool holds_in(VarSet true_set) const {
    return !x_.subset_of(true_set) || y_.subset_of(true_set) || z_.subset_of(true_set);
  }

 private:
  SplitClause(UniversePtr u, VarSet x, VarSet y, VarSet z) : universe_(std::move(u)), x_(x), y_(y), z_(z) {}

  UniversePtr universe_;
  VarSet x_, y_, z_;
};

/// A conjunction of clauses over one universe. Insertion order is kept and
/// exact duplicates are dropped.
template <class Clause>
class Conjunction {
 public:
  explicit Conjunction(UniversePtr u) : universe_(std::move(u)) {
    if (!universe_) throw InvalidInput("formula without a universe");
  }
  Conjunction(UniversePtr u, const std::vector<Clause>& clauses) : Conjunction(std::move(u)) {
    for (const auto& c : clauses) add(c);
  }

  /// Returns false when the clause was already present.
  bool add(const Clause& c) {
    require_same_universe(universe_, c.universe());
    if (contains(c)) return false;
    clauses_.push_back(c);
    return true;
  }

  void add_all(const Conjunction& other) {
    for (const auto& c : other) add(c);
  }

  bool contains(const Clause& c) const { return std::find(clauses_.begin(), clauses_.end(), c) != clauses_.end(); }

  const UniversePtr& universe() const { return universe_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  auto begin() const { return clauses_.begin(); }
  auto end() const { return clauses_.end(); }

  bool holds_in(VarSet true_set) const {
    return std::all_of(clauses_.begin(), clauses_.end(), [&](const Clause& c) { return c.holds_in(true_set); });
  }

 private:
  UniversePtr universe_;
  std::vector<Clause> clauses_;
};

using MvdFormula = Conjunction<MvdClause>;
using HornFormula = Conjunction<HornClause>;

/// Distinct orientation classes, each represented by its canonical clause,
/// in order of first appearance.
inline std::vector<MvdClause> canonical_clauses(const MvdFormula& f) {
  std::vector<MvdClause> out;
  for (const auto& c : f) {
    MvdClause k = c.canonical();
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  }
  return out;
}

inline std::size_t class_count(const MvdFormula& f) { return canonical_clauses(f).size(); }

/// Equality as sets of orientation classes.
inline bool same_classes(const MvdFormula& a, const MvdFormula& b) {
  if (!same_universe(a.universe(), b.universe())) return false;
  auto ca = canonical_clauses(a);
  auto cb = canonical_clauses(b);
  if (ca.size() != cb.size()) return false;
  return std::all_of(ca.begin(), ca.end(), [&](const MvdClause& c) { return std::find(cb.begin(), cb.end(), c) != cb.end(); });
}

// --- interpretation semantics ----------------------------------------------

inline bool covers(const Interpretation& i, const MvdClause& c) {
  require_same_universe(i.universe(), c.universe());
  return c.covered_by(i.true_set());
}

inline bool violates(const Interpretation& i, const MvdClause& c) {
  require_same_universe(i.universe(), c.universe());
  return c.violated_by(i.true_set());
}

template <class Clause>
bool satisfies(const Interpretation& i, const Clause& c) {
  require_same_universe(i.universe(), c.universe());
  return c.holds_in(i.true_set());
}

// --- brute-force reasoning -------------------------------------------------

/// True sets of every model of `f`, in ascending numeric order.
template <class Formula>
std::vector<VarSet> models(const Formula& f, std::size_t cap = kDefaultEnumerationCap) {
  require_enumerable(f.universe(), cap);
  std::vector<VarSet> out;
  const VarSet::Bits limit = f.universe()->all().bits();
  for (VarSet::Bits b = 0;; ++b) {
    if (f.holds_in(VarSet(b))) out.push_back(VarSet(b));
    if (b == limit) break;
  }
  return out;
}

/// Every model of `f` satisfies `c` (a clause of any kind, or a formula).
template <class Formula, class Consequence>
bool entails(const Formula& f, const Consequence& c, std::size_t cap = kDefaultEnumerationCap) {
  require_same_universe(f.universe(), c.universe());
  require_enumerable(f.universe(), cap);
  const VarSet::Bits limit = f.universe()->all().bits();
  for (VarSet::Bits b = 0;; ++b) {
    VarSet t(b);
    if (f.holds_in(t) && !c.holds_in(t)) return false;
    if (b == limit) break;
  }
  return true;
}

/// The first interpretation (ascending size, then lexicographic) that is a
/// model of exactly one of the two formulas.
template <class A, class B>
std::optional<Interpretation> find_counterexample(const A& a, const B& b, std::size_t cap = kDefaultEnumerationCap) {
  require_same_universe(a.universe(), b.universe());
  require_enumerable(a.universe(), cap);
  auto hit = find_first_subset(a.universe()->size(), [&](VarSet t) { return a.holds_in(t) != b.holds_in(t); });
  if (!hit) return std::nullopt;
  return Interpretation(a.universe(), *hit);
}

template <class A, class B>
bool equivalent(const A& a, const B& b, std::size_t cap = kDefaultEnumerationCap) {
  return !find_counterexample(a, b, cap).has_value();
}

// --- encodings between clause kinds ---------------------------------------

/// X -> v becomes {V\{v} -> v, X -> v v V\(X u {v})}; V -> F is kept.
inline MvdFormula horn_to_mvd(const HornClause& c) {
  const auto& u = c.universe();
  MvdFormula out(u);
  if (c.is_bottom()) {
    out.add(MvdClause::bottom(u));
    return out;
  }
  const std::size_t v = *c.head();
  out.add(MvdClause::unit(u, v));
  VarSet rest = u->all() - c.antecedent() - VarSet::single(v);
  out.add(MvdClause::make(u, c.antecedent(), VarSet::single(v), rest));
  return out;
}

inline MvdFormula horn_to_mvd(const HornFormula& f) {
  MvdFormula out(f.universe());
  for (const auto& c : f) out.add_all(horn_to_mvd(c));
  return out;
}

/// Distributes X -> Y v Z into the 2-quasi-Horn clauses X -> y v z.
inline std::vector<QuasiHorn2Clause> mvd_to_quasi2(const MvdClause& c) {
  const auto& u = c.universe();
  std::vector<QuasiHorn2Clause> out;
  if (c.is_proper()) {
    for (std::size_t y : c.left())
      for (std::size_t z : c.right())
        out.push_back(QuasiHorn2Clause::make(u, c.antecedent(), VarSet::single(y) | VarSet::single(z)));
  } else if (c.is_bottom()) {
    out.push_back(QuasiHorn2Clause::make(u, u->all(), {}));
  } else {
    for (std::size_t v : c.left() | c.right())
      out.push_back(QuasiHorn2Clause::make(u, u->all() - VarSet::single(v), VarSet::single(v)));
  }
  return out;
}

}  // namespace mvdl

#endif  // MVDL_CORE_HPP
