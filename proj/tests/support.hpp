#ifndef MVDL_TESTS_SUPPORT_HPP
#define MVDL_TESTS_SUPPORT_HPP

// Test-side reference semantics and random instance generators. The
// reference checkers work on plain bool vectors and index lists so that they
// share no code with the library's bit-set implementation.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mvdl/mvdl.hpp"

namespace mvdl::test {

using Rng = std::mt19937_64;
using Assignment = std::vector<bool>;  // true/false per variable index

inline Assignment to_assignment(VarSet t, std::size_t n) {
  Assignment a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = (t.bits() >> i) & 1U;
  return a;
}

inline std::vector<std::size_t> members(VarSet s, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if ((s.bits() >> i) & 1U) out.push_back(i);
  return out;
}

/// Direct reading of the mvd violation cases over an explicit assignment.
inline bool ref_violates(const Assignment& a, const MvdClause& c) {
  const std::size_t n = a.size();
  for (std::size_t x : members(c.antecedent(), n))
    if (!a[x]) return false;
  auto ys = members(c.left(), n);
  auto zs = members(c.right(), n);
  std::size_t false_count = 0;
  for (bool b : a) false_count += b ? 0 : 1;
  if (ys.empty() && zs.empty()) return false_count == 0;
  if (ys.empty() || zs.empty()) {
    const auto& side = ys.empty() ? zs : ys;
    if (false_count != 1) return false;
    for (std::size_t v : side)
      if (!a[v]) return true;
    return false;
  }
  bool y_false = false, z_false = false;
  for (std::size_t y : ys) y_false = y_false || !a[y];
  for (std::size_t z : zs) z_false = z_false || !a[z];
  return y_false && z_false;
}

inline bool ref_holds(const Assignment& a, const HornClause& c) {
  for (std::size_t x : members(c.antecedent(), a.size()))
    if (!a[x]) return true;
  return c.head() && a[*c.head()];
}

inline bool ref_holds(const Assignment& a, const QuasiHorn2Clause& c) {
  for (std::size_t x : members(c.antecedent(), a.size()))
    if (!a[x]) return true;
  for (std::size_t h : members(c.heads(), a.size()))
    if (a[h]) return true;
  return false;
}

inline bool ref_holds(const Assignment& a, const MvdClause& c) { return !ref_violates(a, c); }

template <class Clause>
bool ref_model(const Assignment& a, const Conjunction<Clause>& f) {
  for (const auto& c : f)
    if (!ref_holds(a, c)) return false;
  return true;
}

/// Visits all 2^n assignments as VarSets.
template <class F>
void for_all_sets(std::size_t n, F&& f) {
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) f(VarSet(b));
}

template <class Formula, class Clause>
bool ref_entails(const Formula& f, const Clause& c) {
  const std::size_t n = f.universe()->size();
  bool ok = true;
  for_all_sets(n, [&](VarSet t) {
    auto a = to_assignment(t, n);
    if (ok && ref_model(a, f) && !ref_holds(a, c)) ok = false;
  });
  return ok;
}

template <class A, class B>
bool ref_equivalent(const A& f, const B& g) {
  const std::size_t n = f.universe()->size();
  bool ok = true;
  for_all_sets(n, [&](VarSet t) {
    auto a = to_assignment(t, n);
    if (ok && ref_model(a, f) != ref_model(a, g)) ok = false;
  });
  return ok;
}

// --- generators ------------------------------------------------------------------

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline VarSet random_subset(Rng& rng, VarSet from, double p = 0.5) {
  std::bernoulli_distribution coin(p);
  VarSet out;
  for (std::size_t v : from)
    if (coin(rng)) out.insert(v);
  return out;
}

inline Interpretation random_interp(Rng& rng, const UniversePtr& u) { return {u, random_subset(rng, u->all())}; }

/// X, Y, Z with Y and Z non-empty.
inline MvdClause random_proper_clause(Rng& rng, const UniversePtr& u) {
  const std::size_t n = u->size();
  for (;;) {
    VarSet x, y, z;
    std::size_t x_weight = uniform(rng, 0, 3);  // out of 6: mostly small antecedents
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t r = uniform(rng, 0, 5);
      if (r < x_weight)
        x.insert(v);
      else if ((r - x_weight) % 2 == 0)
        y.insert(v);
      else
        z.insert(v);
    }
    if (!y.empty() && !z.empty()) return MvdClause::make(u, x, y, z);
  }
}

/// Mostly proper clauses, sometimes V\{v} -> v, X -> Y v - with |Y| >= 2, or V -> F.
inline MvdClause random_clause(Rng& rng, const UniversePtr& u) {
  const std::size_t n = u->size();
  std::size_t kind = uniform(rng, 0, 19);
  if (n < 2) kind = kind % 3;  // no proper clause fits a single variable
  if (kind == 0) return MvdClause::unit(u, uniform(rng, 0, n - 1));
  if (kind == 1) {
    VarSet y = random_subset(rng, u->all(), 0.4);
    if (y.size() < 2) return MvdClause::unit(u, uniform(rng, 0, n - 1));
    return MvdClause::make(u, u->all() - y, y, {});
  }
  if (kind == 2 && (n < 2 || uniform(rng, 0, 3) == 0)) return MvdClause::bottom(u);
  return random_proper_clause(rng, u);
}

inline MvdFormula random_mvdf(Rng& rng, const UniversePtr& u, std::size_t clauses, bool proper_only = false) {
  MvdFormula f(u);
  for (std::size_t tries = 0; f.size() < clauses && tries < 100 * clauses; ++tries)
    f.add(proper_only ? random_proper_clause(rng, u) : random_clause(rng, u));
  return f;
}

/// Definite Horn clauses with antecedents of size 0..3.
inline HornFormula random_horn(Rng& rng, const UniversePtr& u, std::size_t clauses) {
  const std::size_t n = u->size();
  HornFormula f(u);
  for (std::size_t tries = 0; f.size() < clauses && tries < 100 * clauses; ++tries) {
    std::size_t head = uniform(rng, 0, n - 1);
    VarSet ant;
    std::size_t k = uniform(rng, 0, std::min<std::size_t>(3, n - 1));
    while (ant.size() < k) {
      std::size_t v = uniform(rng, 0, n - 1);
      if (v != head) ant.insert(v);
    }
    f.add(HornClause::make(u, ant, head));
  }
  return f;
}

}  // namespace mvdl::test

#endif  // MVDL_TESTS_SUPPORT_HPP
