#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"

using namespace mvdl;
using namespace mvdl::test;

namespace {

UniversePtr v5() { return VariableUniverse::numbered(5); }

// Variables are named 1..n, so a digit string like "123" names a set.
VarSet vs(const UniversePtr& u, const std::string& digits) {
  VarSet s;
  for (char ch : digits) s.insert(*u->index_of(std::string(1, ch)));
  return s;
}

Interpretation interp(const UniversePtr& u, const std::string& true_digits) { return {u, vs(u, true_digits)}; }

MvdClause clause(const UniversePtr& u, const std::string& x, const std::string& y, const std::string& z) {
  return MvdClause::make(u, vs(u, x), vs(u, y), vs(u, z));
}

MvdFormula example_target(const UniversePtr& u) {
  return MvdFormula(u, {clause(u, "2345", "1", ""), clause(u, "123", "4", "5"), clause(u, "235", "1", "4"),
                        clause(u, "2", "3", "145")});
}

}  // namespace

TEST(Universe, RejectsBadNames) {
  EXPECT_THROW(VariableUniverse::make({}), InvalidInput);
  EXPECT_THROW(VariableUniverse::make({"a", "a"}), InvalidInput);
  EXPECT_THROW(VariableUniverse::make({"a", "F"}), InvalidInput);
  EXPECT_THROW(VariableUniverse::make({"a b"}), InvalidInput);
  EXPECT_THROW(VariableUniverse::make({"x->y"}), InvalidInput);
  auto u = VariableUniverse::make({"NAME", "BOOK", "PET"});
  EXPECT_EQ(u->size(), 3u);
  EXPECT_EQ(*u->index_of("PET"), 2u);
  EXPECT_FALSE(u->index_of("CAR").has_value());
}

TEST(Universe, MismatchIsRejected) {
  auto u = v5();
  auto w = VariableUniverse::numbered(4);
  EXPECT_THROW(intersect(interp(u, "1"), Interpretation(w, VarSet())), UniverseMismatch);
  EXPECT_THROW(violates(interp(u, "1"), MvdClause::bottom(w)), UniverseMismatch);
  // Structurally equal universes are interchangeable.
  EXPECT_NO_THROW(violates(interp(u, "1"), MvdClause::bottom(VariableUniverse::numbered(5))));
}

TEST(MvdClauseType, Invariants) {
  auto u = v5();
  EXPECT_THROW(clause(u, "12", "23", "45"), InvalidInput);
  EXPECT_THROW(clause(u, "12", "3", "4"), InvalidInput);
  EXPECT_NE(clause(u, "123", "4", "5"), clause(u, "123", "5", "4"));
  EXPECT_TRUE(clause(u, "123", "4", "5").same_class(clause(u, "123", "5", "4")));
  EXPECT_EQ(clause(u, "2", "145", "3").canonical(), clause(u, "2", "145", "3"));
  EXPECT_EQ(clause(u, "2", "3", "145").canonical(), clause(u, "2", "145", "3"));
  EXPECT_EQ(clause(u, "2345", "", "1").canonical(), clause(u, "2345", "1", ""));
}

TEST(Covers, Examples) {
  auto u = v5();
  EXPECT_TRUE(covers(interp(u, "123"), clause(u, "123", "4", "5")));
  for_all_sets(5, [&](VarSet t) { EXPECT_TRUE(covers(Interpretation(u, t), clause(u, "", "12", "345"))); });
  EXPECT_FALSE(covers(interp(u, ""), clause(u, "1", "23", "45")));
}

TEST(Violates, Examples) {
  auto u = v5();
  EXPECT_TRUE(violates(interp(u, "123"), clause(u, "123", "4", "5")));
  EXPECT_TRUE(violates(interp(u, "12345"), MvdClause::bottom(u)));
  EXPECT_TRUE(violates(interp(u, "1235"), clause(u, "1235", "4", "")));
  EXPECT_FALSE(violates(interp(u, "1234"), clause(u, "1235", "4", "")));
  // Case (b) needs exactly one false variable.
  auto wide = clause(u, "123", "45", "");
  EXPECT_TRUE(violates(interp(u, "1234"), wide));
  EXPECT_FALSE(violates(interp(u, "123"), wide));
}

TEST(Satisfies, Examples) {
  auto u = v5();
  EXPECT_TRUE(satisfies(interp(u, "13"), MvdFormula(u)));
  EXPECT_FALSE(satisfies(interp(u, "123"), example_target(u)));
  EXPECT_TRUE(satisfies(interp(u, "12345"), example_target(u)));
}

TEST(Intersect, Examples) {
  auto u = v5();
  EXPECT_EQ(intersect(interp(u, "123"), interp(u, "235")), interp(u, "23"));
  EXPECT_EQ(intersect(interp(u, "124"), interp(u, "124")), interp(u, "124"));
  EXPECT_EQ(intersect(interp(u, "124"), Interpretation::all_false(u)), Interpretation::all_false(u));
}

TEST(Intersect, AlgebraicProperties) {
  Rng rng(11);
  auto u = VariableUniverse::numbered(7);
  for (int i = 0; i < 500; ++i) {
    auto a = random_interp(rng, u), b = random_interp(rng, u), c = random_interp(rng, u);
    EXPECT_EQ(intersect(a, b), intersect(b, a));
    EXPECT_EQ(intersect(intersect(a, b), c), intersect(a, intersect(b, c)));
    EXPECT_EQ(intersect(a, a), a);
    EXPECT_TRUE(intersect(a, b).true_set().subset_of(a.true_set()));
  }
}

TEST(Entails, Examples) {
  auto u = v5();
  auto t = example_target(u);
  EXPECT_TRUE(entails(t, clause(u, "2345", "1", "")));
  EXPECT_FALSE(entails(t, MvdClause::bottom(u)));
  EXPECT_FALSE(entails(MvdFormula(u), clause(u, "1", "2", "345")));
}

TEST(Entails, CapIsEnforced) {
  auto u = VariableUniverse::numbered(6);
  EXPECT_THROW(entails(MvdFormula(u), MvdClause::bottom(u), 5), CapExceeded);
  EXPECT_NO_THROW(entails(MvdFormula(u), MvdClause::bottom(u), 6));
}

TEST(FindCounterexample, Examples) {
  auto u = v5();
  auto t = example_target(u);
  EXPECT_FALSE(find_counterexample(t, t).has_value());
  MvdFormula h0(u, {clause(u, "2345", "1", "")});
  auto ce = find_counterexample(t, h0);
  ASSERT_TRUE(ce.has_value());
  EXPECT_NE(satisfies(*ce, t), satisfies(*ce, h0));
  EXPECT_NE(satisfies(interp(u, "123"), t), satisfies(interp(u, "123"), h0));
  MvdFormula bottom(u, {MvdClause::bottom(u)});
  EXPECT_EQ(find_counterexample(MvdFormula(u), bottom), Interpretation::all_true(u));
}

TEST(FindCounterexample, IsOrderMinimal) {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    auto u = VariableUniverse::numbered(uniform(rng, 2, 6));
    auto a = random_mvdf(rng, u, uniform(rng, 1, 3));
    auto b = random_mvdf(rng, u, uniform(rng, 1, 3));
    auto ce = find_counterexample(a, b);
    std::optional<VarSet> expected;
    // Reference order: popcount, then the sorted index list lexicographically.
    std::vector<VarSet> all;
    for_all_sets(u->size(), [&](VarSet t) { all.push_back(t); });
    std::sort(all.begin(), all.end(), [&](VarSet x, VarSet y) {
      if (x.size() != y.size()) return x.size() < y.size();
      return members(x, 64) < members(y, 64);
    });
    for (VarSet t : all) {
      auto asg = to_assignment(t, u->size());
      if (ref_model(asg, a) != ref_model(asg, b)) {
        expected = t;
        break;
      }
    }
    ASSERT_EQ(ce.has_value(), expected.has_value());
    if (ce) EXPECT_EQ(ce->true_set(), *expected);
  }
}

TEST(Semantics, ViolationImpliesCover) {
  Rng rng(1);
  for (int i = 0; i < 2000; ++i) {
    auto u = VariableUniverse::numbered(uniform(rng, 1, 6));
    auto c = random_clause(rng, u);
    auto in = random_interp(rng, u);
    if (violates(in, c)) EXPECT_TRUE(covers(in, c));
  }
}

TEST(Semantics, AgreesWithReferenceChecker) {
  Rng rng(2);
  for (int i = 0; i < 300; ++i) {
    auto u = VariableUniverse::numbered(uniform(rng, 1, 6));
    auto c = random_clause(rng, u);
    for_all_sets(u->size(), [&](VarSet t) {
      EXPECT_EQ(violates(Interpretation(u, t), c), ref_violates(to_assignment(t, u->size()), c));
    });
  }
}

TEST(Semantics, ProperClausesMatchSplitReading) {
  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    auto u = VariableUniverse::numbered(uniform(rng, 2, 6));
    auto c = random_proper_clause(rng, u);
    auto s = SplitClause::make(u, c.antecedent(), c.left(), c.right());
    for_all_sets(u->size(), [&](VarSet t) { EXPECT_EQ(c.holds_in(t), s.holds_in(t)); });
  }
}

TEST(Semantics, DegenerateClausesDifferFromSplitReading) {
  auto u = VariableUniverse::numbered(4);
  // With an empty side the split reading is a tautology, the mvd reading is not.
  auto unit = MvdClause::unit(u, 2);
  auto split = SplitClause::make(u, unit.antecedent(), unit.left(), unit.right());
  auto bottom = MvdClause::bottom(u);
  auto split_bottom = SplitClause::make(u, u->all(), {}, {});
  for_all_sets(4, [&](VarSet t) {
    EXPECT_TRUE(split.holds_in(t));
    EXPECT_TRUE(split_bottom.holds_in(t));
    EXPECT_EQ(unit.holds_in(t), t != (u->all() - VarSet::single(2)));
    EXPECT_EQ(bottom.holds_in(t), t != u->all());
  });
}

TEST(Entails, AgreesWithReferenceChecker) {
  Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    auto u = VariableUniverse::numbered(uniform(rng, 2, 6));
    auto f = random_mvdf(rng, u, uniform(rng, 0, 4));
    auto c = random_clause(rng, u);
    EXPECT_EQ(entails(f, c), ref_entails(f, c));
    auto h = random_horn(rng, u, 1).clauses().front();
    EXPECT_EQ(entails(f, h), ref_entails(f, h));
    auto q = mvd_to_quasi2(random_proper_clause(rng, u)).front();
    EXPECT_EQ(entails(f, q), ref_entails(f, q));
  }
}

TEST(FindCounterexample, AbsentIffMutualEntailment) {
  Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    auto u = VariableUniverse::numbered(uniform(rng, 2, 5));
    auto a = random_mvdf(rng, u, uniform(rng, 1, 3));
    auto b = a;
    if (uniform(rng, 0, 1)) b.add(random_clause(rng, u));
    bool both = std::all_of(a.begin(), a.end(), [&](const MvdClause& c) { return entails(b, c); }) &&
                std::all_of(b.begin(), b.end(), [&](const MvdClause& c) { return entails(a, c); });
    EXPECT_EQ(!find_counterexample(a, b).has_value(), both);
  }
}

TEST(HornToMvd, Examples) {
  auto u = VariableUniverse::numbered(6);
  auto c = HornClause::make(u, vs(u, "135"), 3);
  auto m = horn_to_mvd(c);
  EXPECT_EQ(m.size(), 2u);
  EXPECT_TRUE(m.contains(clause(u, "12356", "4", "")));
  EXPECT_TRUE(m.contains(clause(u, "135", "4", "26")));

  auto unit = HornClause::make(u, u->all() - VarSet::single(2), 2);
  EXPECT_EQ(horn_to_mvd(unit).size(), 1u);
  EXPECT_TRUE(horn_to_mvd(HornClause::bottom(u)).contains(MvdClause::bottom(u)));
  EXPECT_THROW(HornClause::make(u, vs(u, "12"), std::nullopt), InvalidInput);
  EXPECT_THROW(HornClause::make(u, vs(u, "12"), 1), InvalidInput);
}

TEST(HornToMvd, PreservesModels) {
  Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    auto u = VariableUniverse::numbered(uniform(rng, 1, 6));
    auto h = random_horn(rng, u, 1);
    EXPECT_TRUE(ref_equivalent(h, horn_to_mvd(h)));
  }
}

TEST(MvdToQuasi2, Examples) {
  auto u = VariableUniverse::numbered(6);
  auto out = mvd_to_quasi2(clause(u, "1", "23", "456"));
  ASSERT_EQ(out.size(), 6u);
  for (auto [a, b] : std::vector<std::pair<char, char>>{{'2', '4'}, {'2', '5'}, {'2', '6'}, {'3', '4'}, {'3', '5'}, {'3', '6'}}) {
    auto q = QuasiHorn2Clause::make(u, vs(u, "1"), vs(u, std::string{a, b}));
    EXPECT_NE(std::find(out.begin(), out.end(), q), out.end());
  }
  auto b = mvd_to_quasi2(MvdClause::bottom(u));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0], QuasiHorn2Clause::make(u, u->all(), {}));
  auto unit = mvd_to_quasi2(MvdClause::unit(u, 4));
  ASSERT_EQ(unit.size(), 1u);
  EXPECT_EQ(unit[0], QuasiHorn2Clause::make(u, u->all() - VarSet::single(4), VarSet::single(4)));
}

TEST(MvdToQuasi2, PreservesModels) {
  Rng rng(8);
  for (int i = 0; i < 300; ++i) {
    auto u = VariableUniverse::numbered(uniform(rng, 2, 6));
    auto c = random_clause(rng, u);
    auto qs = mvd_to_quasi2(c);
    for_all_sets(u->size(), [&](VarSet t) {
      bool all = std::all_of(qs.begin(), qs.end(), [&](const QuasiHorn2Clause& q) { return q.holds_in(t); });
      EXPECT_EQ(all, c.holds_in(t));
    });
  }
}
