#include <gtest/gtest.h>

#include "support.hpp"

using namespace mvdl;
using namespace mvdl::test;

TEST(ParseFormula, SingleSidedClause) {
  auto f = parse_mvd_formula("vars: 1 2 3 4 5\n2 3 4 5 -> 1 | -\n");
  ASSERT_EQ(f.size(), 1u);
  const auto& c = f.clauses()[0];
  auto u = f.universe();
  EXPECT_EQ(c.antecedent(), u->all() - VarSet::single(0));
  EXPECT_EQ(c.left(), VarSet::single(0));
  EXPECT_TRUE(c.right().empty());
}

TEST(ParseFormula, BottomAndStar) {
  auto f = parse_mvd_formula("vars: a b c\n* -> F\n* -> a | b\n");
  auto u = f.universe();
  EXPECT_EQ(f.clauses()[0], MvdClause::bottom(u));
  EXPECT_EQ(f.clauses()[1], MvdClause::make(u, VarSet::single(2), VarSet::single(0), VarSet::single(1)));
}

TEST(ParseFormula, RemarkClause) {
  auto f = parse_mvd_formula("vars: 1 2 3 4 5 6\n1 -> 2 3 | 4 5 6   # comment\n\n");
  auto u = f.universe();
  VarSet y, z;
  y.insert(1);
  y.insert(2);
  for (std::size_t v : {3u, 4u, 5u}) z.insert(v);
  EXPECT_EQ(f.clauses()[0], MvdClause::make(u, VarSet::single(0), y, z));
}

TEST(ParseFormula, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) {
    try {
      parse_mvd_formula(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("vars: 1 2 3\n1 -> 2 | 3\n1 -> 2 | 9\n"), 3u);
  EXPECT_EQ(line_of("vars: 1 2 3\n\n1 -> 2 | 2\n"), 3u);      // repeated variable
  EXPECT_EQ(line_of("vars: 1 2 3 4\n1 -> 2 | 3\n"), 2u);        // does not cover V
  EXPECT_EQ(line_of("vars: 1 2 3\n1 2 | 3\n"), 2u);             // no arrow
  EXPECT_EQ(line_of("vars: 1 2 3\n1 -> F\n"), 2u);              // F needs V
  EXPECT_EQ(line_of("1 -> 2 | 3\n"), 1u);                       // missing header
  EXPECT_EQ(line_of(""), 1u);
}

TEST(ParseFormula, RoundTripsThroughFormatter) {
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    auto u = VariableUniverse::numbered(uniform(rng, 2, 7));
    auto f = random_mvdf(rng, u, uniform(rng, 0, 5));
    auto g = parse_mvd_formula(format(f));
    EXPECT_TRUE(same_classes(f, g));
    EXPECT_EQ(format(g), format(f));
  }
}

TEST(ParseHorn, Clauses) {
  auto h = parse_horn_formula("vars: 1 2 3 4 5 6\n1 3 5 -> 4\n* -> F\n- -> 2\n");
  auto u = h.universe();
  ASSERT_EQ(h.size(), 3u);
  EXPECT_EQ(*h.clauses()[0].head(), 3u);
  EXPECT_TRUE(h.clauses()[1].is_bottom());
  EXPECT_TRUE(h.clauses()[2].antecedent().empty());
  EXPECT_THROW(parse_horn_clause("1 -> 2 3", u), ParseError);
  EXPECT_THROW(parse_horn_clause("1 2 -> F", u), ParseError);
  EXPECT_EQ(parse_horn_formula(format(h)).clauses(), h.clauses());
}

TEST(ParseQuasi2, Clauses) {
  auto u = VariableUniverse::numbered(5);
  auto q = parse_quasi2_clause("1 2 3 -> 4 5", u);
  EXPECT_EQ(q.heads().size(), 2u);
  EXPECT_TRUE(parse_quasi2_clause("1 -> F", u).heads().empty());
  EXPECT_THROW(parse_quasi2_clause("1 -> 2 3 4", u), InvalidInput);
  EXPECT_EQ(parse_quasi2_clause(format(q), u), q);
}

TEST(Bitstrings, RoundTrip) {
  auto u = VariableUniverse::numbered(5);
  auto i = parse_bitstring("11100", u);
  EXPECT_EQ(i.true_set().size(), 3u);
  EXPECT_TRUE(i.is_true(0) && i.is_true(2) && !i.is_true(3));
  EXPECT_EQ(to_bitstring(i), "11100");
  EXPECT_THROW(parse_bitstring("1110", u), ParseError);
  EXPECT_THROW(parse_bitstring("11102", u), ParseError);
}

TEST(Format, CanonicalOrientationOnly) {
  auto u = VariableUniverse::numbered(5);
  MvdFormula f(u);
  f.add(MvdClause::make(u, VarSet::single(1), VarSet::single(2), u->all() - VarSet::single(1) - VarSet::single(2)));
  f.add(f.clauses()[0].swapped());
  EXPECT_EQ(format(f), "vars: 1 2 3 4 5\n2 -> 1 4 5 | 3\n");
}
