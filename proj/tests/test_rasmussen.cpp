#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace knotscan;
using namespace testing_support;

namespace {

/// The pattern of homology ranks where d_3 of bidegree (1, 8) might act:
/// h^{-1,-7} = h^{0,1} = 1 next to the generator pair of a candidate s.
BigradedRanks ambiguous_pattern() { return BigradedRanks{{{0, -3}, 1}, {{0, -1}, 1}, {{0, 1}, 1}, {{-1, -7}, 1}}; }

}  // namespace

TEST(SResult, Basics) {
  const auto d = SResult::determined(2);
  EXPECT_TRUE(d.is_determined());
  EXPECT_EQ(d.value(), 2);
  EXPECT_EQ(d.to_string(), "2");
  EXPECT_EQ(d.negated(), SResult::determined(-2));
  const auto a = SResult::ambiguous({0, -2});
  EXPECT_FALSE(a.is_determined());
  EXPECT_THROW(a.value(), InvalidArgument);
  EXPECT_EQ(a.to_string(), "-2|0");
  EXPECT_TRUE(a.could_be(0));
  EXPECT_EQ(a.negated(), SResult::ambiguous({0, 2}));
  EXPECT_THROW(SResult::ambiguous({4}), InvalidArgument);
}

TEST(LeeCondition, Examples) {
  EXPECT_TRUE(lee_condition(homology_ranks(positive_trefoil())));
  EXPECT_FALSE(lee_condition(ambiguous_pattern()));
  // Width 4 but no pair of entries in bidegree (1, 8): the condition still holds.
  const BigradedRanks wide{{{0, 1}, 1}, {{0, 3}, 1}, {{2, 5}, 1}, {{3, 9}, 1}, {{5, 7}, 1}, {{6, 13}, 1}};
  EXPECT_EQ(homological_width(wide), 4);
  EXPECT_TRUE(lee_condition(wide));
}

TEST(ExtractS, Trefoil) {
  const auto r = homology_ranks(positive_trefoil());
  EXPECT_EQ(extract_s(r), SResult::determined(2));
  const auto quotient = decomposition_quotient(r, 2);
  ASSERT_TRUE(quotient.has_value());
  EXPECT_EQ(*quotient, LaurentPoly2::monomial(1, {2, 4}));
  EXPECT_EQ(extract_s(homology_ranks(mirror(positive_trefoil()))), SResult::determined(-2));
}

TEST(ExtractS, Unknot) {
  const auto r = homology_ranks(PlanarDiagram::unknot());
  EXPECT_EQ(extract_s(r), SResult::determined(0));
  ASSERT_TRUE(decomposition_quotient(r, 0).has_value());
  EXPECT_TRUE(decomposition_quotient(r, 0)->is_zero());
}

TEST(ExtractS, AmbiguousPattern) {
  const auto r = ambiguous_pattern();
  EXPECT_FALSE(lee_condition(r));
  const auto s = extract_s(r);
  EXPECT_EQ(s, SResult::ambiguous({-2, 0}));
  EXPECT_EQ(extract_s(r.mirrored()), SResult::ambiguous({0, 2}));
}

TEST(ExtractS, ReportsImpossibleRanks) {
  EXPECT_THROW(extract_s(BigradedRanks{{{0, 1}, 1}}), DecompositionError);
  EXPECT_THROW(extract_s(BigradedRanks{{{0, -1}, 1}, {{0, 1}, 1}, {{1, 3}, 1}}), DecompositionError);
  EXPECT_THROW(extract_s(BigradedRanks{}), Error);
}

TEST(ExtractS, EvenAndDetermined) {
  for (const auto& k : rolfsen()) {
    const auto r = homology_ranks(k.diagram);
    ASSERT_LE(homological_width(r), 3) << k.name;
    const auto s = extract_s(r);
    ASSERT_TRUE(s.is_determined()) << k.name;
    EXPECT_EQ(s.value() % 2, 0) << k.name;
  }
}

TEST(ExtractS, EqualsTwiceTau) {
  const auto& ref = rolfsen_reference();
  for (const auto& k : rolfsen()) EXPECT_EQ(rasmussen_s(k.diagram).value(), 2 * ref.at(k.name).tau) << k.name;
}

TEST(ExtractS, MirrorAntisymmetry) {
  for (const auto& k : rolfsen())
    EXPECT_EQ(rasmussen_s(mirror(k.diagram)), rasmussen_s(k.diagram).negated()) << k.name;
}

TEST(ExtractS, EqualsSignatureForAlternatingKnots) {
  const auto& ref = rolfsen_reference();
  int alternating = 0;
  for (const auto& k : rolfsen()) {
    if (!ref.at(k.name).alternating) continue;
    ++alternating;
    EXPECT_EQ(rasmussen_s(k.diagram).value(), signature(k.diagram)) << k.name;
  }
  EXPECT_GT(alternating, 60);
}

TEST(ExtractS, PositiveDiagrams) {
  for (int n : {3, 5, 7, 9}) {
    const auto d = braid_knot(torus_2(n));
    EXPECT_EQ(rasmussen_s(d).value(), n - seifert_circles(d) + 1);
  }
  const auto d = braid_knot("3 | s1 s2 s1 s2 s1 s2 s1 s2");  // T(3,4)
  EXPECT_EQ(rasmussen_s(d).value(), 8 - 3 + 1);
}

TEST(WritheSeifertBound, Examples) {
  EXPECT_EQ(writhe_seifert_lower_bound(positive_trefoil()), 2);
  EXPECT_EQ(writhe_seifert_lower_bound(mirror(positive_trefoil())), -4);
  EXPECT_EQ(writhe_seifert_lower_bound(PlanarDiagram::unknot()), 0);
}

TEST(WritheSeifertBound, HoldsWithRandomKinks) {
  std::mt19937 rng(5);
  for (const auto& k : rolfsen()) {
    auto d = k.diagram;
    const int s = rasmussen_s(d).value();
    EXPECT_LE(writhe_seifert_lower_bound(d), s) << k.name;
    for (int step = 0; step < 3; ++step) {
      const int arc = std::uniform_int_distribution<int>(1, d.arc_count())(rng);
      d = add_kink(d, arc, rng() % 2 ? 1 : -1);
      EXPECT_LE(writhe_seifert_lower_bound(d), s) << k.name;
    }
    if (d.crossing_count() <= 12) {
      EXPECT_EQ(rasmussen_s(d).value(), s) << k.name;
    }
  }
}

TEST(SliceGenusBound, Examples) {
  EXPECT_EQ(slice_genus_lower_bound(2), 1);
  EXPECT_EQ(slice_genus_lower_bound(0), 0);
  EXPECT_EQ(slice_genus_lower_bound(-2), 1);
  EXPECT_THROW(slice_genus_lower_bound(1), InvalidArgument);
}

TEST(SliceBennequinBound, Examples) {
  EXPECT_EQ(slice_bennequin_bound(parse_braid("2 | s1 s1 s1")), boost::rational<int>(1));
  EXPECT_EQ(slice_bennequin_bound(parse_braid(kPretzelBraid)), boost::rational<int>(1));
  EXPECT_EQ(slice_bennequin_bound(parse_braid("3 | s1 S2")), boost::rational<int>(-1));
  EXPECT_THROW(slice_bennequin_bound(parse_braid("2 | s1 s1")), InvalidArgument);
}

TEST(CrossingChange, Examples) {
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(crossing_change_check(positive_trefoil(), i), CrossingChangeResult::Holds);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(crossing_change_check(figure_eight(), i), CrossingChangeResult::Holds);
  EXPECT_STREQ(to_string(CrossingChangeResult::Inconclusive), "inconclusive");
}

TEST(CrossingChange, EveryRolfsenSwitch) {
  for (const auto& k : rolfsen())
    for (std::size_t i = 0; i < k.diagram.crossing_count(); ++i)
      EXPECT_EQ(crossing_change_check(k.diagram, i), CrossingChangeResult::Holds) << k.name << " crossing " << i;
}
