#include <gtest/gtest.h>

#include "support.hpp"

using namespace twist;
using namespace testing_support;

TEST(LowerCentralSeries, AbelianIsClassOne)
{
  auto lcs = lower_central_series(spec("abelian(2,6)"));
  ASSERT_TRUE(lcs.nilpotency_class);
  EXPECT_EQ(*lcs.nilpotency_class, 1u);
}

TEST(LowerCentralSeries, TrivialGroupIsClassZero)
{
  auto lcs = lower_central_series(FiniteGroup{});
  ASSERT_TRUE(lcs.nilpotency_class);
  EXPECT_EQ(*lcs.nilpotency_class, 0u);
}

TEST(LowerCentralSeries, DihedralOfOrderEightIsClassTwo)
{
  auto g = perm_group({"(0 1 2 3)", "(1 3)"}, 4);
  auto lcs = lower_central_series(g);
  ASSERT_TRUE(lcs.nilpotency_class);
  EXPECT_EQ(*lcs.nilpotency_class, 2u);
  ASSERT_EQ(lcs.terms.size(), 3u);
  auto r = by_label(g, "(0 1 2 3)");
  EXPECT_EQ(lcs.terms[1].size(), 2u);
  EXPECT_TRUE(lcs.terms[1].contains(g.mul(r, r)));
  EXPECT_TRUE(lcs.terms[2].is_trivial());
}

TEST(LowerCentralSeries, S3IsNotNilpotent)
{
  auto lcs = lower_central_series(s3());
  EXPECT_FALSE(lcs.nilpotency_class);
  EXPECT_EQ(lcs.terms.back().size(), 3u);
}

TEST(LowerCentralSeries, LargerClasses)
{
  EXPECT_EQ(*lower_central_series(spec("dihedral(8)")).nilpotency_class, 3u);
  EXPECT_EQ(*lower_central_series(spec("dihedral(16)")).nilpotency_class, 4u);
  EXPECT_EQ(*lower_central_series(spec("extraspecial(3,exponent_p)")).nilpotency_class, 2u);
}

TEST(Solvable, Examples)
{
  EXPECT_TRUE(is_solvable(spec("abelian(3,3)")));
  EXPECT_TRUE(is_solvable(s3()));
  auto s3_series = derived_series(s3());
  ASSERT_EQ(s3_series.size(), 3u);
  EXPECT_EQ(s3_series[1].size(), 3u);
  auto a5 = spec("alternating(5)");
  EXPECT_EQ(a5.order(), 60u);
  EXPECT_FALSE(is_solvable(a5));
  EXPECT_EQ(derived_subgroup(a5).size(), 60u);
  EXPECT_TRUE(is_solvable(spec("symmetric(4)")));
}

TEST(TwoEngel, Examples)
{
  EXPECT_TRUE(is_two_engel(spec("abelian(4,4)")));
  EXPECT_TRUE(is_two_engel(spec("dicyclic(2)")));
  auto g = s3();
  EXPECT_FALSE(is_two_engel(g));
  // [y, x, x] with x = (0 1), y = (0 1 2); note [x, y, y] = 1 since [x, y] and y lie in A3
  auto x = by_label(g, "(0 1)"), y = by_label(g, "(0 1 2)");
  EXPECT_NE(commutator(g, {y, x, x}), g.identity());
  EXPECT_EQ(commutator(g, {x, y, y}), g.identity());
  auto w = two_engel_violation(g);
  ASSERT_TRUE(w);
  EXPECT_NE(commutator(g, {w->first, w->second, w->second}), g.identity());
}

TEST(CommutatorIdentities, SwapIdentityHoldsInHeisenbergGroup)
{
  auto g = spec("extraspecial(3,exponent_p)");
  EXPECT_FALSE(commutator_swap_violation(g));
  EXPECT_FALSE(weight_three_centrality_violation(g));
}

TEST(CommutatorIdentities, SwapIdentityFailsInS3)
{
  auto g = s3();
  auto v = commutator_swap_violation(g);
  ASSERT_TRUE(v);
  auto [a, b, c] = *v;
  EXPECT_NE(commutator(g, {a, b, c}), g.inv(commutator(g, {a, c, b})));
}

TEST(CommutatorIdentities, WeightThreeCentralityTracksClass)
{
  // class 3: weight-3 commutators are central; class 4: not all of them
  EXPECT_FALSE(weight_three_centrality_violation(spec("dihedral(8)")));
  EXPECT_TRUE(weight_three_centrality_violation(spec("dihedral(16)")));
}

TEST(Center, Examples)
{
  EXPECT_EQ(center(s3()).size(), 1u);
  EXPECT_EQ(center(spec("dihedral(4)")).size(), 2u);
  EXPECT_EQ(center(spec("extraspecial(3,exponent_p)")).size(), 3u);
  EXPECT_EQ(center(spec("abelian(2,4)")).size(), 8u);
}

TEST(NormalSubgroups, KnownCounts)
{
  EXPECT_EQ(normal_subgroups(s3()).size(), 3u);
  EXPECT_EQ(normal_subgroups(spec("dihedral(4)")).size(), 6u);
  EXPECT_EQ(normal_subgroups(spec("dicyclic(2)")).size(), 6u);
  EXPECT_EQ(normal_subgroups(spec("symmetric(4)")).size(), 4u);
  EXPECT_EQ(normal_subgroups(spec("alternating(5)")).size(), 2u);
  // every subgroup of an abelian group: C2 x C2 has 5
  EXPECT_EQ(normal_subgroups(spec("elementary_abelian(2,2)")).size(), 5u);
  EXPECT_EQ(normal_subgroups(spec("cyclic(12)")).size(), 6u);
}

TEST(NormalSubgroups, AllAreNormalAndDistinct)
{
  auto g = spec("product(symmetric(3),cyclic(4))");
  auto ns = normal_subgroups(g);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    Subgroup checked(g, ns[i].mask());
    EXPECT_TRUE(is_normal(g, checked));
    for (std::size_t j = i + 1; j < ns.size(); ++j)
      EXPECT_FALSE(ns[i].mask() == ns[j].mask());
  }
}
