#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace twist;
using namespace testing_support;

// is_automorphism

TEST(IsAutomorphism, IdentityMap)
{
  auto g = s3();
  EXPECT_TRUE(is_automorphism(g, Automorphism::identity(g).images()));
}

TEST(IsAutomorphism, InversionOnC3)
{
  auto g = spec("cyclic(3)");
  EXPECT_TRUE(is_automorphism(g, inversion_map(g)));
}

TEST(IsAutomorphism, InversionOnS3IsNot)
{
  auto g = s3();
  EXPECT_FALSE(is_automorphism(g, inversion_map(g)));
  try {
    Automorphism::from_images(g, inversion_map(g));
    FAIL();
  } catch (Error const &e) {
    EXPECT_EQ(e.code(), Errc::not_automorphism);
  }
}

TEST(IsAutomorphism, RejectsNonBijectionsAndWrongLength)
{
  auto g = spec("cyclic(4)");
  EXPECT_FALSE(is_automorphism(g, std::vector<Element>{0, 2, 0, 2}));
  EXPECT_FALSE(is_automorphism(g, std::vector<Element>{0, 1, 2}));
  EXPECT_FALSE(is_automorphism(g, std::vector<Element>{1, 0, 3, 2}));
}

// automorphism_group

TEST(AutomorphismGroup, TrivialGroup)
{
  auto set = automorphism_group(FiniteGroup{});
  EXPECT_EQ(set.size(), 1u);
  EXPECT_TRUE(set.complete());
}

TEST(AutomorphismGroup, CyclicOfOrderThreeMatchesBruteForce)
{
  auto g = spec("cyclic(3)");
  EXPECT_EQ(naive_automorphisms(g).size(), 2u);
  EXPECT_EQ(automorphism_group(g).size(), 2u);
}

TEST(AutomorphismGroup, KleinFourMatchesBruteForce)
{
  auto g = spec("elementary_abelian(2,2)");
  EXPECT_EQ(naive_automorphisms(g).size(), 6u);
  EXPECT_EQ(automorphism_group(g).size(), 6u);
}

TEST(AutomorphismGroup, KnownOrders)
{
  EXPECT_EQ(automorphism_group(s3()).size(), 6u);
  EXPECT_EQ(automorphism_group(spec("dihedral(4)")).size(), 8u);
  EXPECT_EQ(automorphism_group(spec("dicyclic(2)")).size(), 24u);
  EXPECT_EQ(automorphism_group(spec("symmetric(4)")).size(), 24u);
  EXPECT_EQ(automorphism_group(spec("alternating(5)")).size(), 120u);
  EXPECT_EQ(automorphism_group(spec("elementary_abelian(2,3)")).size(), 168u);
  EXPECT_EQ(automorphism_group(spec("elementary_abelian(2,4)")).size(), 20160u);
  EXPECT_EQ(automorphism_group(spec("cyclic(15)")).size(), 8u);
  EXPECT_EQ(automorphism_group(spec("extraspecial(3,exponent_p)")).size(), 432u);
  EXPECT_EQ(automorphism_group(spec("symmetric(5)")).size(), 120u);
}

TEST(AutomorphismGroup, OuterAutomorphismOfS6)
{
  auto g = spec("symmetric(6)");
  // above the default cap only inner automorphisms are produced
  auto inner = automorphism_group(g);
  EXPECT_EQ(inner.coverage, Coverage::partial_cap);
  EXPECT_EQ(inner.size(), 720u);
  AutSearchOptions o;
  o.order_cap = 720;
  auto full = automorphism_group(g, o);
  EXPECT_TRUE(full.complete());
  EXPECT_EQ(full.size(), 1440u);
}

TEST(AutomorphismGroup, MembersMatchBruteForceOnSmallGroups)
{
  for (auto s : {"cyclic(6)", "dihedral(3)", "elementary_abelian(2,2)", "cyclic(7)"}) {
    auto g = spec(s);
    auto brute = naive_automorphisms(g);
    std::set<std::vector<Element>> want(brute.begin(), brute.end()), got;
    for (auto const &a : automorphism_group(g).members)
      got.emplace(a.images().begin(), a.images().end());
    EXPECT_EQ(got, want) << s;
  }
}

TEST(AutomorphismGroup, CapFallsBackToPartialFamily)
{
  AutSearchOptions o;
  o.order_cap = 10;
  auto set = automorphism_group(spec("cyclic(12)"), o);
  EXPECT_EQ(set.coverage, Coverage::partial_cap);
  // identity and inversion; conjugations are trivial in an abelian group
  EXPECT_EQ(set.size(), 2u);
}

TEST(AutomorphismGroup, BudgetMarksPartial)
{
  AutSearchOptions o;
  o.max_results = 100;
  auto set = automorphism_group(spec("elementary_abelian(2,4)"), o);
  EXPECT_EQ(set.coverage, Coverage::partial_budget);
  EXPECT_GE(set.size(), 100u);
  for (auto const &a : set.members)
    EXPECT_TRUE(is_automorphism(a.parent(), a.images()));
}

// automorphisms_of_order_dividing

TEST(OrderDividing, NOneIsIdentityOnly)
{
  auto set = automorphisms_of_order_dividing(spec("dihedral(4)"), 1);
  ASSERT_EQ(set.size(), 1u);
  EXPECT_TRUE(set.members[0].is_identity());
}

TEST(OrderDividing, C3WithNTwo)
{
  auto g = spec("cyclic(3)");
  auto set = automorphisms_of_order_dividing(g, 2);
  ASSERT_EQ(set.size(), 2u);
  std::set<std::vector<Element>> got;
  for (auto const &a : set.members)
    got.emplace(a.images().begin(), a.images().end());
  EXPECT_TRUE(got.count(inversion_map(g)));
  EXPECT_TRUE(got.count(std::vector<Element>{0, 1, 2}));
}

TEST(OrderDividing, C5WithNThreeIsIdentityOnly)
{
  EXPECT_EQ(automorphisms_of_order_dividing(spec("cyclic(5)"), 3).size(), 1u);
}

TEST(OrderDividing, MatchesFilteredFullGroup)
{
  for (auto s : {"dicyclic(2)", "symmetric(4)", "elementary_abelian(2,3)", "abelian(2,4)",
                 "extraspecial(3,exponent_p)"}) {
    auto g = spec(s);
    auto all = automorphism_group(g);
    for (unsigned n = 1; n <= 8; ++n) {
      std::size_t want = 0;
      for (auto const &a : all.members)
        want += n % a.order() == 0;
      EXPECT_EQ(automorphisms_of_order_dividing(g, n).size(), want) << s << " n=" << n;
    }
  }
}

TEST(OrderDividing, RejectsZero)
{
  EXPECT_THROW(automorphisms_of_order_dividing(s3(), 0), Error);
}

// conjugation_automorphism

TEST(Conjugation, CentralElementGivesIdentity)
{
  auto g = spec("dihedral(4)");
  for (auto z : center(g).members())
    EXPECT_TRUE(conjugation_automorphism(g, z).is_identity());
}

TEST(Conjugation, ThreeCycleInS3HasOrderThree)
{
  auto g = s3();
  auto c = conjugation_automorphism(g, by_label(g, "(0 1 2)"));
  EXPECT_EQ(c.order(), 3u);
  for (Element x = 0; x < 6; ++x)
    EXPECT_EQ(c(x), g.mul(g.mul(by_label(g, "(0 1 2)"), x), g.inv(by_label(g, "(0 1 2)"))));
}

TEST(Conjugation, AbelianGivesIdentity)
{
  auto g = spec("abelian(2,6)");
  for (Element x = 0; x < g.order(); ++x)
    EXPECT_TRUE(conjugation_automorphism(g, x).is_identity());
}

// induced_quotient_automorphism

TEST(InducedQuotient, IdentityInducesIdentity)
{
  auto g = spec("dihedral(4)");
  auto z = center(g);
  auto bar = induced_quotient_automorphism(g, z, Automorphism::identity(g));
  EXPECT_TRUE(bar.is_identity());
}

TEST(InducedQuotient, ConjugationInducesConjugationOnS3ModA3)
{
  auto g = s3();
  Element gens[] = {by_label(g, "(0 1 2)")};
  auto a3 = subgroup_generated(g, gens);
  auto q = quotient_group(g, a3);
  for (Element c = 0; c < 6; ++c) {
    auto bar = induced_quotient_automorphism(q, a3, conjugation_automorphism(g, c));
    auto want = conjugation_automorphism(q.group, q.projection[c]);
    EXPECT_EQ(bar, want);
  }
}

TEST(InducedQuotient, SwapDoesNotStabilizeFirstFactor)
{
  auto c3 = spec("cyclic(3)");
  auto g = direct_product(c3, c3);
  auto swap = Automorphism::from_images(g, swap_map(3));
  ElementSet first(9);
  for (Element i = 0; i < 3; ++i)
    first.insert(i * 3);
  Subgroup n(g, first);
  try {
    induced_quotient_automorphism(g, n, swap);
    FAIL();
  } catch (Error const &e) {
    EXPECT_EQ(e.code(), Errc::not_invariant);
  }
}

TEST(InducedQuotient, RejectsNonNormal)
{
  auto g = s3();
  Element gens[] = {by_label(g, "(0 1)")};
  try {
    induced_quotient_automorphism(g, subgroup_generated(g, gens), Automorphism::identity(g));
    FAIL();
  } catch (Error const &e) {
    EXPECT_EQ(e.code(), Errc::not_normal);
  }
}

TEST(AutomorphismOps, ComposeInvertPower)
{
  auto g = spec("dicyclic(2)");
  auto all = automorphism_group(g);
  for (auto const &a : all.members) {
    EXPECT_TRUE(a.after(a.inverse()).is_identity());
    EXPECT_TRUE(a.power(a.order()).is_identity());
    for (unsigned k = 1; k < a.order(); ++k)
      EXPECT_FALSE(a.power(k).is_identity());
  }
}
