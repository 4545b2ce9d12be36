#include <gtest/gtest.h>

#include <twist/density.hpp>

using twist::Density;

TEST(Density, ReducesToLowestTerms)
{
  auto d = Density::of(6, 8);
  EXPECT_EQ(d.numerator(), 3);
  EXPECT_EQ(d.denominator(), 4);
  EXPECT_EQ(d.str(), "3/4");
}

TEST(Density, OneIsPrintedAsOneOverOne)
{
  EXPECT_EQ(Density::of(5, 5).str(), "1/1");
  EXPECT_TRUE(Density::of(5, 5).is_one());
}

TEST(Density, ExactComparisons)
{
  EXPECT_LT(Density(7, 8), Density(15, 16));
  EXPECT_LT(Density(15, 16), Density(1, 1));
  EXPECT_EQ(Density(2, 4), Density(1, 2));
  EXPECT_GT(Density(3, 4), Density(2, 3));
  // close neighbours near 1 stay distinct
  EXPECT_LT(Density(999999, 1000000), Density(1000000, 1000001));
}

TEST(Density, ArithmeticAndNegativeValues)
{
  auto eps = Density(1, 1) - Density(7, 8);
  EXPECT_EQ(eps, Density(1, 8));
  auto bound = Density(1, 1) - Density(10, 1) * eps;
  EXPECT_EQ(bound.str(), "-1/4");
  EXPECT_EQ(Density(1, 3) + Density(1, 6), Density(1, 2));
}

TEST(Density, ParseRoundTrip)
{
  EXPECT_EQ(Density::parse("3/4"), Density(3, 4));
  EXPECT_EQ(Density::parse("6/8").str(), "3/4");
  EXPECT_EQ(Density::parse("1"), Density(1, 1));
  EXPECT_THROW(Density::parse("x/2"), twist::Error);
  EXPECT_THROW(Density(1, 0), twist::Error);
}
