#include <gtest/gtest.h>

#include "instanton/error.hpp"
#include "instanton/gauss_rational.hpp"

using instanton::GaussRational;

TEST(GaussRational, ParsesFractionsDecimalsAndPairs) {
  EXPECT_EQ(GaussRational::parse("3/4"), GaussRational(3) / GaussRational(4));
  EXPECT_EQ(GaussRational::parse("-2"), GaussRational(-2));
  EXPECT_EQ(GaussRational::parse("1.25e-1"), GaussRational(1) / GaussRational(8));
  EXPECT_EQ(GaussRational::parse("(1/2,-3)"), GaussRational(mpq_class(1, 2), mpq_class(-3)));
  EXPECT_THROW(GaussRational::parse("1/"), instanton::ParseError);
  EXPECT_THROW(GaussRational::parse("abc"), instanton::ParseError);
}

TEST(GaussRational, StrRoundTrips) {
  for (const char* s : {"0", "7", "-5/3", "(0,1)", "(-1/2,3/7)"}) {
    GaussRational g = GaussRational::parse(s);
    EXPECT_EQ(GaussRational::parse(g.str()), g) << s;
  }
}

TEST(GaussRational, ComplexArithmetic) {
  GaussRational i(0, 1), one(1);
  EXPECT_EQ((one + i) * (one - i), GaussRational(2));
  EXPECT_EQ(i * i, GaussRational(-1));
  EXPECT_EQ((one + i) / (one - i), i);
  EXPECT_TRUE((i - i).is_zero());
}

TEST(GaussRational, FromComplexIsExact) {
  EXPECT_EQ(GaussRational::from_complex({0.5, -0.25}), GaussRational(mpq_class(1, 2), mpq_class(-1, 4)));
  const double x = 0.1;
  EXPECT_EQ(GaussRational::from_complex({x, 0}).to_complex().real(), x);
  EXPECT_NE(GaussRational::from_complex({x, 0}), GaussRational(1) / GaussRational(10));
}
