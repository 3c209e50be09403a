#include <gtest/gtest.h>

#include "liniso/errors.hpp"
#include "liniso/rational.hpp"

using namespace liniso;

TEST(Rational, ParsesFractionsAndIntegers) {
  EXPECT_EQ(parse_rational("1/3"), Rational(1, 3));
  EXPECT_EQ(parse_rational("2/6"), Rational(1, 3));
  EXPECT_EQ(parse_rational("-3/4"), Rational(-3, 4));
  EXPECT_EQ(parse_rational("5"), Rational(5));
  EXPECT_EQ(parse_rational("+5/10"), Rational(1, 2));
  EXPECT_EQ(to_string(parse_rational("4/8")), "1/2");
  EXPECT_EQ(to_string(Rational(2)), "2");
}

TEST(Rational, RejectsDecimalsAndGarbage) {
  for (const char* bad : {"0.25", "1/0", "", "/3", "1/", "a/b", "1/-3", "1//3", " 1/3"})
    EXPECT_THROW(parse_rational(bad), ContractViolation) << bad;
}

TEST(Rational, Ceiling) {
  EXPECT_EQ(ceil(Rational(4, 3)), 2);
  EXPECT_EQ(ceil(Rational(2)), 2);
  EXPECT_EQ(ceil(Rational(-4, 3)), -1);
  EXPECT_EQ(snapped_ceil(2.0000000001), 2);
  EXPECT_EQ(snapped_ceil(1.9999999), 2);
  EXPECT_EQ(snapped_ceil(2.01), 3);
}

TEST(Rational, Dyadic) {
  EXPECT_EQ(dyadic(3, 4), Rational(3, 16));
  EXPECT_EQ(dyadic(8, 4), Rational(1, 2));
  EXPECT_DOUBLE_EQ(to_double(dyadic(1, 2)), 0.25);
}
