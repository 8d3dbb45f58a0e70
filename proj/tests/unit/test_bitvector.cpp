#include <gtest/gtest.h>

#include "smdp/bitvector.hpp"
#include "smdp/errors.hpp"
#include "smdp/limits.hpp"
#include "smdp/rational.hpp"

#include <cstdlib>

using namespace smdp;

TEST(BitVector, StringRoundTrip) {
  const auto v = BitVector::from_string("10110");
  EXPECT_EQ(v.size(), 5u);
  EXPECT_TRUE(v[0]);
  EXPECT_FALSE(v[1]);
  EXPECT_EQ(v.to_string(), "10110");
  EXPECT_EQ(v.count(), 3u);
  EXPECT_THROW(BitVector::from_string("10x"), Error);
}

TEST(BitVector, UintFieldsAreMsbFirst) {
  const auto v = BitVector::from_uint(6, 4);
  EXPECT_EQ(v.to_string(), "0110");
  EXPECT_EQ(v.to_uint(), 6u);
  EXPECT_EQ(v.to_uint(1, 2), 3u);
  auto w = BitVector(8);
  w.set_uint(2, 3, 5);
  EXPECT_EQ(w.to_string(), "00101000");
}

TEST(BitVector, WideVectorsCrossWordBoundaries) {
  BitVector v(130);
  v.set(63, true);
  v.set(64, true);
  v.set(129, true);
  EXPECT_EQ(v.count(), 3u);
  EXPECT_EQ(v.slice(62, 4).to_string(), "0110");
  BitVector a = BitVector::from_string("1");
  a.append(v);
  EXPECT_EQ(a.size(), 131u);
  EXPECT_TRUE(a[64]);
}

TEST(BitVector, OrderingAndHash) {
  const auto a = BitVector::from_string("0011");
  const auto b = BitVector::from_string("0101");
  EXPECT_LT(a, b);
  EXPECT_EQ(a.hash(), BitVector::from_uint(3, 4).hash());
}

TEST(BitVector, Widths) {
  EXPECT_EQ(index_width(1), 1u);
  EXPECT_EQ(index_width(2), 1u);
  EXPECT_EQ(index_width(3), 2u);
  EXPECT_EQ(index_width(5), 3u);
  EXPECT_EQ(value_width(0), 1u);
  EXPECT_EQ(value_width(4), 3u);
}

TEST(Rational, PrintsReducedFractions) {
  EXPECT_EQ(to_string(make_rational(6, 8)), "3/4");
  EXPECT_EQ(to_string(make_rational(4, 2)), "2");
  EXPECT_EQ(to_string(make_rational(-1, 3)), "-1/3");
  EXPECT_EQ(parse_rational("-6/4"), make_rational(-3, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_DOUBLE_EQ(to_double(make_rational(1, 4)), 0.25);
}

TEST(Limits, EnvironmentOverridesStateLimit) {
  ::setenv("SMDP_LIMIT_STATES", "123", 1);
  EXPECT_EQ(Limits::from_environment().max_states, 123u);
  ::unsetenv("SMDP_LIMIT_STATES");
  EXPECT_EQ(Limits::from_environment().max_states, Limits{}.max_states);
}
