#include <gtest/gtest.h>

#include "quizreward/error.hpp"
#include "quizreward/money.hpp"

namespace quizreward {
namespace {

TEST(Money, ParsesDecimalStrings) {
  EXPECT_EQ(parse_money("100").micros(), 100'000'000);
  EXPECT_EQ(parse_money("3.05").micros(), 3'050'000);
  EXPECT_EQ(parse_money("0.000001").micros(), 1);
  EXPECT_EQ(parse_money("0.75").micros(), 750'000);
}

TEST(Money, RejectsMalformedText) {
  for (const char* text : {"", "-1", "1.", ".5", "1.0000001", "1e3", " 1", "abc", "1.2.3"}) {
    EXPECT_THROW(parse_money(text), QuizError) << text;
  }
}

TEST(Money, FormatsSixDecimals) {
  EXPECT_EQ(Money::from_micros(3'050'000).to_decimal(), "3.050000");
  EXPECT_EQ(Money{}.to_decimal(), "0.000000");
  EXPECT_EQ(SignedMoney{-500'000}.to_decimal(), "-0.500000");
  EXPECT_EQ(SignedMoney{93'288'450}.to_decimal(), "93.288450");
}

TEST(Money, ArithmeticIsExactAndNeverNegative) {
  const Money a = parse_money("100.25");
  const Money b = parse_money("3.05");
  EXPECT_EQ((a - b).micros(), 97'200'000);
  EXPECT_EQ((a + b).micros(), 103'300'000);
  EXPECT_EQ((b * 3).micros(), 9'150'000);
  EXPECT_THROW(b - a, QuizError);
  EXPECT_THROW(Money::from_micros(-1), QuizError);
}

TEST(Money, FloorMicrosSnapsFloatingPointNoise) {
  // 1e8 * (1 - 0.9695) is 3049999.999999997 in binary floating point.
  EXPECT_EQ(floor_micros(1e8L * (1.0L - 0.9695)), 3'050'000);
  EXPECT_EQ(floor_micros(1000048.637L), 1'000'048);
  EXPECT_EQ(floor_micros(999999.9L), 999'999);
  EXPECT_EQ(floor_micros(0.0L), 0);
}

}  // namespace
}  // namespace quizreward
