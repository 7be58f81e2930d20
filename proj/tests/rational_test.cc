//
// Copyright 2026 The RobustAnon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "robustanon/rational.h"

#include <cstdio>
#include <random>
#include <string>

#include "gtest/gtest.h"
#include "test_util.h"

namespace robustanon {
namespace {

using ::robustanon::testing::Q;
using ::robustanon::testing::StatusIs;

TEST(RationalTest, FractionsAreInLowestTerms) {
  EXPECT_EQ(FormatFraction(MakeRational(16, 33)), "16/33");
  EXPECT_EQ(FormatFraction(MakeRational(24, 33)), "8/11");
  EXPECT_EQ(FormatFraction(MakeRational(4, 2)), "2");
  EXPECT_EQ(FormatFraction(MakeRational(3, -6)), "-1/2");
  EXPECT_EQ(FormatFraction(Rational(0)), "0");
}

TEST(RationalTest, DecimalRoundsHalfToEvenOnTheExactValue) {
  EXPECT_EQ(FormatDecimal(Q("1/8"), 2), "0.12");
  EXPECT_EQ(FormatDecimal(Q("3/8"), 2), "0.38");
  EXPECT_EQ(FormatDecimal(Q("16/33")), "0.484848");
  EXPECT_EQ(FormatDecimal(Q("2/3")), "0.666667");
  EXPECT_EQ(FormatDecimal(Q("1/2")), "0.5");
  EXPECT_EQ(FormatDecimal(Q("1")), "1");
  EXPECT_EQ(FormatDecimal(Q("0")), "0");
  EXPECT_EQ(FormatDecimal(Q("-5/4")), "-1.25");
  EXPECT_EQ(FormatDecimal(Q("9999995/10000000")), "1");  // tie, 0.999999|5 -> even
  EXPECT_EQ(FormatDecimal(Q("1234567")), "1.23457e+06");
  EXPECT_EQ(FormatDecimal(Q("1/100000")), "1e-05");
  EXPECT_EQ(FormatDecimal(Q("1/10000")), "0.0001");
}

// Dyadic rationals are exact doubles, so glibc's correctly rounded %g is an
// independent oracle.
TEST(RationalTest, DecimalMatchesPrintfOnExactDoubles) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20000; ++i) {
    int64_t num = static_cast<int64_t>(rng() % 2000001) - 1000000;
    int shift = static_cast<int>(rng() % 40);
    int digits = 1 + static_cast<int>(rng() % 8);
    Rational q(BigInt(static_cast<long>(num)),
               BigInt(1) << static_cast<mp_bitcnt_t>(shift));
    q.canonicalize();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, q.get_d());
    std::string expected = buf;
    if (expected == "-0") expected = "0";
    ASSERT_EQ(FormatDecimal(q, digits), expected) << FormatFraction(q);
  }
}

TEST(RationalTest, ParsesIntegersFractionsAndDecimalsExactly) {
  EXPECT_EQ(*ParseRational("3"), 3);
  EXPECT_EQ(*ParseRational("-2"), -2);
  EXPECT_EQ(*ParseRational("5/2"), MakeRational(5, 2));
  EXPECT_EQ(*ParseRational(" 10/4 "), MakeRational(5, 2));
  EXPECT_EQ(*ParseRational("0.25"), MakeRational(1, 4));
  EXPECT_EQ(*ParseRational("0.16"), MakeRational(4, 25));
  EXPECT_EQ(*ParseRational("007"), 7);
  EXPECT_EQ(*ParseRational("1e-3"), MakeRational(1, 1000));
  EXPECT_EQ(*ParseRational("2.5E2"), 250);
  EXPECT_EQ(*ParseRational(".5"), MakeRational(1, 2));
  EXPECT_THAT(ParseRational(""), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ParseRational("1/0"), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ParseRational("abc"), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ParseRational("1.2.3"), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ParseRational("1e"), StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(RationalTest, Ceil) {
  EXPECT_EQ(Ceil(MakeRational(41, 18)), 3);
  EXPECT_EQ(Ceil(MakeRational(4, 2)), 2);
  EXPECT_EQ(Ceil(MakeRational(-3, 2)), -1);
}

}  // namespace
}  // namespace robustanon
