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

#include "robustanon/synthetic.h"

#include <string>

#include "gtest/gtest.h"
#include "test_util.h"

namespace robustanon {
namespace {

using ::robustanon::testing::StatusIs;

TEST(SyntheticTest, ShapeMatchesOptions) {
  ASSERT_OK_AND_ASSIGN(RawTable t, GenerateSyntheticTable({.rows = 250, .qi_attributes = 3}));
  EXPECT_EQ(t.size(), 250u);
  EXPECT_EQ(t.qi_attributes(), (std::vector<std::string>{"Q1", "Q2", "Q3"}));
  EXPECT_EQ(t.sensitive_attribute(), "S");
  EXPECT_EQ(t.row(0).row_id, 1);
  EXPECT_EQ(t.row(249).row_id, 250);
  EXPECT_LE(t.sensitive_domain().size(), 10u);
}

TEST(SyntheticTest, SameSeedSameTable) {
  ASSERT_OK_AND_ASSIGN(RawTable a, GenerateSyntheticTable({.seed = 7}));
  ASSERT_OK_AND_ASSIGN(RawTable b, GenerateSyntheticTable({.seed = 7}));
  ASSERT_OK_AND_ASSIGN(RawTable c, GenerateSyntheticTable({.seed = 8}));
  bool differs = false;
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.row(i).qi_values, b.row(i).qi_values);
    EXPECT_EQ(a.row(i).sensitive_value, b.row(i).sensitive_value);
    differs |= a.row(i).sensitive_value != c.row(i).sensitive_value;
  }
  EXPECT_TRUE(differs);
}

TEST(SyntheticTest, TargetsAreRare) {
  ASSERT_OK_AND_ASSIGN(RawTable t, GenerateSyntheticTable({}));
  int rare = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    const std::string& v = t.row(i).sensitive_value;
    rare += v == "s0" || v == "s1";
  }
  EXPECT_GT(rare, 0);
  EXPECT_LT(rare, 100);
}

TEST(SyntheticTest, RejectsBadOptions) {
  EXPECT_THAT(GenerateSyntheticTable({.rows = 0}), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(GenerateSyntheticTable({.qi_attributes = 0}),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

}  // namespace
}  // namespace robustanon
