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

#include "robustanon/robustness.h"

#include <cmath>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "random_instances.h"
#include "robustanon/anonymized.h"
#include "robustanon/possible_worlds.h"
#include "test_util.h"

namespace robustanon {
namespace {

using ::robustanon::testing::InstanceOptions;
using ::robustanon::testing::MakeRandomInstance;
using ::robustanon::testing::MakeTable;
using ::robustanon::testing::Q;
using ::robustanon::testing::RandomInstance;
using ::robustanon::testing::StatusIs;
using ::testing::ElementsAre;

std::shared_ptr<const QIDistribution> Knowledge(
    const RawTable& t, std::vector<std::string> domain,
    std::vector<std::pair<std::string, std::vector<const char*>>> rows) {
  std::vector<QIDistribution::Entry> entries;
  for (auto& [sig, probs] : rows) {
    QIDistribution::Entry e{{sig}, 1, {}};
    for (const char* p : probs) e.probabilities.push_back(Q(p));
    entries.push_back(std::move(e));
  }
  return std::make_shared<const QIDistribution>(*QIDistribution::Create(
      *AttributeSet::Create(t.qi_attributes(), {"C"}), std::move(domain),
      std::move(entries)));
}

TEST(ProfileGroupTest, DeviationFromTheLargestF) {
  RawTable t = MakeTable({"C"}, {{"American"}, {"Japanese"}}, {"Heart", "Flu"});
  auto k = *BoundDistribution::Bind(
      t, Knowledge(t, {"Flu", "Heart"},
                   {{"American", {"0.9", "0.1"}}, {"Japanese", {"0.997", "0.003"}}}));
  AGroup g = *MakeGroup(t, 1, {1, 2});
  ASSERT_OK_AND_ASSIGN(GroupProfile p, ProfileGroup(t, g, k, "Heart"));
  EXPECT_EQ(p.n, 2);
  EXPECT_EQ(p.f_max, Q("0.1"));
  EXPECT_EQ(p.delta, Q("0.097"));
  EXPECT_THAT(p.deltas, ElementsAre(Q("0"), Q("0.097")));
  EXPECT_EQ(p.attribute_set.ToString(), "C");
  EXPECT_THAT(ProfileGroup(t, g, k, "Cancer"),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(ProfileGroupTest, ThreeMembersWithinTheBound) {
  RawTable t = MakeTable({"C"}, {{"a"}, {"b"}, {"c"}}, {"x", "y", "y"});
  auto k = *BoundDistribution::Bind(
      t, Knowledge(t, {"x", "y"},
                   {{"a", {"0.1", "0.9"}}, {"b", {"0.08", "0.92"}}, {"c", {"0.09", "0.91"}}}));
  AGroup g = *MakeGroup(t, 1, {1, 2, 3});
  ASSERT_OK_AND_ASSIGN(GroupProfile p, ProfileGroup(t, g, k, "x"));
  EXPECT_EQ(p.delta, Q("0.02"));
  EXPECT_TRUE(BoundHolds(3, 1, 2, Q("0.1"), Q("0.02")));
  ASSERT_OK_AND_ASSIGN(bool holds, BoundCondition(t, g, k, 2, "x"));
  EXPECT_TRUE(holds);
  EXPECT_LT(ToDouble(p.delta), ToDouble(*DeltaMax(3, 2, Q("0.1"))));
}

TEST(ProfileGroupTest, HomogeneousGroupHasNoDeviation) {
  RawTable t = MakeTable({"C"}, {{"a"}, {"a"}, {"a"}}, {"x", "y", "y"});
  ASSERT_OK_AND_ASSIGN(auto k, DeriveKnowledge(t, {*AttributeSet::Create(
                                                      t.qi_attributes(), {"C"})}));
  ASSERT_OK_AND_ASSIGN(GroupProfile p, ProfileGroup(t, *MakeGroup(t, 1, {1, 2, 3}), k[0], "x"));
  EXPECT_EQ(p.delta, 0);
  EXPECT_EQ(p.f_max, Q("1/3"));
}

TEST(DeltaMaxTest, PublishedTable) {
  struct Row {
    int n;
    int r;
    const char* f;
    double expected;
  };
  for (const Row& row : std::vector<Row>{{3, 2, "0.1", 0.0474},
                                         {3, 2, "0.3", 0.1235},
                                         {3, 2, "0.5", 0.1667},
                                         {3, 2, "0.9", 0.0818},
                                         {4, 2, "0.3", 0.1750},
                                         {6, 2, "0.3", 0.2211},
                                         {6, 3, "0.3", 0.1537},
                                         {6, 4, "0.3", 0.0955}}) {
    ASSERT_OK_AND_ASSIGN(Rational d, DeltaMax(row.n, row.r, Q(row.f)));
    EXPECT_NEAR(ToDouble(d), row.expected, 5e-5) << row.n << " " << row.r << " " << row.f;
  }
}

TEST(DeltaMaxTest, SpecialValuesAndErrors) {
  EXPECT_EQ(*DeltaMax(3, 3, Q("0.4")), 0);
  EXPECT_EQ(*DeltaMax(2, 2, Q("0.25")), 0);
  EXPECT_EQ(*DeltaMax(1, 2, Q("0.25")), Q("-0.75"));
  EXPECT_EQ(*DeltaMax(5, 2, 0), 0);
  EXPECT_THAT(DeltaMax(3, 2, 1), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(DeltaMax(0, 2, Q("0.5")), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(DeltaMax(3, 1, Q("0.5")), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(DeltaMax(3, 2, Q("3/2")), StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(DeltaMaxTest, IncreasesWithNAndApproachesF) {
  for (const char* rs : {"2", "5/2", "3", "4", "10"}) {
    Rational r = Q(rs);
    for (int fi = 1; fi <= 19; ++fi) {
      Rational f = MakeRational(fi, 20);
      Rational prev = *DeltaMax(1, r, f);
      for (int n = 2; n <= 60; ++n) {
        Rational cur = *DeltaMax(n, r, f);
        ASSERT_GE(cur, prev) << n;
        ASSERT_LT(cur, f);
        prev = cur;
      }
      EXPECT_NEAR(ToDouble(*DeltaMax(1'000'000'000, r, f)), ToDouble(f), 1e-5);
    }
  }
}

TEST(BoundHoldsTest, Cases) {
  // Singleton holding x: delta_max is -0.75 < 0.
  EXPECT_FALSE(BoundHolds(1, 1, 2, Q("0.25"), 0));
  // Two same-signature members.
  EXPECT_TRUE(BoundHolds(2, 1, 2, Q("0.25"), 0));
  // x twice never passes.
  EXPECT_FALSE(BoundHolds(10, 2, 2, Q("0.25"), 0));
  // x absent, or no member can carry x.
  EXPECT_TRUE(BoundHolds(1, 0, 2, Q("0.25"), Q("0.25")));
  EXPECT_TRUE(BoundHolds(1, 1, 2, 0, 0));
  // f_max = 1: equal distributions and N >= r.
  EXPECT_TRUE(BoundHolds(2, 1, 2, 1, 0));
  EXPECT_FALSE(BoundHolds(1, 1, 2, 1, 0));
  EXPECT_FALSE(BoundHolds(5, 1, 2, 1, Q("0.5")));
  // Non-integer r: N = 2 < 5/2.
  EXPECT_FALSE(BoundHolds(2, 1, Q("5/2"), Q("0.3"), 0));
  EXPECT_TRUE(BoundHolds(3, 1, Q("5/2"), Q("0.3"), 0));
}

TEST(BoundConditionTest, RepeatedValueFails) {
  RawTable t = MakeTable({"C"}, {{"a"}, {"a"}, {"a"}, {"a"}}, {"x", "x", "y", "y"});
  ASSERT_OK_AND_ASSIGN(auto k, DeriveKnowledge(t, {*AttributeSet::Create(
                                                      t.qi_attributes(), {"C"})}));
  AGroup g = *MakeGroup(t, 1, {1, 2, 3, 4});
  EXPECT_FALSE(*BoundCondition(t, g, k[0], 2, "x"));
  EXPECT_THAT(BoundCondition(t, g, k[0], 1, "x"),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(ExpectedMinSizeTest, Values) {
  EXPECT_EQ(*ExpectedMinSize(0, Q("0.25"), 2), 2);
  EXPECT_EQ(*ExpectedMinSize(0, Q("0.7"), Q("5/2")), 3);
  EXPECT_EQ(*ExpectedMinSize(0, Q("0.5"), 10), 10);
  EXPECT_EQ(*ExpectedMinSize(Q("0.02"), Q("0.1"), 2), 3);
  EXPECT_LT(*ExpectedMinSize(Q("0.09"), Q("0.1"), 2),
            *ExpectedMinSize(Q("0.099"), Q("0.1"), 2));
  EXPECT_GT(*ExpectedMinSize(Q("0.0999"), Q("0.1"), 2), 1000);
  EXPECT_THAT(ExpectedMinSize(Q("0.1"), Q("0.1"), 2),
              StatusIs(absl::StatusCode::kFailedPrecondition));
  EXPECT_THAT(ExpectedMinSize(0, 1, 2), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ExpectedMinSize(0, 0, 2), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ExpectedMinSize(0, Q("0.5"), 1), StatusIs(absl::StatusCode::kInvalidArgument));
}

// N0' is the exact threshold of the bound for fixed delta and f_max.
TEST(ExpectedMinSizeTest, IsTheInverseOfTheBound) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 5000; ++i) {
    Rational f = MakeRational(1 + rng() % 99, 100);
    Rational delta = f * MakeRational(rng() % 95, 100);
    Rational r = MakeRational(11 + rng() % 90, 10);
    ASSERT_OK_AND_ASSIGN(int64_t n0, ExpectedMinSize(delta, f, r));
    ASSERT_TRUE(BoundHolds(n0, 1, r, f, delta));
    if (n0 > 1) ASSERT_FALSE(BoundHolds(n0 - 1, 1, r, f, delta));
  }
}

// The bound guarantees p(t:x) <= 1/r when the knowledge only separates x
// from not-x.
TEST(BoundSoundnessTest, HoldsUnderBinaryKnowledge) {
  std::mt19937_64 rng(22);
  InstanceOptions opt;
  opt.binary = true;
  opt.max_classes = 3;
  opt.max_weight = 30;
  int checked = 0;
  for (int i = 0; i < 200000 && checked < 2000; ++i) {
    RandomInstance inst = MakeRandomInstance(rng, opt);
    Rational r = MakeRational(2 + rng() % 5, 1 + rng() % 2);
    if (r <= 1) continue;
    if (!*BoundCondition(*inst.table, inst.group, *inst.knowledge, r, inst.x)) continue;
    ++checked;
    ASSERT_OK_AND_ASSIGN(GroupLinkage link, ComputeGroupLinkage(*inst.table, inst.group,
                                                                *inst.knowledge));
    int x = link.ValueIndex(*inst.table->SensitiveCode(inst.x));
    for (size_t m = 0; m < inst.n(); ++m) {
      ASSERT_LE(link.Probability(m, x), 1 / r);
    }
  }
  EXPECT_EQ(checked, 2000);
}

// With several other values the bound is not sufficient: both tuples have
// f = 1/3 (delta = 0 = delta_max at N = r = 2), yet t1 is far more likely
// to hold x because t2 explains the remaining value b much better.
TEST(BoundSoundnessTest, FailsUnderMultiValuedKnowledge) {
  RawTable t = MakeTable({"C"}, {{"c1"}, {"c2"}}, {"x", "b"});
  auto k = *BoundDistribution::Bind(
      t, Knowledge(t, {"a", "b", "x"},
                   {{"c1", {"5/9", "1/9", "1/3"}}, {"c2", {"1/3", "1/3", "1/3"}}}));
  AGroup g = *MakeGroup(t, 1, {1, 2});
  EXPECT_TRUE(*BoundCondition(t, g, k, 2, "x"));
  ASSERT_OK_AND_ASSIGN(Rational p, TupleLinkProbability(t, g, 1, "x", k));
  EXPECT_EQ(p, Q("3/4"));
}

class VerifyTest : public ::testing::Test {
 protected:
  void SetUp() override {
    table_ = std::make_shared<const RawTable>(MakeTable(
        {"C"}, {{"s1"}, {"s1"}, {"s2"}, {"s2"}}, {"x", "y", "x", "y"}));
    knowledge_.push_back(*BoundDistribution::Bind(
        *table_, Knowledge(*table_, {"x", "y"},
                           {{"s1", {"1/2", "1/2"}}, {"s2", {"1/5", "4/5"}}})));
  }
  std::shared_ptr<const RawTable> table_;
  std::vector<BoundDistribution> knowledge_;
};

TEST_F(VerifyTest, FlagsTheLikelyHolderAtRTwo) {
  ASSERT_OK_AND_ASSIGN(auto d, AnonymizedDataset::Create(
                                   table_, {*MakeGroup(*table_, 1, {1, 2, 3, 4})}, {}));
  SensitiveTargets x{false, {"x"}, false};
  ASSERT_OK_AND_ASSIGN(RobustnessReport rep, VerifyRRobustness(d, knowledge_, 2, x));
  ASSERT_EQ(rep.per_tuple.size(), 4);
  EXPECT_EQ(rep.per_tuple[0].probability, Q("8/11"));
  EXPECT_TRUE(rep.per_tuple[0].problematic);
  EXPECT_FALSE(rep.per_tuple[2].problematic);  // 3/11
  EXPECT_EQ(rep.violation_count, 2);           // t1 and t2 are symmetric
  EXPECT_EQ(rep.per_tuple[0].target, "x");
  EXPECT_EQ(rep.per_tuple[0].attribute_set.ToString(), "C");

  ASSERT_OK_AND_ASSIGN(RobustnessReport lax, VerifyRRobustness(d, knowledge_, Q("11/8"), x));
  EXPECT_EQ(lax.violation_count, 0);  // 8/11 is not above 8/11
}

TEST_F(VerifyTest, SetTargetAndSerialParallelAgree) {
  ASSERT_OK_AND_ASSIGN(auto d, AnonymizedDataset::Create(
                                   table_, {*MakeGroup(*table_, 1, {1, 2}),
                                            *MakeGroup(*table_, 2, {3, 4})}, {}));
  SensitiveTargets set{false, {"x", "y"}, true};
  VerifyOptions serial;
  serial.mode = ExecutionMode::kSerial;
  ASSERT_OK_AND_ASSIGN(RobustnessReport a, VerifyRRobustness(d, knowledge_, 2, set, serial));
  ASSERT_OK_AND_ASSIGN(RobustnessReport b, VerifyRRobustness(d, knowledge_, 2, set));
  // The joint set covers every value, so each tuple is linked with
  // certainty while no single value is certain.
  for (const TupleVerdict& v : a.per_tuple) {
    EXPECT_EQ(v.target, "{x,y}");
    EXPECT_EQ(v.probability, 1);
  }
  ASSERT_EQ(a.per_tuple.size(), b.per_tuple.size());
  for (size_t i = 0; i < a.per_tuple.size(); ++i) {
    EXPECT_EQ(a.per_tuple[i].probability, b.per_tuple[i].probability);
    EXPECT_EQ(a.per_tuple[i].row_id, b.per_tuple[i].row_id);
  }
}

TEST_F(VerifyTest, CapacityErrorsAreReportedPerGroup) {
  ASSERT_OK_AND_ASSIGN(auto d, AnonymizedDataset::Create(
                                   table_, {*MakeGroup(*table_, 5, {1, 2, 3, 4})}, {}));
  VerifyOptions tiny;
  tiny.world_cap = 2;
  ASSERT_OK_AND_ASSIGN(RobustnessReport rep,
                       VerifyRRobustness(d, knowledge_, 2, SensitiveTargets::All(), tiny));
  ASSERT_EQ(rep.group_errors.size(), 1);
  EXPECT_EQ(rep.group_errors[0].gid, 5);
  EXPECT_EQ(rep.group_errors[0].status.code(), absl::StatusCode::kResourceExhausted);
  EXPECT_TRUE(rep.per_tuple.empty());
}

TEST_F(VerifyTest, RejectsBadArguments) {
  ASSERT_OK_AND_ASSIGN(auto d, AnonymizedDataset::Create(
                                   table_, {*MakeGroup(*table_, 1, {1, 2, 3, 4})}, {}));
  EXPECT_THAT(VerifyRRobustness(d, knowledge_, 1, SensitiveTargets::All()),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(VerifyRRobustness(d, knowledge_, 2, {false, {"z"}, false}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(VerifyRRobustness(d, knowledge_, 2, {true, {}, true}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(VerifyRRobustness(d, {}, 2, SensitiveTargets::All()),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(VerifyUniformTest, FlaggedIffGroupSmallerThanR) {
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::vector<std::string>> qi(n, {"a"});
    std::vector<std::string> s(n, "y");
    s[0] = "x";
    auto t = std::make_shared<const RawTable>(MakeTable({"C"}, qi, s));
    auto k = *BoundDistribution::Bind(
        *t, Knowledge(*t, {"x", "y"}, {{"a", {"1/2", "1/2"}}}));
    std::vector<int64_t> ids;
    for (int i = 1; i <= n; ++i) ids.push_back(i);
    auto d = *AnonymizedDataset::Create(t, {*MakeGroup(*t, 1, ids)}, {});
    for (int r = 2; r <= 5; ++r) {
      ASSERT_OK_AND_ASSIGN(RobustnessReport rep,
                           VerifyRRobustness(d, {k}, r, {false, {"x"}, false}));
      EXPECT_EQ(rep.violation_count > 0, n < r) << n << " " << r;
    }
  }
}

}  // namespace
}  // namespace robustanon
