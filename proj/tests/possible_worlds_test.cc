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

#include "robustanon/possible_worlds.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "random_instances.h"
#include "robustanon/anonymized.h"
#include "robustanon/distribution.h"
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
using ::testing::HasSubstr;

// Knowledge {C} -> distribution over the values of `domain`, given as
// fractions aligned with the sorted domain.
std::shared_ptr<const QIDistribution> MakeKnowledge(
    const RawTable& table, std::vector<std::string> domain,
    std::map<std::string, std::vector<const char*>> rows) {
  std::vector<QIDistribution::Entry> entries;
  for (const auto& [sig, probs] : rows) {
    QIDistribution::Entry e;
    e.values = {sig};
    e.support = 1;
    for (const char* p : probs) e.probabilities.push_back(Q(p));
    entries.push_back(std::move(e));
  }
  auto attrs = *AttributeSet::Create(table.qi_attributes(), {"C"});
  return std::make_shared<const QIDistribution>(
      *QIDistribution::Create(attrs, std::move(domain), std::move(entries)));
}

// Four tuples: t1, t2 match s1 with p(s1:x) = 0.5; t3, t4 match s2 with
// p(s2:x) = 0.2. Values {x, x, y, y}.
class FourTupleExample : public ::testing::Test {
 protected:
  void SetUp() override {
    table_ = std::make_shared<const RawTable>(MakeTable(
        {"C"}, {{"s1"}, {"s1"}, {"s2"}, {"s2"}}, {"x", "y", "x", "y"}));
    knowledge_ = std::make_unique<BoundDistribution>(*BoundDistribution::Bind(
        *table_, MakeKnowledge(*table_, {"x", "y"},
                               {{"s1", {"1/2", "1/2"}}, {"s2", {"1/5", "4/5"}}})));
    group_ = *MakeGroup(*table_, 7, {1, 2, 3, 4});
  }

  std::shared_ptr<const RawTable> table_;
  std::unique_ptr<BoundDistribution> knowledge_;
  AGroup group_;
};

TEST_F(FourTupleExample, EnumeratesSixWorlds) {
  ASSERT_OK_AND_ASSIGN(auto worlds, EnumerateWorlds(group_));
  ASSERT_EQ(worlds.size(), 6);
  EXPECT_EQ(worlds[0].assignment,
            (std::map<int64_t, std::string>{{1, "x"}, {2, "x"}, {3, "y"}, {4, "y"}}));
  EXPECT_EQ(worlds[5].assignment,
            (std::map<int64_t, std::string>{{1, "y"}, {2, "y"}, {3, "x"}, {4, "x"}}));
}

TEST_F(FourTupleExample, WorldWeightsAndPosteriors) {
  ASSERT_OK_AND_ASSIGN(auto posterior, WorldPosterior(*table_, group_, *knowledge_));
  std::vector<Rational> weights, posteriors;
  Rational total = 0;
  for (const WeightedWorld& w : posterior) {
    weights.push_back(w.weight);
    posteriors.push_back(w.posterior);
    total += w.weight;
  }
  EXPECT_THAT(weights, ElementsAre(Q("0.16"), Q("0.04"), Q("0.04"), Q("0.04"),
                                   Q("0.04"), Q("0.01")));
  EXPECT_EQ(total, Q("0.33"));
  EXPECT_EQ(posteriors.front(), Q("16/33"));
  EXPECT_EQ(posteriors.back(), Q("1/33"));
  EXPECT_EQ(FormatDecimal(posteriors.front(), 2), "0.48");
  EXPECT_EQ(FormatDecimal(posteriors.back(), 1), "0.03");
}

TEST_F(FourTupleExample, TupleLinkProbability) {
  ASSERT_OK_AND_ASSIGN(Rational p,
                       TupleLinkProbability(*table_, group_, 1, "x", *knowledge_));
  EXPECT_EQ(p, Q("24/33"));
  EXPECT_EQ(FormatDecimal(p, 2), "0.73");  // 0.7272...
  ASSERT_OK_AND_ASSIGN(Rational p3,
                       TupleLinkProbability(*table_, group_, 3, "x", *knowledge_));
  EXPECT_EQ(p3, Q("9/33"));
}

TEST_F(FourTupleExample, SetOfAllGroupValuesIsCertain) {
  std::vector<std::string> both = {"x", "y"};
  ASSERT_OK_AND_ASSIGN(Rational p,
                       SetLinkProbability(*table_, group_, 1, both, *knowledge_));
  EXPECT_EQ(p, 1);
}

TEST_F(FourTupleExample, UnknownValueAndNonMember) {
  EXPECT_THAT(TupleLinkProbability(*table_, group_, 1, "z", *knowledge_),
              StatusIs(absl::StatusCode::kInvalidArgument));
  AGroup partial = *MakeGroup(*table_, 2, {1, 2});
  EXPECT_THAT(TupleLinkProbability(*table_, partial, 3, "x", *knowledge_),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST_F(FourTupleExample, EnumerationAndDpAgreeExactly) {
  ASSERT_OK_AND_ASSIGN(GroupLinkage dp, ComputeGroupLinkage(*table_, group_, *knowledge_));
  ASSERT_OK_AND_ASSIGN(GroupLinkage brute, ComputeGroupLinkageByEnumeration(
                                               *table_, group_, *knowledge_));
  for (size_t m = 0; m < 4; ++m) {
    for (size_t v = 0; v < 2; ++v) {
      EXPECT_EQ(dp.Probability(m, v), brute.Probability(m, v));
    }
  }
}

TEST_F(FourTupleExample, RunsWellUnderAMillisecond) {
  auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 10; ++i) {
    ASSERT_OK(TupleLinkProbability(*table_, group_, 1, "x", *knowledge_));
  }
  auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_LT(elapsed, std::chrono::milliseconds(10));
}

TEST(EnumerateWorldsTest, CountsAreMultinomial) {
  RawTable t = MakeTable({"C"}, {{"a"}, {"a"}, {"a"}}, {"x", "y", "z"});
  ASSERT_OK_AND_ASSIGN(auto worlds, EnumerateWorlds(*MakeGroup(t, 1, {1, 2, 3})));
  EXPECT_EQ(worlds.size(), 6);
  RawTable same = MakeTable({"C"}, {{"a"}, {"b"}, {"c"}}, {"x", "x", "x"});
  ASSERT_OK_AND_ASSIGN(auto one, EnumerateWorlds(*MakeGroup(same, 1, {1, 2, 3})));
  EXPECT_EQ(one.size(), 1);
}

TEST(EnumerateWorldsTest, CapIsEnforcedAndNamesTheGroup) {
  std::vector<std::vector<std::string>> qi(12, {"a"});
  std::vector<std::string> s;
  for (int i = 0; i < 12; ++i) s.push_back(absl::StrCat("v", i));
  RawTable t = MakeTable({"C"}, qi, s);
  std::vector<int64_t> ids;
  for (int i = 1; i <= 12; ++i) ids.push_back(i);
  absl::StatusOr<std::vector<PossibleWorld>> worlds =
      EnumerateWorlds(*MakeGroup(t, 42, ids), 1000);
  EXPECT_THAT(worlds, StatusIs(absl::StatusCode::kResourceExhausted));
  EXPECT_THAT(std::string(worlds.status().message()), HasSubstr("group 42"));
}

TEST(WorldWeightTest, UniformKnowledgeGivesPowerOfOneOverM) {
  RawTable t = MakeTable({"C"}, {{"a"}, {"b"}, {"a"}}, {"x", "y", "z"});
  auto k = *BoundDistribution::Bind(
      t, MakeKnowledge(t, {"x", "y", "z"},
                       {{"a", {"1/3", "1/3", "1/3"}}, {"b", {"1/3", "1/3", "1/3"}}}));
  AGroup g = *MakeGroup(t, 1, {1, 2, 3});
  ASSERT_OK_AND_ASSIGN(auto worlds, EnumerateWorlds(g));
  for (const PossibleWorld& w : worlds) {
    ASSERT_OK_AND_ASSIGN(Rational weight, WorldWeight(t, w, g, k));
    EXPECT_EQ(weight, Q("1/27"));
  }
}

TEST(WorldPosteriorTest, SingleWorldHasPosteriorOne) {
  RawTable t = MakeTable({"C"}, {{"a"}, {"b"}}, {"x", "x"});
  ASSERT_OK_AND_ASSIGN(auto k, DeriveKnowledge(t, {*AttributeSet::Create(
                                                      t.qi_attributes(), {"C"})}));
  ASSERT_OK_AND_ASSIGN(auto post, WorldPosterior(t, *MakeGroup(t, 1, {1, 2}), k[0]));
  ASSERT_EQ(post.size(), 1);
  EXPECT_EQ(post[0].posterior, 1);
}

TEST(WorldPosteriorTest, AllZeroWeightsAreDegenerate) {
  RawTable t = MakeTable({"C"}, {{"a"}, {"a"}}, {"x", "y"});
  // Foreign knowledge: signature a never carries y.
  auto k = *BoundDistribution::Bind(
      t, MakeKnowledge(t, {"x", "y"}, {{"a", {"1", "0"}}}));
  AGroup g = *MakeGroup(t, 3, {1, 2});
  EXPECT_THAT(WorldPosterior(t, g, k),
              StatusIs(absl::StatusCode::kFailedPrecondition));
  EXPECT_THAT(ComputeGroupLinkage(t, g, k),
              StatusIs(absl::StatusCode::kFailedPrecondition));
  EXPECT_THAT(ComputeGroupLinkageByEnumeration(t, g, k),
              StatusIs(absl::StatusCode::kFailedPrecondition));
}

TEST(MissingSignatureTest, ErrorOrUniformFallback) {
  RawTable t = MakeTable({"C"}, {{"a"}, {"b"}}, {"x", "y"});
  auto partial = MakeKnowledge(t, {"x", "y"}, {{"a", {"3/4", "1/4"}}});
  auto strict = *BoundDistribution::Bind(t, partial);
  AGroup g = *MakeGroup(t, 1, {1, 2});
  EXPECT_THAT(TupleLinkProbability(t, g, 1, "x", strict),
              StatusIs(absl::StatusCode::kNotFound));
  ASSERT_OK_AND_ASSIGN(
      auto lenient, BoundDistribution::Bind(t, partial, MissingSignaturePolicy::kUniform));
  EXPECT_EQ(lenient.fallback_rows(), 1);
  // Worlds: (a:x, b:y) = 3/4 * 1/2, (a:y, b:x) = 1/4 * 1/2.
  ASSERT_OK_AND_ASSIGN(Rational p, TupleLinkProbability(t, g, 1, "x", lenient));
  EXPECT_EQ(p, Q("3/4"));
}

TEST(WorstCaseTest, MaxOverDistributionsWithTieBreak) {
  RawTable t = MakeTable({"A", "B"}, {{"a1", "b1"}, {"a2", "b1"}, {"a1", "b2"}},
                         {"x", "y", "y"});
  auto sets = *EnumerateAttributeSets(t, 1, 1);
  ASSERT_OK_AND_ASSIGN(auto k, DeriveKnowledge(t, sets));
  AGroup g = *MakeGroup(t, 1, {1, 2, 3});
  std::vector<std::string> x = {"x"};
  ASSERT_OK_AND_ASSIGN(Rational pa, SetLinkProbability(t, g, 1, x, k[0]));
  ASSERT_OK_AND_ASSIGN(Rational pb, SetLinkProbability(t, g, 1, x, k[1]));
  ASSERT_OK_AND_ASSIGN(WorstCase worst, WorstCaseProbability(t, g, 1, x, k));
  EXPECT_EQ(worst.probability, std::max(pa, pb));
  EXPECT_EQ(worst.attribute_set.ToString(), pa >= pb ? "A" : "B");

  ASSERT_OK_AND_ASSIGN(WorstCase single,
                       WorstCaseProbability(t, g, 1, x, absl::MakeConstSpan(&k[1], 1)));
  EXPECT_EQ(single.probability, pb);
  // Equal maxima resolve to the smaller attribute set.
  std::vector<BoundDistribution> twice = {k[1], k[1]};
  ASSERT_OK_AND_ASSIGN(WorstCase tie, WorstCaseProbability(t, g, 1, x, twice));
  EXPECT_EQ(tie.attribute_set.ToString(), "B");
  EXPECT_THAT(WorstCaseProbability(t, g, 1, x, {}),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

// --- Properties over random instances ---

TEST(LinkagePropertyTest, AllExactPathsAgree) {
  std::mt19937_64 rng(11);
  InstanceOptions opt;
  opt.max_n = 7;
  opt.x_once = false;
  for (int i = 0; i < 300; ++i) {
    RandomInstance inst = MakeRandomInstance(rng, opt);
    std::vector<size_t> members;
    for (size_t m = 0; m < inst.n(); ++m) members.push_back(m);
    ASSERT_OK_AND_ASSIGN(GroupLinkage brute,
                         internal::LinkageByEnumeration(*inst.table, members,
                                                        *inst.knowledge, 1 << 20, 1));
    ASSERT_OK_AND_ASSIGN(GroupLinkage by_value,
                         internal::LinkageByValueDp(*inst.table, members,
                                                    *inst.knowledge, 1 << 20, 1));
    ASSERT_OK_AND_ASSIGN(GroupLinkage by_class,
                         internal::LinkageByClassDp(*inst.table, members,
                                                    *inst.knowledge, 1 << 20, 1));
    ASSERT_EQ(brute.value_codes(), by_class.value_codes());
    for (size_t m = 0; m < inst.n(); ++m) {
      Rational row_sum = 0;
      for (size_t v = 0; v < brute.value_codes().size(); ++v) {
        ASSERT_EQ(brute.Probability(m, v), by_value.Probability(m, v));
        ASSERT_EQ(brute.Probability(m, v), by_class.Probability(m, v));
        row_sum += brute.Probability(m, v);
      }
      ASSERT_EQ(row_sum, 1);
    }
  }
}

TEST(LinkagePropertyTest, PosteriorSumOverWorldsMatchesLinkage) {
  std::mt19937_64 rng(12);
  InstanceOptions opt;
  opt.max_n = 6;
  opt.x_once = false;
  for (int i = 0; i < 100; ++i) {
    RandomInstance inst = MakeRandomInstance(rng, opt);
    ASSERT_OK_AND_ASSIGN(auto posterior,
                         WorldPosterior(*inst.table, inst.group, *inst.knowledge));
    Rational total = 0;
    std::map<std::pair<int64_t, std::string>, Rational> mass;
    for (const WeightedWorld& w : posterior) {
      total += w.posterior;
      for (const auto& [id, v] : w.world.assignment) mass[{id, v}] += w.posterior;
    }
    ASSERT_EQ(total, 1);
    for (const auto& [key, p] : mass) {
      ASSERT_OK_AND_ASSIGN(Rational q, TupleLinkProbability(*inst.table, inst.group,
                                                            key.first, key.second,
                                                            *inst.knowledge));
      ASSERT_EQ(p, q);
    }
  }
}

// Independent oracle: draw each tuple's value from its own distribution and
// keep the draw only if the multiset equals the group's.
TEST(LinkagePropertyTest, MatchesRejectionSampling) {
  std::mt19937_64 rng(13);
  InstanceOptions opt;
  opt.min_n = 5;
  opt.max_n = 5;
  opt.values = 3;
  RandomInstance inst = MakeRandomInstance(rng, opt);
  const RawTable& t = *inst.table;
  const size_t n = inst.n();
  const size_t domain = t.sensitive_domain().size();
  std::vector<std::discrete_distribution<int>> draw;
  for (size_t m = 0; m < n; ++m) {
    std::vector<double> p;
    for (size_t v = 0; v < domain; ++v) {
      p.push_back(inst.knowledge->probability_double(inst.knowledge->class_of(m), v));
    }
    draw.emplace_back(p.begin(), p.end());
  }
  std::vector<int> target(domain, 0);
  for (size_t m = 0; m < n; ++m) ++target[t.sensitive_code(m)];
  const int32_t x = *t.SensitiveCode(inst.x);
  int64_t accepted = 0;
  std::vector<int64_t> hits(n, 0);
  std::vector<int> sample(n), counts(domain);
  for (int s = 0; s < 1'000'000; ++s) {
    std::fill(counts.begin(), counts.end(), 0);
    for (size_t m = 0; m < n; ++m) ++counts[sample[m] = draw[m](rng)];
    if (counts != target) continue;
    ++accepted;
    for (size_t m = 0; m < n; ++m) hits[m] += sample[m] == x;
  }
  ASSERT_GT(accepted, 10000);
  for (size_t m = 0; m < n; ++m) {
    ASSERT_OK_AND_ASSIGN(Rational p, TupleLinkProbability(t, inst.group, m + 1,
                                                          inst.x, *inst.knowledge));
    EXPECT_NEAR(static_cast<double>(hits[m]) / accepted, ToDouble(p), 0.005);
  }
}

TEST(LinkagePropertyTest, UniformKnowledgeGivesMultiplicityOverN) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 100; ++i) {
    int n = std::uniform_int_distribution<int>(1, 8)(rng);
    std::vector<std::vector<std::string>> qi;
    std::vector<std::string> s;
    for (int j = 0; j < n; ++j) {
      qi.push_back({absl::StrCat("c", rng() % 3)});
      s.push_back(absl::StrCat("v", rng() % 3));
    }
    RawTable t = MakeTable({"C"}, qi, s);
    std::vector<std::string> domain = {"v0", "v1", "v2"};
    auto k = *BoundDistribution::Bind(
        t, MakeKnowledge(t, domain, {{"c0", {"1/6", "1/3", "1/2"}},
                                     {"c1", {"1/6", "1/3", "1/2"}},
                                     {"c2", {"1/6", "1/3", "1/2"}}}),
        MissingSignaturePolicy::kError);
    std::vector<int64_t> ids;
    for (int j = 1; j <= n; ++j) ids.push_back(j);
    AGroup g = *MakeGroup(t, 1, ids);
    for (const std::string& v : t.sensitive_domain()) {
      int64_t mult = std::count(s.begin(), s.end(), v);
      for (int64_t id : ids) {
        ASSERT_OK_AND_ASSIGN(Rational p, TupleLinkProbability(t, g, id, v, k));
        ASSERT_EQ(p, MakeRational(mult, n));
      }
    }
  }
}

// Both orderings hold when the knowledge only distinguishes x from not-x.
TEST(LinkagePropertyTest, OrderingFollowsFUnderBinaryKnowledge) {
  std::mt19937_64 rng(15);
  InstanceOptions opt;
  opt.binary = true;
  for (int i = 0; i < 1000; ++i) {
    RandomInstance inst = MakeRandomInstance(rng, opt);
    std::vector<Rational> f = testing::MemberF(inst);
    ASSERT_OK_AND_ASSIGN(GroupLinkage link,
                         ComputeGroupLinkage(*inst.table, inst.group, *inst.knowledge));
    int x = link.ValueIndex(*inst.table->SensitiveCode(inst.x));
    for (size_t a = 0; a < inst.n(); ++a) {
      for (size_t v = 0; v < inst.n(); ++v) {
        if (f[a] >= f[v]) {
          ASSERT_GE(link.Probability(a, x), link.Probability(v, x));
        }
      }
    }
  }
}

// With more than two values the ordering can invert: t2 has the larger
// p(s:x) yet the smaller posterior, because ruling out t2:x forces the other
// tuples into worlds their distributions favor.
TEST(LinkagePropertyTest, OrderingCanInvertUnderMultiValuedKnowledge) {
  RawTable t = MakeTable({"C"}, {{"c1"}, {"c2"}, {"c3"}}, {"x", "a", "b"});
  auto k = *BoundDistribution::Bind(
      t, MakeKnowledge(t, {"a", "b", "x"},
                       {{"c1", {"1/10", "3/5", "3/10"}},
                        {"c2", {"6/11", "1/11", "4/11"}},
                        {"c3", {"1/8", "3/4", "1/8"}}}));
  AGroup g = *MakeGroup(t, 1, {1, 2, 3});
  ASSERT_OK_AND_ASSIGN(Rational p1, TupleLinkProbability(t, g, 1, "x", k));
  ASSERT_OK_AND_ASSIGN(Rational p2, TupleLinkProbability(t, g, 2, "x", k));
  EXPECT_EQ(p1, Q("111/196"));
  EXPECT_EQ(p2, Q("12/49"));
  EXPECT_LT(p2, p1);  // although p(s2:x) = 4/11 > 3/10 = p(s1:x)
}

}  // namespace
}  // namespace robustanon
