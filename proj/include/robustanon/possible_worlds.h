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

#ifndef ROBUSTANON_POSSIBLE_WORLDS_H_
#define ROBUSTANON_POSSIBLE_WORLDS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "absl/types/span.h"
#include "robustanon/anonymized.h"
#include "robustanon/distribution.h"
#include "robustanon/rational.h"
#include "robustanon/table.h"

namespace robustanon {

// Upper bound on enumerated worlds (and on DP states) per group.
inline constexpr int64_t kDefaultWorldCap = 10'000'000;

// One assignment of a group's sensitive multiset to its members.
struct PossibleWorld {
  std::map<int64_t, std::string> assignment;
};

struct WeightedWorld {
  PossibleWorld world;
  Rational weight;     // product of p(s_j : w(t_j)) over members
  Rational posterior;  // weight / sum of all weights of the group
};

// All distinct assignments, in lexicographic order of the value sequence
// listed by ascending row id. ResourceExhausted when the multinomial count
// exceeds `cap`.
absl::StatusOr<std::vector<PossibleWorld>> EnumerateWorlds(
    const AGroup& group, int64_t cap = kDefaultWorldCap);

// NotFound when a member has no signature entry in `knowledge` (and the
// binding did not fall back to uniform).
absl::StatusOr<Rational> WorldWeight(const RawTable& table,
                                     const PossibleWorld& world,
                                     const AGroup& group,
                                     const BoundDistribution& knowledge);

// FailedPrecondition when every world has weight 0.
absl::StatusOr<std::vector<WeightedWorld>> WorldPosterior(
    const RawTable& table, const AGroup& group,
    const BoundDistribution& knowledge, int64_t cap = kDefaultWorldCap);

// Exact p(t:v) for every member t and every value v of one group under one
// distribution. Probabilities are stored as integer numerators over a common
// normalizer.
class GroupLinkage {
 public:
  const std::vector<int64_t>& member_row_ids() const { return member_row_ids_; }
  // Distinct table sensitive codes of the group, ascending.
  const std::vector<int32_t>& value_codes() const { return value_codes_; }
  const std::vector<int>& multiplicities() const { return multiplicities_; }
  const BigInt& normalizer() const { return normalizer_; }
  const BigInt& numerator(size_t member, size_t value) const {
    return numerators_[member * value_codes_.size() + value];
  }

  Rational Probability(size_t member, size_t value) const;
  // Sum over the values whose table code appears in `codes` (sorted).
  Rational SetProbability(size_t member, absl::Span<const int32_t> codes) const;
  // Position of `code` in value_codes(), or -1.
  int ValueIndex(int32_t code) const;
  // Position of `row_id` in member_row_ids(), or -1.
  int MemberIndex(int64_t row_id) const;

 private:
  friend class LinkageBuilder;

  std::vector<int64_t> member_row_ids_;
  std::vector<int32_t> value_codes_;
  std::vector<int> multiplicities_;
  BigInt normalizer_;
  std::vector<BigInt> numerators_;
};

// Exact dynamic program. Worlds that differ only by permuting equal values,
// or by permuting tuples of one signature class, are never visited twice;
// the state space is the smaller of prod(m_v + 1) over distinct values and
// prod(n_c + 1) over signature classes.
absl::StatusOr<GroupLinkage> ComputeGroupLinkage(
    const RawTable& table, const AGroup& group,
    const BoundDistribution& knowledge, int64_t cap = kDefaultWorldCap);

// Serial reference: sums over every enumerated world.
absl::StatusOr<GroupLinkage> ComputeGroupLinkageByEnumeration(
    const RawTable& table, const AGroup& group,
    const BoundDistribution& knowledge, int64_t cap = kDefaultWorldCap);

namespace internal {

// Index-level entry points shared by the auditor and ART. `members` are table
// row indices in the order the linkage should list them. `cap` bounds the
// number of DP states (or enumerated worlds).
absl::StatusOr<GroupLinkage> LinkageByDp(const RawTable& table,
                                         absl::Span<const size_t> members,
                                         const BoundDistribution& knowledge,
                                         int64_t cap, int64_t gid);
// Tuples assigned one at a time; state = remaining multiplicity per value.
absl::StatusOr<GroupLinkage> LinkageByValueDp(
    const RawTable& table, absl::Span<const size_t> members,
    const BoundDistribution& knowledge, int64_t cap, int64_t gid);
// Values distributed one at a time; state = used capacity per class.
absl::StatusOr<GroupLinkage> LinkageByClassDp(
    const RawTable& table, absl::Span<const size_t> members,
    const BoundDistribution& knowledge, int64_t cap, int64_t gid);
absl::StatusOr<GroupLinkage> LinkageByEnumeration(
    const RawTable& table, absl::Span<const size_t> members,
    const BoundDistribution& knowledge, int64_t cap, int64_t gid);

}  // namespace internal

// p(t:x): posterior mass of the worlds assigning x to `row_id`.
absl::StatusOr<Rational> TupleLinkProbability(const RawTable& table,
                                              const AGroup& group,
                                              int64_t row_id,
                                              absl::string_view value,
                                              const BoundDistribution& knowledge);

// p(t:S) = sum over x in S of p(t:x); the events are disjoint.
absl::StatusOr<Rational> SetLinkProbability(const RawTable& table,
                                            const AGroup& group, int64_t row_id,
                                            absl::Span<const std::string> values,
                                            const BoundDistribution& knowledge);

struct WorstCase {
  Rational probability;
  AttributeSet attribute_set;
};

// Maximum of SetLinkProbability over `knowledge`; ties go to the
// lexicographically smallest attribute set.
absl::StatusOr<WorstCase> WorstCaseProbability(
    const RawTable& table, const AGroup& group, int64_t row_id,
    absl::Span<const std::string> target,
    absl::Span<const BoundDistribution> knowledge);

}  // namespace robustanon

#endif  // ROBUSTANON_POSSIBLE_WORLDS_H_
