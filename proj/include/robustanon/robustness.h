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

#ifndef ROBUSTANON_ROBUSTNESS_H_
#define ROBUSTANON_ROBUSTNESS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "absl/types/span.h"
#include "robustanon/anonymized.h"
#include "robustanon/distribution.h"
#include "robustanon/parallel.h"
#include "robustanon/possible_worlds.h"
#include "robustanon/rational.h"
#include "robustanon/table.h"

namespace robustanon {

// Which sensitive values need protection. With as_set, the listed values are
// also protected jointly: p(t:S) <= 1/r, and a group may hold at most one
// tuple carrying any value of S.
struct SensitiveTargets {
  bool all = false;
  std::vector<std::string> values;
  bool as_set = false;

  static SensitiveTargets All() { return {true, {}, false}; }
};

// Table codes of the protected values, ascending. Errors on values outside
// the table's sensitive domain and on as_set together with all.
absl::StatusOr<std::vector<int32_t>> ResolveProtectedCodes(
    const RawTable& table, const SensitiveTargets& targets);

// A single value or the joint set, as audited.
struct VerificationTarget {
  std::string label;            // "x" or "{x,y}"
  std::vector<int32_t> codes;   // ascending
};

// One target per protected value, then the joint set when as_set.
absl::StatusOr<std::vector<VerificationTarget>> ResolveVerificationTargets(
    const RawTable& table, const SensitiveTargets& targets);

struct GroupProfile {
  int64_t gid = 0;
  AttributeSet attribute_set;
  std::string value;
  size_t n = 0;
  std::vector<Rational> f_per_tuple;  // aligned with member_row_ids
  Rational f_max;
  std::vector<Rational> deltas;
  Rational delta;
};

absl::StatusOr<GroupProfile> ProfileGroup(const RawTable& table,
                                          const AGroup& group,
                                          const BoundDistribution& knowledge,
                                          absl::string_view value);

// (n - r) f / (f (r - 1) / (1 - f) + n - 1). Negative when n < r.
// InvalidArgument for f_max = 1, n < 1, r <= 1 or f_max outside [0, 1].
absl::StatusOr<Rational> DeltaMax(int64_t n, const Rational& r,
                                  const Rational& f_max);

// The bound condition for one value on summary numbers: x held by
// `multiplicity` members of an n-member group whose profile is (f_max,
// delta). Vacuously true when multiplicity or f_max is 0; for f_max = 1 it
// requires delta = 0 and n >= r.
bool BoundHolds(int64_t n, int64_t multiplicity, const Rational& r,
                const Rational& f_max, const Rational& delta);

absl::StatusOr<bool> BoundCondition(const RawTable& table, const AGroup& group,
                                    const BoundDistribution& knowledge,
                                    const Rational& r, absl::string_view value);

// Smallest integer N with N >= (f (r - 1) delta / (1 - f) - delta + r f) /
// (f - delta). FailedPrecondition when f_max <= delta (no group size is
// enough); InvalidArgument unless 0 < f_max < 1, delta >= 0 and r > 1.
absl::StatusOr<int64_t> ExpectedMinSize(const Rational& delta,
                                        const Rational& f_max,
                                        const Rational& r);

struct TupleVerdict {
  int64_t row_id = 0;
  int64_t gid = 0;
  // The target with the largest worst-case probability; first in target
  // order on ties.
  std::string target;
  Rational probability;
  AttributeSet attribute_set;
  bool problematic = false;
};

struct GroupError {
  int64_t gid = 0;
  absl::Status status;
};

struct RobustnessReport {
  Rational r;
  std::vector<TupleVerdict> per_tuple;  // ascending row id
  int64_t violation_count = 0;
  std::vector<GroupError> group_errors;  // tuples of these groups are absent
};

struct VerifyOptions {
  int64_t world_cap = kDefaultWorldCap;
  ExecutionMode mode = ExecutionMode::kParallel;
};

// Computes the exact worst-case linkage of every published tuple against
// every target. Per-group failures (capacity, missing signatures) are listed
// in group_errors rather than aborting the audit.
absl::StatusOr<RobustnessReport> VerifyRRobustness(
    const AnonymizedDataset& dataset,
    absl::Span<const BoundDistribution> knowledge, const Rational& r,
    const SensitiveTargets& targets, const VerifyOptions& options = {});

}  // namespace robustanon

#endif  // ROBUSTANON_ROBUSTNESS_H_
