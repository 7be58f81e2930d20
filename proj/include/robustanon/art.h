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

#ifndef ROBUSTANON_ART_H_
#define ROBUSTANON_ART_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "robustanon/anonymized.h"
#include "robustanon/distribution.h"
#include "robustanon/parallel.h"
#include "robustanon/possible_worlds.h"
#include "robustanon/rational.h"
#include "robustanon/robustness.h"
#include "robustanon/table.h"

namespace robustanon {

struct ArtConfig {
  Rational r = 2;
  SensitiveTargets targets = SensitiveTargets::All();
  int max_attrset_size = 1;
  int64_t min_support = 1;
  int64_t world_cap = kDefaultWorldCap;
  // Before a group is settled, also require its exact worst-case posterior
  // for every protected value to be <= 1/r. Off gives the bound-only
  // algorithm, whose output can violate r-robustness when the knowledge
  // carries more than two values.
  bool exact_guard = true;
  ExecutionMode mode = ExecutionMode::kParallel;
};

// D(from, to): the summed increase of delta over every attribute set and
// every protected value when `to` is merged into `from`. Terms are clamped at
// 0 (they cannot be negative since merging only widens [f_min, f_max]).
struct MergeDistance {
  int64_t from_gid = 0;
  int64_t to_gid = 0;
  Rational d;
};

absl::StatusOr<MergeDistance> ComputeMergeDistance(
    const RawTable& table, const AGroup& from, const AGroup& to,
    absl::Span<const BoundDistribution> knowledge,
    absl::Span<const int32_t> protected_codes);

// With require_feasible, candidates are skipped when the merged group would
// contain a protected value x next to a member with p(s:x) = 0 while another
// member has p(s:x) > 0: delta then equals f_max, which exceeds delta_max
// for every group size.
struct ClosestOptions {
  bool require_feasible = false;
  ExecutionMode mode = ExecutionMode::kSerial;
};

// The pool group minimizing D among those holding no value of `forbidden`;
// ties go to the smaller merged size, then the smaller gid. nullopt when no
// group qualifies. Reference implementation over exact profiles.
absl::StatusOr<std::optional<MergeDistance>> FindClosest(
    const RawTable& table, const AGroup& l, absl::Span<const AGroup> pool,
    absl::Span<const std::string> forbidden,
    absl::Span<const BoundDistribution> knowledge,
    absl::Span<const int32_t> protected_codes, const ClosestOptions& options = {});

// Same result as FindClosest, computed the way ART does: distances are
// screened in double precision (in parallel under kParallel) and only the
// near-minimal candidates are compared exactly. `forbidden` must be a subset
// of the protected values.
absl::StatusOr<std::optional<MergeDistance>> FindClosestScreened(
    const RawTable& table, const AGroup& l, absl::Span<const AGroup> pool,
    absl::Span<const std::string> forbidden,
    absl::Span<const BoundDistribution> knowledge,
    absl::Span<const int32_t> protected_codes, const ClosestOptions& options = {});

struct SuppressedRow {
  int64_t row_id = 0;
  std::string reason;
};

// One absorption. Gids are working ids (the 1-based row position of the
// group's first tuple), not the renumbered output gids.
struct MergeTraceStep {
  int64_t gid = 0;
  int64_t absorbed_gid = 0;
  // Largest expected minimum size over the attribute sets and protected
  // values of the group before absorbing; 0 when the absorption was
  // requested by the exact guard only.
  int64_t expected_min_size = 0;
  size_t size_after = 0;
  Rational distance;
};

struct ArtResult {
  AnonymizedDataset dataset;
  std::vector<SuppressedRow> suppressed;
  std::vector<MergeTraceStep> trace;
  std::vector<AttributeSet> attribute_sets;
  int64_t guard_checks = 0;
};

// Derives knowledge for every attribute set allowed by the config, then runs
// ART. Output gids are 1..k in ascending working gid.
absl::StatusOr<ArtResult> ArtAnonymize(std::shared_ptr<const RawTable> table,
                                       const ArtConfig& config);

// Runs ART against the given knowledge (bound to `table`).
absl::StatusOr<ArtResult> ArtAnonymize(std::shared_ptr<const RawTable> table,
                                       absl::Span<const BoundDistribution> knowledge,
                                       const ArtConfig& config);

}  // namespace robustanon

#endif  // ROBUSTANON_ART_H_
