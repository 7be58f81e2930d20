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

#ifndef ROBUSTANON_EVALUATION_H_
#define ROBUSTANON_EVALUATION_H_

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "robustanon/anonymized.h"
#include "robustanon/distribution.h"
#include "robustanon/parallel.h"
#include "robustanon/rational.h"
#include "robustanon/robustness.h"
#include "robustanon/table.h"

namespace robustanon {

// A conjunctive COUNT query: each listed QI attribute must take one of its
// accepted values and the sensitive value must be accepted.
struct QuerySpec {
  std::map<std::string, std::set<std::string>> predicates;
  std::set<std::string> sensitive_predicate;
  double expected_selectivity = 1;
  // Fraction of table rows that satisfy the QI predicates.
  double realized_selectivity = 1;

  int qd() const { return static_cast<int>(predicates.size()); }
};

// n queries over qd distinct QI attributes drawn uniformly. Each attribute
// accepts round(s^(1/qd) * |domain|) values, at least one; the sensitive
// predicate is one random value. Deterministic under `seed`.
absl::StatusOr<std::vector<QuerySpec>> GenerateQueries(const RawTable& table, int qd,
                                                       double s, int64_t n,
                                                       uint64_t seed);

// Unknown attributes never match.
int64_t ExactCount(const RawTable& table, const QuerySpec& query);

// Sum over groups of (fraction of members matching the QI predicates) times
// (number of group sensitive values accepted). Suppressed rows contribute
// nothing.
Rational EstimatedCount(const AnonymizedDataset& dataset, const QuerySpec& query);

struct RelativeError {
  Rational mean;
  int64_t evaluated = 0;
  // Queries whose exact count is 0.
  int64_t skipped = 0;
};

// Mean of |estimate - exact| / exact over queries with a nonzero exact count.
// exact counts come from the dataset's source table. FailedPrecondition when
// every query is skipped.
absl::StatusOr<RelativeError> RelativeErrorRatio(
    const AnonymizedDataset& dataset, absl::Span<const QuerySpec> queries,
    ExecutionMode mode = ExecutionMode::kParallel);

// Share of published tuples holding a target value whose worst-case
// probability exceeds 1/r. FailedPrecondition when no published tuple holds a
// target value, or when some group could not be audited.
absl::StatusOr<Rational> ProblematicProportion(const AnonymizedDataset& dataset,
                                               absl::Span<const BoundDistribution> knowledge,
                                               const Rational& r,
                                               const SensitiveTargets& targets,
                                               const VerifyOptions& options = {});

// The same share computed from an existing report on `table`.
absl::StatusOr<Rational> ProblematicProportion(const RobustnessReport& report,
                                               const RawTable& table,
                                               const SensitiveTargets& targets);

// Mean over target values x of the mean over attribute sets of the mean over
// groups of delta(L, x).
absl::StatusOr<Rational> AverageDelta(const AnonymizedDataset& dataset,
                                      absl::Span<const BoundDistribution> knowledge,
                                      const SensitiveTargets& targets);

struct MetricsReport {
  Rational avg_relative_error;
  int64_t skipped_queries = 0;
  Rational problematic_proportion;
  Rational average_delta;
  double runtime_seconds = 0;
  int64_t query_count = 0;
};

// Anatomy-like comparator: rows are shuffled and dealt round-robin into
// floor(n / l) groups (fewer if needed) so that every group has at least l
// members and holds each target value at most once. Surplus holders of a
// target value are suppressed. InvalidArgument for l < 2 or n < l.
absl::StatusOr<AnonymizedDataset> BaselineBucketize(std::shared_ptr<const RawTable> table,
                                                    int l, const SensitiveTargets& targets,
                                                    uint64_t seed);

}  // namespace robustanon

#endif  // ROBUSTANON_EVALUATION_H_
