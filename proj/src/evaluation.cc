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

#include "robustanon/evaluation.h"

#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace robustanon {

namespace {

// Portable draws: mt19937_64 output is specified, the std distributions are not.
size_t Draw(std::mt19937_64& rng, size_t n) { return static_cast<size_t>(rng() % n); }

template <typename T>
void Shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[Draw(rng, i)]);
}

// Per QI attribute of the table, the accepted codes of a query, or nullopt
// when the attribute is unconstrained. False when a predicate names an
// unknown attribute.
struct CompiledQuery {
  std::vector<std::optional<std::vector<char>>> accepted;
  std::vector<char> sensitive;
  bool valid = true;
};

CompiledQuery Compile(const RawTable& table, const QuerySpec& q) {
  CompiledQuery c;
  c.accepted.resize(table.qi_attributes().size());
  for (const auto& [attribute, values] : q.predicates) {
    absl::StatusOr<size_t> a = table.AttributeIndex(attribute);
    if (!a.ok()) {
      c.valid = false;
      return c;
    }
    const std::vector<std::string>& domain = table.qi_domain(*a);
    std::vector<char> ok(domain.size(), 0);
    for (size_t i = 0; i < domain.size(); ++i) ok[i] = values.count(domain[i]) > 0;
    c.accepted[*a] = std::move(ok);
  }
  c.sensitive.assign(table.sensitive_domain().size(), 0);
  for (size_t i = 0; i < table.sensitive_domain().size(); ++i) {
    c.sensitive[i] = q.sensitive_predicate.count(table.sensitive_domain()[i]) > 0;
  }
  return c;
}

bool QiMatches(const RawTable& table, const CompiledQuery& c, size_t row) {
  for (size_t a = 0; a < c.accepted.size(); ++a) {
    if (c.accepted[a] && !(*c.accepted[a])[table.qi_code(row, a)]) return false;
  }
  return true;
}

int64_t ExactCount(const RawTable& table, const CompiledQuery& c) {
  if (!c.valid) return 0;
  int64_t count = 0;
  for (size_t row = 0; row < table.size(); ++row) {
    count += c.sensitive[table.sensitive_code(row)] && QiMatches(table, c, row);
  }
  return count;
}

Rational EstimatedCount(const AnonymizedDataset& d, const CompiledQuery& c) {
  Rational total = 0;
  if (!c.valid) return total;
  const RawTable& table = d.source();
  for (const AGroup& g : d.groups()) {
    int64_t qi_match = 0, sensitive_match = 0;
    for (int64_t id : g.member_row_ids) {
      const size_t row = *table.IndexOf(id);
      qi_match += QiMatches(table, c, row);
      sensitive_match += c.sensitive[table.sensitive_code(row)];
    }
    if (qi_match > 0 && sensitive_match > 0) {
      total += MakeRational(qi_match * sensitive_match, static_cast<int64_t>(g.size()));
    }
  }
  return total;
}

}  // namespace

absl::StatusOr<std::vector<QuerySpec>> GenerateQueries(const RawTable& table, int qd,
                                                       double s, int64_t n,
                                                       uint64_t seed) {
  const int q = static_cast<int>(table.qi_attributes().size());
  if (qd < 1 || qd > q) {
    return absl::InvalidArgumentError(
        absl::StrCat("qd must be in [1, ", q, "], got ", qd));
  }
  if (n < 1) return absl::InvalidArgumentError("query count must be positive");
  if (!(s > 0 && s <= 1)) return absl::InvalidArgumentError("selectivity must be in (0, 1]");
  if (table.empty()) return absl::InvalidArgumentError("table is empty");
  std::mt19937_64 rng(seed);
  const double per_attribute = std::pow(s, 1.0 / qd);
  std::vector<QuerySpec> out;
  out.reserve(n);
  for (int64_t i = 0; i < n; ++i) {
    QuerySpec query;
    query.expected_selectivity = s;
    std::vector<size_t> attributes(q);
    std::iota(attributes.begin(), attributes.end(), 0);
    Shuffle(attributes, rng);
    for (int j = 0; j < qd; ++j) {
      const size_t a = attributes[j];
      std::vector<std::string> domain = table.qi_domain(a);
      const size_t take = std::max<size_t>(
          1, static_cast<size_t>(std::llround(per_attribute * domain.size())));
      Shuffle(domain, rng);
      query.predicates[table.qi_attributes()[a]] =
          std::set<std::string>(domain.begin(), domain.begin() + std::min(take, domain.size()));
    }
    const auto& values = table.sensitive_domain();
    query.sensitive_predicate = {values[Draw(rng, values.size())]};
    CompiledQuery c = Compile(table, query);
    int64_t matches = 0;
    for (size_t row = 0; row < table.size(); ++row) matches += QiMatches(table, c, row);
    query.realized_selectivity = static_cast<double>(matches) / table.size();
    out.push_back(std::move(query));
  }
  return out;
}

int64_t ExactCount(const RawTable& table, const QuerySpec& query) {
  return ExactCount(table, Compile(table, query));
}

Rational EstimatedCount(const AnonymizedDataset& dataset, const QuerySpec& query) {
  return EstimatedCount(dataset, Compile(dataset.source(), query));
}

absl::StatusOr<RelativeError> RelativeErrorRatio(const AnonymizedDataset& dataset,
                                                 absl::Span<const QuerySpec> queries,
                                                 ExecutionMode mode) {
  if (queries.empty()) return absl::InvalidArgumentError("no queries given");
  const int64_t count = static_cast<int64_t>(queries.size());
  std::vector<std::optional<Rational>> errors(queries.size());
#pragma omp parallel for schedule(dynamic) if (mode == ExecutionMode::kParallel)
  for (int64_t i = 0; i < count; ++i) {
    CompiledQuery c = Compile(dataset.source(), queries[i]);
    const int64_t exact = ExactCount(dataset.source(), c);
    if (exact == 0) continue;
    Rational diff = EstimatedCount(dataset, c) - exact;
    errors[i] = abs(diff) / exact;
  }
  RelativeError out;
  Rational sum = 0;
  for (const auto& e : errors) {
    if (!e) {
      ++out.skipped;
      continue;
    }
    sum += *e;
    ++out.evaluated;
  }
  if (out.evaluated == 0) {
    return absl::FailedPreconditionError("every query has an exact count of 0");
  }
  out.mean = sum / out.evaluated;
  return out;
}

absl::StatusOr<Rational> ProblematicProportion(const AnonymizedDataset& dataset,
                                               absl::Span<const BoundDistribution> knowledge,
                                               const Rational& r,
                                               const SensitiveTargets& targets,
                                               const VerifyOptions& options) {
  absl::StatusOr<RobustnessReport> report =
      VerifyRRobustness(dataset, knowledge, r, targets, options);
  if (!report.ok()) return report.status();
  return ProblematicProportion(*report, dataset.source(), targets);
}

absl::StatusOr<Rational> ProblematicProportion(const RobustnessReport& report,
                                               const RawTable& table,
                                               const SensitiveTargets& targets) {
  absl::StatusOr<std::vector<int32_t>> codes = ResolveProtectedCodes(table, targets);
  if (!codes.ok()) return codes.status();
  if (!report.group_errors.empty()) {
    return absl::FailedPreconditionError(
        absl::StrCat("group ", report.group_errors[0].gid,
                     " could not be audited: ", report.group_errors[0].status.message()));
  }
  int64_t sensitive = 0, problematic = 0;
  for (const TupleVerdict& v : report.per_tuple) {
    const int32_t code = table.sensitive_code(*table.IndexOf(v.row_id));
    if (!std::binary_search(codes->begin(), codes->end(), code)) continue;
    ++sensitive;
    problematic += v.problematic;
  }
  if (sensitive == 0) {
    return absl::FailedPreconditionError("no published tuple holds a target value");
  }
  return MakeRational(problematic, sensitive);
}

absl::StatusOr<Rational> AverageDelta(const AnonymizedDataset& dataset,
                                      absl::Span<const BoundDistribution> knowledge,
                                      const SensitiveTargets& targets) {
  if (knowledge.empty()) return absl::InvalidArgumentError("no attribute sets given");
  if (dataset.groups().empty()) return absl::InvalidArgumentError("dataset has no groups");
  absl::StatusOr<std::vector<int32_t>> codes =
      ResolveProtectedCodes(dataset.source(), targets);
  if (!codes.ok()) return codes.status();
  const RawTable& table = dataset.source();
  Rational over_values = 0;
  for (int32_t code : *codes) {
    Rational over_sets = 0;
    for (const BoundDistribution& k : knowledge) {
      Rational over_groups = 0;
      for (const AGroup& g : dataset.groups()) {
        absl::StatusOr<GroupProfile> p =
            ProfileGroup(table, g, k, table.sensitive_domain()[code]);
        if (!p.ok()) return p.status();
        over_groups += p->delta;
      }
      over_sets += over_groups / static_cast<int64_t>(dataset.groups().size());
    }
    over_values += over_sets / static_cast<int64_t>(knowledge.size());
  }
  return Rational(over_values / static_cast<int64_t>(codes->size()));
}

absl::StatusOr<AnonymizedDataset> BaselineBucketize(std::shared_ptr<const RawTable> table,
                                                    int l, const SensitiveTargets& targets,
                                                    uint64_t seed) {
  if (table == nullptr) return absl::InvalidArgumentError("null table");
  if (l < 2) return absl::InvalidArgumentError("l must be at least 2");
  const int64_t n = static_cast<int64_t>(table->size());
  if (n < l) return absl::InvalidArgumentError("table has fewer than l rows");
  absl::StatusOr<std::vector<int32_t>> codes = ResolveProtectedCodes(*table, targets);
  if (!codes.ok()) return codes.status();

  std::mt19937_64 rng(seed);
  std::vector<size_t> order(table->size());
  std::iota(order.begin(), order.end(), 0);
  Shuffle(order, rng);
  // Holders of each target value, in shuffled order; everything else.
  std::vector<std::vector<size_t>> holders(table->sensitive_domain().size());
  std::vector<size_t> others;
  for (size_t row : order) {
    const int32_t code = table->sensitive_code(row);
    if (std::binary_search(codes->begin(), codes->end(), code)) {
      holders[code].push_back(row);
    } else {
      others.push_back(row);
    }
  }
  int64_t k = n / l;
  int64_t placed = 0;
  for (; k >= 1; --k) {
    placed = static_cast<int64_t>(others.size());
    for (const auto& h : holders) placed += std::min<int64_t>(h.size(), k);
    if (placed >= k * l) break;
  }
  if (k < 1) return absl::InvalidArgumentError("no grouping meets the size bound");

  // A single cursor deals consecutive rows to consecutive groups, so the
  // holders of one value (at most k of them) land in distinct groups and
  // group sizes differ by at most one.
  std::vector<std::vector<int64_t>> members(k);
  std::vector<int64_t> suppressed;
  size_t cursor = 0;
  for (int32_t code : *codes) {
    for (size_t i = 0; i < holders[code].size(); ++i) {
      const int64_t id = table->row(holders[code][i]).row_id;
      if (static_cast<int64_t>(i) >= k) {
        suppressed.push_back(id);
        continue;
      }
      members[cursor++ % k].push_back(id);
    }
  }
  for (size_t row : others) members[cursor++ % k].push_back(table->row(row).row_id);

  std::vector<AGroup> groups;
  for (int64_t g = 0; g < k; ++g) {
    std::sort(members[g].begin(), members[g].end());
    absl::StatusOr<AGroup> group = MakeGroup(*table, g + 1, std::move(members[g]));
    if (!group.ok()) return group.status();
    groups.push_back(*std::move(group));
  }
  std::sort(suppressed.begin(), suppressed.end());
  return AnonymizedDataset::Create(std::move(table), std::move(groups), std::move(suppressed));
}

}  // namespace robustanon
