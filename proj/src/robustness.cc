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

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace robustanon {

absl::StatusOr<std::vector<int32_t>> ResolveProtectedCodes(
    const RawTable& table, const SensitiveTargets& targets) {
  std::vector<int32_t> codes;
  if (targets.all) {
    if (targets.as_set) {
      return absl::InvalidArgumentError(
          "the whole sensitive domain cannot be protected as one set");
    }
    for (size_t c = 0; c < table.sensitive_domain().size(); ++c) {
      codes.push_back(static_cast<int32_t>(c));
    }
    return codes;
  }
  if (targets.values.empty()) {
    return absl::InvalidArgumentError("no sensitive targets given");
  }
  for (const std::string& v : targets.values) {
    std::optional<int32_t> code = table.SensitiveCode(v);
    if (!code) {
      return absl::InvalidArgumentError(
          absl::StrCat("sensitive target '", v, "' does not occur in the table"));
    }
    codes.push_back(*code);
  }
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  return codes;
}

absl::StatusOr<std::vector<VerificationTarget>> ResolveVerificationTargets(
    const RawTable& table, const SensitiveTargets& targets) {
  absl::StatusOr<std::vector<int32_t>> codes =
      ResolveProtectedCodes(table, targets);
  if (!codes.ok()) return codes.status();
  std::vector<VerificationTarget> out;
  std::vector<std::string> names;
  for (int32_t c : *codes) {
    const std::string& name = table.sensitive_domain()[c];
    out.push_back({name, {c}});
    names.push_back(name);
  }
  if (targets.as_set && codes->size() > 1) {
    out.push_back({absl::StrCat("{", absl::StrJoin(names, ","), "}"), *codes});
  }
  return out;
}

absl::StatusOr<GroupProfile> ProfileGroup(const RawTable& table,
                                          const AGroup& group,
                                          const BoundDistribution& knowledge,
                                          absl::string_view value) {
  if (group.size() == 0) return absl::InvalidArgumentError("empty group");
  std::optional<int32_t> code = table.SensitiveCode(value);
  if (!code) {
    return absl::InvalidArgumentError(
        absl::StrCat("sensitive value '", value, "' is not in the domain"));
  }
  GroupProfile p;
  p.gid = group.gid;
  p.attribute_set = knowledge.attribute_set();
  p.value = std::string(value);
  p.n = group.size();
  for (int64_t id : group.member_row_ids) {
    std::optional<size_t> idx = table.IndexOf(id);
    if (!idx) {
      return absl::InvalidArgumentError(
          absl::StrCat("group ", group.gid, " references unknown row ", id));
    }
    int32_t cls = knowledge.class_of(*idx);
    if (cls == BoundDistribution::kNoClass) {
      return absl::NotFoundError(absl::StrCat(
          "row ", id, " has no signature entry for attribute set ",
          knowledge.attribute_set().ToString()));
    }
    p.f_per_tuple.push_back(knowledge.probability(cls, *code));
  }
  p.f_max = *std::max_element(p.f_per_tuple.begin(), p.f_per_tuple.end());
  p.delta = 0;
  for (const Rational& f : p.f_per_tuple) {
    p.deltas.push_back(p.f_max - f);
    p.delta = std::max(p.delta, p.deltas.back());
  }
  return p;
}

absl::StatusOr<Rational> DeltaMax(int64_t n, const Rational& r,
                                  const Rational& f_max) {
  if (n < 1) return absl::InvalidArgumentError("group size must be >= 1");
  if (r <= 1) return absl::InvalidArgumentError("r must exceed 1");
  if (f_max < 0 || f_max > 1) {
    return absl::InvalidArgumentError("f_max must lie in [0, 1]");
  }
  if (f_max == 1) {
    return absl::InvalidArgumentError(
        "delta_max is singular at f_max = 1; all members must share one "
        "distribution");
  }
  Rational nn(BigInt(static_cast<long>(n)));
  Rational result = (nn - r) * f_max /
                    (f_max * (r - 1) / (1 - f_max) + (nn - 1));
  return result;
}

bool BoundHolds(int64_t n, int64_t multiplicity, const Rational& r,
                const Rational& f_max, const Rational& delta) {
  if (multiplicity == 0 || sgn(f_max) == 0) return true;
  if (multiplicity > 1) return false;
  Rational nn(BigInt(static_cast<long>(n)));
  if (f_max == 1) return sgn(delta) == 0 && nn >= r;
  absl::StatusOr<Rational> bound = DeltaMax(n, r, f_max);
  return bound.ok() && delta <= *bound;
}

absl::StatusOr<bool> BoundCondition(const RawTable& table, const AGroup& group,
                                    const BoundDistribution& knowledge,
                                    const Rational& r, absl::string_view value) {
  if (r <= 1) return absl::InvalidArgumentError("r must exceed 1");
  absl::StatusOr<GroupProfile> p = ProfileGroup(table, group, knowledge, value);
  if (!p.ok()) return p.status();
  int64_t multiplicity = std::count(group.sensitive_multiset.begin(),
                                    group.sensitive_multiset.end(), value);
  return BoundHolds(p->n, multiplicity, r, p->f_max, p->delta);
}

absl::StatusOr<int64_t> ExpectedMinSize(const Rational& delta,
                                        const Rational& f_max,
                                        const Rational& r) {
  if (r <= 1) return absl::InvalidArgumentError("r must exceed 1");
  if (sgn(delta) < 0) return absl::InvalidArgumentError("delta must be >= 0");
  if (sgn(f_max) <= 0 || f_max >= 1) {
    return absl::InvalidArgumentError("f_max must lie in (0, 1)");
  }
  if (f_max <= delta) {
    return absl::FailedPreconditionError(absl::StrCat(
        "no group size satisfies the bound: delta ", FormatFraction(delta),
        " >= f_max ", FormatFraction(f_max)));
  }
  Rational rhs = (f_max * (r - 1) * delta / (1 - f_max) - delta + r * f_max) /
                 (f_max - delta);
  BigInt n = Ceil(rhs);
  if (!n.fits_slong_p()) {
    return absl::OutOfRangeError("expected minimum size overflows");
  }
  return std::max<int64_t>(1, n.get_si());
}

namespace {

struct GroupAudit {
  std::vector<TupleVerdict> verdicts;
  absl::Status status;
};

GroupAudit AuditGroup(const RawTable& table, const AGroup& group,
                      absl::Span<const BoundDistribution> knowledge,
                      const Rational& threshold,
                      absl::Span<const VerificationTarget> targets,
                      int64_t cap) {
  GroupAudit out;
  std::vector<size_t> members;
  for (int64_t id : group.member_row_ids) members.push_back(*table.IndexOf(id));

  struct Best {
    Rational p;
    const AttributeSet* attrs = nullptr;
  };
  // best[member][target]
  std::vector<std::vector<Best>> best(members.size(),
                                      std::vector<Best>(targets.size()));
  for (const BoundDistribution& k : knowledge) {
    absl::StatusOr<GroupLinkage> linkage =
        internal::LinkageByDp(table, members, k, cap, group.gid);
    if (!linkage.ok()) {
      out.status = linkage.status();
      return out;
    }
    for (size_t m = 0; m < members.size(); ++m) {
      for (size_t t = 0; t < targets.size(); ++t) {
        Rational p = linkage->SetProbability(m, targets[t].codes);
        Best& b = best[m][t];
        if (b.attrs == nullptr || p > b.p ||
            (p == b.p && k.attribute_set() < *b.attrs)) {
          b.p = std::move(p);
          b.attrs = &k.attribute_set();
        }
      }
    }
  }
  for (size_t m = 0; m < members.size(); ++m) {
    size_t worst = 0;
    for (size_t t = 1; t < targets.size(); ++t) {
      if (best[m][t].p > best[m][worst].p) worst = t;
    }
    const Best& b = best[m][worst];
    out.verdicts.push_back({group.member_row_ids[m], group.gid,
                            targets[worst].label, b.p, *b.attrs,
                            b.p > threshold});
  }
  return out;
}

}  // namespace

absl::StatusOr<RobustnessReport> VerifyRRobustness(
    const AnonymizedDataset& dataset,
    absl::Span<const BoundDistribution> knowledge, const Rational& r,
    const SensitiveTargets& targets, const VerifyOptions& options) {
  if (r <= 1) return absl::InvalidArgumentError("r must exceed 1");
  if (knowledge.empty()) {
    return absl::InvalidArgumentError("no background knowledge given");
  }
  const RawTable& table = dataset.source();
  absl::StatusOr<std::vector<VerificationTarget>> resolved =
      ResolveVerificationTargets(table, targets);
  if (!resolved.ok()) return resolved.status();
  const Rational threshold = 1 / r;
  const auto& groups = dataset.groups();
  std::vector<GroupAudit> audits(groups.size());
  const int64_t count = static_cast<int64_t>(groups.size());
#pragma omp parallel for schedule(dynamic) if (options.mode == ExecutionMode::kParallel)
  for (int64_t g = 0; g < count; ++g) {
    audits[g] = AuditGroup(table, groups[g], knowledge, threshold, *resolved,
                           options.world_cap);
  }
  RobustnessReport report;
  report.r = r;
  for (size_t g = 0; g < groups.size(); ++g) {
    if (!audits[g].status.ok()) {
      report.group_errors.push_back({groups[g].gid, audits[g].status});
      continue;
    }
    for (TupleVerdict& v : audits[g].verdicts) {
      report.violation_count += v.problematic;
      report.per_tuple.push_back(std::move(v));
    }
  }
  std::sort(report.per_tuple.begin(), report.per_tuple.end(),
            [](const TupleVerdict& a, const TupleVerdict& b) {
              return a.row_id < b.row_id;
            });
  return report;
}

}  // namespace robustanon
