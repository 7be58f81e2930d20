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

#include "robustanon/anonymized.h"

#include <algorithm>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace robustanon {

absl::StatusOr<AGroup> MakeGroup(const RawTable& table, int64_t gid,
                                 std::vector<int64_t> row_ids) {
  if (row_ids.empty()) {
    return absl::InvalidArgumentError(absl::StrCat("group ", gid, " is empty"));
  }
  std::sort(row_ids.begin(), row_ids.end());
  if (std::adjacent_find(row_ids.begin(), row_ids.end()) != row_ids.end()) {
    return absl::InvalidArgumentError(
        absl::StrCat("group ", gid, " lists a row twice"));
  }
  AGroup g;
  g.gid = gid;
  g.sensitive_multiset.reserve(row_ids.size());
  for (int64_t id : row_ids) {
    std::optional<size_t> index = table.IndexOf(id);
    if (!index) {
      return absl::NotFoundError(absl::StrCat("unknown row id ", id));
    }
    g.sensitive_multiset.push_back(table.row(*index).sensitive_value);
  }
  std::sort(g.sensitive_multiset.begin(), g.sensitive_multiset.end());
  g.member_row_ids = std::move(row_ids);
  return g;
}

absl::StatusOr<AnonymizedDataset> AnonymizedDataset::Create(
    std::shared_ptr<const RawTable> source, std::vector<AGroup> groups,
    std::vector<int64_t> suppressed_row_ids) {
  if (source == nullptr) return absl::InvalidArgumentError("null source table");
  const RawTable& table = *source;
  std::sort(groups.begin(), groups.end(),
            [](const AGroup& a, const AGroup& b) { return a.gid < b.gid; });
  std::sort(suppressed_row_ids.begin(), suppressed_row_ids.end());

  AnonymizedDataset d;
  d.group_of_row_.assign(table.size(), -2);
  for (size_t gi = 0; gi < groups.size(); ++gi) {
    AGroup& g = groups[gi];
    if (gi > 0 && groups[gi - 1].gid == g.gid) {
      return absl::InvalidArgumentError(absl::StrCat("duplicate gid ", g.gid));
    }
    if (g.member_row_ids.empty()) {
      return absl::InvalidArgumentError(absl::StrCat("group ", g.gid, " is empty"));
    }
    std::sort(g.member_row_ids.begin(), g.member_row_ids.end());
    std::vector<std::string> values;
    for (int64_t id : g.member_row_ids) {
      std::optional<size_t> index = table.IndexOf(id);
      if (!index) return absl::NotFoundError(absl::StrCat("unknown row id ", id));
      if (d.group_of_row_[*index] != -2) {
        return absl::InvalidArgumentError(
            absl::StrCat("row ", id, " appears in more than one group"));
      }
      d.group_of_row_[*index] = static_cast<int64_t>(gi);
      values.push_back(table.row(*index).sensitive_value);
    }
    std::sort(values.begin(), values.end());
    std::vector<std::string> given = g.sensitive_multiset;
    std::sort(given.begin(), given.end());
    if (!given.empty() && given != values) {
      return absl::InvalidArgumentError(absl::StrCat(
          "sensitive multiset of group ", g.gid, " does not match its members"));
    }
    g.sensitive_multiset = std::move(values);
  }
  for (int64_t id : suppressed_row_ids) {
    std::optional<size_t> index = table.IndexOf(id);
    if (!index) return absl::NotFoundError(absl::StrCat("unknown row id ", id));
    if (d.group_of_row_[*index] != -2) {
      return absl::InvalidArgumentError(
          absl::StrCat("suppressed row ", id, " is also grouped or repeated"));
    }
    d.group_of_row_[*index] = -1;
  }
  for (size_t r = 0; r < table.size(); ++r) {
    if (d.group_of_row_[r] == -2) {
      return absl::InvalidArgumentError(absl::StrCat(
          "row ", table.row(r).row_id, " is neither grouped nor suppressed"));
    }
  }
  d.source_ = std::move(source);
  d.groups_ = std::move(groups);
  d.suppressed_ = std::move(suppressed_row_ids);
  return d;
}

int64_t AnonymizedDataset::GroupIndexOf(int64_t row_id) const {
  std::optional<size_t> index = source_->IndexOf(row_id);
  if (!index) return -1;
  return group_of_row_[*index];
}

std::pair<QITableView, SensitiveTableView> ProjectViews(const AnonymizedDataset& d) {
  const RawTable& table = d.source();
  QITableView qi;
  qi.qi_attributes = table.qi_attributes();
  std::vector<size_t> order(table.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return table.row(a).row_id < table.row(b).row_id;
  });
  for (size_t r : order) {
    int64_t gi = d.GroupIndexOf(table.row(r).row_id);
    if (gi < 0) continue;
    qi.rows.push_back({table.row(r).row_id, table.row(r).qi_values,
                       d.groups()[gi].gid});
  }
  SensitiveTableView sens;
  sens.sensitive_attribute = table.sensitive_attribute();
  for (const AGroup& g : d.groups()) {
    for (const std::string& v : g.sensitive_multiset) sens.rows.push_back({g.gid, v});
  }
  return {std::move(qi), std::move(sens)};
}

}  // namespace robustanon
