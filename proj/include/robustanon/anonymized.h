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

#ifndef ROBUSTANON_ANONYMIZED_H_
#define ROBUSTANON_ANONYMIZED_H_

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "robustanon/table.h"

namespace robustanon {

// An anonymized group. Members and the sensitive multiset are both kept in
// ascending order; the multiset is exactly the members' sensitive values.
struct AGroup {
  int64_t gid = 0;
  std::vector<int64_t> member_row_ids;
  std::vector<std::string> sensitive_multiset;

  size_t size() const { return member_row_ids.size(); }
};

// Builds a group from row ids of `table`; errors on unknown or repeated ids.
absl::StatusOr<AGroup> MakeGroup(const RawTable& table, int64_t gid,
                                 std::vector<int64_t> row_ids);

// A partition of the source table into groups plus suppressed rows.
class AnonymizedDataset {
 public:
  // Checks that groups and suppressed rows partition the source exactly and
  // that gids and multisets are consistent. Groups are stored by ascending gid.
  static absl::StatusOr<AnonymizedDataset> Create(
      std::shared_ptr<const RawTable> source, std::vector<AGroup> groups,
      std::vector<int64_t> suppressed_row_ids);

  const RawTable& source() const { return *source_; }
  const std::shared_ptr<const RawTable>& source_ptr() const { return source_; }
  const std::vector<AGroup>& groups() const { return groups_; }
  const std::vector<int64_t>& suppressed_row_ids() const { return suppressed_; }

  // Index into groups() of the group holding `row_id`; -1 if suppressed.
  int64_t GroupIndexOf(int64_t row_id) const;

 private:
  std::shared_ptr<const RawTable> source_;
  std::vector<AGroup> groups_;
  std::vector<int64_t> suppressed_;
  std::vector<int64_t> group_of_row_;  // by table row index
};

// The published QI table: each non-suppressed row's QI values and its GID,
// in ascending row-id order.
struct QITableView {
  struct Row {
    int64_t row_id = 0;
    std::vector<std::string> qi_values;
    int64_t gid = 0;
  };
  std::vector<std::string> qi_attributes;
  std::vector<Row> rows;
};

// The published sensitive table: (GID, value) pairs by ascending GID, values
// sorted within a group so positions carry no linkage.
struct SensitiveTableView {
  struct Row {
    int64_t gid = 0;
    std::string value;
  };
  std::string sensitive_attribute;
  std::vector<Row> rows;
};

std::pair<QITableView, SensitiveTableView> ProjectViews(const AnonymizedDataset& d);

}  // namespace robustanon

#endif  // ROBUSTANON_ANONYMIZED_H_
