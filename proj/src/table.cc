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

#include "robustanon/table.h"

#include <algorithm>
#include <set>
#include <utility>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace robustanon {

namespace {

// Sorted distinct values and the code of each input value.
std::pair<std::vector<std::string>, std::vector<int32_t>> Encode(
    const std::vector<const std::string*>& column) {
  std::vector<std::string> domain;
  domain.reserve(column.size());
  for (const std::string* v : column) domain.push_back(*v);
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  absl::flat_hash_map<absl::string_view, int32_t> code_of;
  for (size_t i = 0; i < domain.size(); ++i) {
    code_of[domain[i]] = static_cast<int32_t>(i);
  }
  std::vector<int32_t> codes;
  codes.reserve(column.size());
  for (const std::string* v : column) codes.push_back(code_of.at(*v));
  return {std::move(domain), std::move(codes)};
}

}  // namespace

absl::StatusOr<RawTable> RawTable::Create(std::vector<std::string> qi_attributes,
                                          std::string sensitive_attribute,
                                          std::vector<Row> rows) {
  if (qi_attributes.empty()) {
    return absl::InvalidArgumentError("at least one QI attribute is required");
  }
  absl::flat_hash_set<std::string> names;
  for (const std::string& a : qi_attributes) {
    if (a.empty()) return absl::InvalidArgumentError("empty attribute name");
    if (!names.insert(a).second) {
      return absl::InvalidArgumentError(absl::StrCat("duplicate attribute: ", a));
    }
  }
  if (names.contains(sensitive_attribute) || sensitive_attribute.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("invalid sensitive attribute: '", sensitive_attribute, "'"));
  }

  RawTable table;
  table.index_by_id_.reserve(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    if (row.qi_values.size() != qi_attributes.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "row ", row.row_id, " has ", row.qi_values.size(),
          " QI values, expected ", qi_attributes.size()));
    }
    for (size_t a = 0; a < row.qi_values.size(); ++a) {
      if (row.qi_values[a].empty()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "row ", row.row_id, " is missing a value for ", qi_attributes[a]));
      }
    }
    if (row.sensitive_value.empty()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "row ", row.row_id, " is missing its sensitive value"));
    }
    if (!table.index_by_id_.emplace(row.row_id, i).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate row id: ", row.row_id));
    }
  }

  const size_t q = qi_attributes.size();
  table.qi_codes_.resize(q);
  table.qi_domains_.resize(q);
  for (size_t a = 0; a < q; ++a) {
    std::vector<const std::string*> column;
    column.reserve(rows.size());
    for (const Row& row : rows) column.push_back(&row.qi_values[a]);
    auto [domain, codes] = Encode(column);
    table.qi_domains_[a] = std::move(domain);
    table.qi_codes_[a] = std::move(codes);
  }
  {
    std::vector<const std::string*> column;
    column.reserve(rows.size());
    for (const Row& row : rows) column.push_back(&row.sensitive_value);
    auto [domain, codes] = Encode(column);
    table.sensitive_domain_ = std::move(domain);
    table.sensitive_codes_ = std::move(codes);
  }
  table.qi_attributes_ = std::move(qi_attributes);
  table.sensitive_attribute_ = std::move(sensitive_attribute);
  table.rows_ = std::move(rows);
  return table;
}

std::optional<size_t> RawTable::IndexOf(int64_t row_id) const {
  auto it = index_by_id_.find(row_id);
  if (it == index_by_id_.end()) return std::nullopt;
  return it->second;
}

absl::StatusOr<size_t> RawTable::AttributeIndex(absl::string_view name) const {
  for (size_t i = 0; i < qi_attributes_.size(); ++i) {
    if (qi_attributes_[i] == name) return i;
  }
  return absl::NotFoundError(absl::StrCat("unknown QI attribute: ", name));
}

std::optional<int32_t> RawTable::SensitiveCode(absl::string_view value) const {
  auto it = std::lower_bound(sensitive_domain_.begin(), sensitive_domain_.end(),
                             value);
  if (it == sensitive_domain_.end() || *it != value) return std::nullopt;
  return static_cast<int32_t>(it - sensitive_domain_.begin());
}

absl::StatusOr<AttributeSet> AttributeSet::Create(
    absl::Span<const std::string> qi_attributes,
    std::vector<std::string> names) {
  if (names.empty()) return absl::InvalidArgumentError("empty attribute set");
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
    return absl::InvalidArgumentError("attribute set has duplicate names");
  }
  AttributeSet set;
  for (const std::string& n : names) {
    auto it = std::find(qi_attributes.begin(), qi_attributes.end(), n);
    if (it == qi_attributes.end()) {
      return absl::NotFoundError(absl::StrCat("unknown QI attribute: ", n));
    }
    set.indices_.push_back(static_cast<size_t>(it - qi_attributes.begin()));
  }
  set.names_ = std::move(names);
  return set;
}

std::string AttributeSet::ToString() const { return absl::StrJoin(names_, "|"); }

std::string Signature::ToString() const {
  return absl::StrJoin(pairs, ";", absl::PairFormatter("="));
}

absl::StatusOr<bool> Matches(const RawTable& table, const Row& row,
                             const Signature& signature) {
  for (const auto& [attribute, value] : signature.pairs) {
    absl::StatusOr<size_t> index = table.AttributeIndex(attribute);
    if (!index.ok()) return index.status();
    if (*index >= row.qi_values.size()) {
      return absl::InvalidArgumentError("row does not follow the table schema");
    }
    if (row.qi_values[*index] != value) return false;
  }
  return true;
}

Signature SignatureOf(const RawTable& table, size_t row_index,
                      const AttributeSet& attributes) {
  Signature s;
  const Row& row = table.row(row_index);
  for (size_t i = 0; i < attributes.size(); ++i) {
    s.pairs.emplace(attributes.names()[i], row.qi_values[attributes.indices()[i]]);
  }
  return s;
}

}  // namespace robustanon
