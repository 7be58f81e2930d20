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

#ifndef ROBUSTANON_TABLE_H_
#define ROBUSTANON_TABLE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "absl/types/span.h"

namespace robustanon {

// One individual's record. qi_values is aligned with the owning table's
// qi_attributes().
struct Row {
  int64_t row_id = 0;
  std::vector<std::string> qi_values;
  std::string sensitive_value;
};

// The original microdata: categorical QI columns plus one sensitive column.
// Values are dictionary-encoded on construction; codes follow ascending
// lexicographic order of the values, so comparing codes compares values.
class RawTable {
 public:
  // Fails on duplicate row ids, empty values, ragged rows, duplicate
  // attribute names, or an empty QI attribute list.
  static absl::StatusOr<RawTable> Create(std::vector<std::string> qi_attributes,
                                         std::string sensitive_attribute,
                                         std::vector<Row> rows);

  const std::vector<std::string>& qi_attributes() const { return qi_attributes_; }
  const std::string& sensitive_attribute() const { return sensitive_attribute_; }

  size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  const Row& row(size_t index) const { return rows_[index]; }
  const std::vector<Row>& rows() const { return rows_; }

  std::optional<size_t> IndexOf(int64_t row_id) const;
  absl::StatusOr<size_t> AttributeIndex(absl::string_view name) const;

  int32_t qi_code(size_t row_index, size_t attribute) const {
    return qi_codes_[attribute][row_index];
  }
  int32_t sensitive_code(size_t row_index) const {
    return sensitive_codes_[row_index];
  }
  const std::vector<std::string>& qi_domain(size_t attribute) const {
    return qi_domains_[attribute];
  }
  const std::vector<std::string>& sensitive_domain() const {
    return sensitive_domain_;
  }
  std::optional<int32_t> SensitiveCode(absl::string_view value) const;

 private:
  RawTable() = default;

  std::vector<std::string> qi_attributes_;
  std::string sensitive_attribute_;
  std::vector<Row> rows_;
  absl::flat_hash_map<int64_t, size_t> index_by_id_;
  std::vector<std::vector<int32_t>> qi_codes_;  // [attribute][row]
  std::vector<std::vector<std::string>> qi_domains_;
  std::vector<int32_t> sensitive_codes_;
  std::vector<std::string> sensitive_domain_;
};

// A non-empty subset of the QI attributes. Names are kept sorted, which is
// also the order in which signature values are listed.
class AttributeSet {
 public:
  static absl::StatusOr<AttributeSet> Create(
      absl::Span<const std::string> qi_attributes,
      std::vector<std::string> names);

  const std::vector<std::string>& names() const { return names_; }
  // Positions in the schema's qi_attributes, aligned with names().
  const std::vector<size_t>& indices() const { return indices_; }
  size_t size() const { return names_.size(); }

  // "A|B|C"
  std::string ToString() const;

  friend bool operator==(const AttributeSet& a, const AttributeSet& b) {
    return a.names_ == b.names_;
  }
  friend bool operator<(const AttributeSet& a, const AttributeSet& b) {
    return a.names_ < b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<size_t> indices_;
};

// Attribute-value pairs a tuple may match.
struct Signature {
  std::map<std::string, std::string> pairs;

  // "A=v;B=w" in attribute order.
  std::string ToString() const;
};

// True iff every pair in `signature` equals the row's value. Unknown
// attribute names are a schema error.
absl::StatusOr<bool> Matches(const RawTable& table, const Row& row,
                             const Signature& signature);

// The signature of table row `row_index` under `attributes`.
Signature SignatureOf(const RawTable& table, size_t row_index,
                      const AttributeSet& attributes);

}  // namespace robustanon

#endif  // ROBUSTANON_TABLE_H_
