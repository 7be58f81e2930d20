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

#include "robustanon/synthetic.h"

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace robustanon {

namespace {

constexpr int kCardinalities[] = {6, 2, 5, 4};

// mt19937_64 output is fully specified, so tables are identical everywhere.
int Draw(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % n); }

double Unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

}  // namespace

absl::StatusOr<RawTable> GenerateSyntheticTable(const SyntheticOptions& options) {
  if (options.rows < 1) return absl::InvalidArgumentError("rows must be positive");
  if (options.qi_attributes < 1) {
    return absl::InvalidArgumentError("at least one QI attribute is required");
  }
  if (options.sensitive_values < 3) {
    return absl::InvalidArgumentError("at least three sensitive values are required");
  }
  std::mt19937_64 rng(options.seed);
  const int q = options.qi_attributes;
  const int m = options.sensitive_values;
  std::vector<std::string> names;
  std::vector<int> cards;
  for (int a = 0; a < q; ++a) {
    names.push_back(absl::StrCat("Q", a + 1));
    cards.push_back(kCardinalities[a % 4]);
  }
  std::vector<Row> rows;
  rows.reserve(options.rows);
  std::vector<int> qi(q);
  std::vector<double> weight(m);
  for (int64_t i = 0; i < options.rows; ++i) {
    Row row;
    row.row_id = i + 1;
    for (int a = 0; a < q; ++a) {
      qi[a] = Draw(rng, cards[a]);
      row.qi_values.push_back(absl::StrCat(names[a], "_", qi[a]));
    }
    // s0 follows Q1 and s1 follows the last attribute; the common values
    // rotate with the remaining attributes.
    double total = 0;
    weight[0] = 2 + 1.0 * qi[0];
    weight[1] = 2 + 1.5 * qi[q - 1];
    int shift = 0;
    for (int a = 1; a < q; ++a) shift += qi[a];
    for (int v = 2; v < m; ++v) weight[v] = 10 + 5 * ((v + shift) % 8);
    for (double w : weight) total += w;
    double u = Unit(rng) * total;
    int value = m - 1;
    for (int v = 0; v < m; ++v) {
      if (u < weight[v]) {
        value = v;
        break;
      }
      u -= weight[v];
    }
    row.sensitive_value = absl::StrCat("s", value);
    rows.push_back(std::move(row));
  }
  return RawTable::Create(std::move(names), "S", std::move(rows));
}

SensitiveTargets SyntheticTargets() { return {false, {"s0", "s1"}, true}; }

}  // namespace robustanon
