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

#ifndef ROBUSTANON_JOB_CONFIG_H_
#define ROBUSTANON_JOB_CONFIG_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "robustanon/art.h"
#include "robustanon/possible_worlds.h"
#include "robustanon/rational.h"
#include "robustanon/robustness.h"

namespace robustanon {

// Numeric binning of one attribute: fixed-width ranges ("30-39") or explicit
// edges e0 < e1 < ... giving "<e0", "e0-(e1 - 1)", ..., ">=ek".
struct BinSpec {
  double width = 0;  // > 0 for fixed-width bins
  std::vector<double> edges;
};

inline constexpr double kDefaultBinWidth = 10;

struct JobConfig {
  std::string input_path;
  // Integer row-id column. When empty, a row's id is its 1-based record
  // number in the input.
  std::string id_column;
  std::vector<std::string> qi_attributes;
  std::string sensitive_attribute;
  SensitiveTargets targets = SensitiveTargets::All();
  Rational r = 2;
  int max_attrset_size = 1;
  int64_t min_support = 1;
  uint64_t seed = 1;
  int64_t world_cap = kDefaultWorldCap;
  bool exact_guard = true;
  std::map<std::string, BinSpec> numeric_bins;
  // Field values treated as missing, besides the empty string.
  std::vector<std::string> missing_markers = {"?"};
};

// Line-oriented "key = value" text; '#' starts a comment. Keys:
//   input, id_column, qi_attributes (comma list), sensitive_attribute,
//   sensitive_targets ("all" or a comma list), targets_as_set (true/false),
//   r, max_attrset_size, min_support, seed, world_cap, exact_guard,
//   numeric_attributes (comma list binned at the default width),
//   bins.<attribute> (a width, or a comma list of edges),
//   missing_markers (comma list).
// A relative input path is resolved against `base_dir`. InvalidArgument on
// unknown keys, malformed values, r <= 1 or a missing required key
// (qi_attributes, sensitive_attribute).
absl::StatusOr<JobConfig> ParseJobConfig(absl::string_view text,
                                         absl::string_view base_dir = "");

absl::StatusOr<JobConfig> LoadJobConfig(const std::string& path);

ArtConfig ToArtConfig(const JobConfig& job);

}  // namespace robustanon

#endif  // ROBUSTANON_JOB_CONFIG_H_
