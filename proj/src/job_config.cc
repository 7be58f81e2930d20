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

#include "robustanon/job_config.h"

#include <algorithm>
#include <filesystem>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "robustanon/csv.h"

namespace robustanon {

namespace {

std::vector<std::string> SplitList(absl::string_view value) {
  std::vector<std::string> out;
  for (absl::string_view part : absl::StrSplit(value, ',')) {
    part = absl::StripAsciiWhitespace(part);
    if (!part.empty()) out.emplace_back(part);
  }
  return out;
}

absl::Status Bad(int line, absl::string_view key, absl::string_view why) {
  return absl::InvalidArgumentError(absl::StrCat("config line ", line, ": ", key, ": ", why));
}

absl::StatusOr<bool> ParseBool(absl::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  return absl::InvalidArgumentError("expected true or false");
}

absl::StatusOr<BinSpec> ParseBins(absl::string_view v) {
  BinSpec spec;
  std::vector<std::string> parts = SplitList(v);
  if (parts.empty()) return absl::InvalidArgumentError("empty bin specification");
  std::vector<double> numbers;
  for (const std::string& p : parts) {
    double d;
    if (!absl::SimpleAtod(p, &d)) {
      return absl::InvalidArgumentError(absl::StrCat("not a number: ", p));
    }
    numbers.push_back(d);
  }
  if (numbers.size() == 1) {
    if (!(numbers[0] > 0)) return absl::InvalidArgumentError("bin width must be positive");
    spec.width = numbers[0];
    return spec;
  }
  if (!std::is_sorted(numbers.begin(), numbers.end()) ||
      std::adjacent_find(numbers.begin(), numbers.end()) != numbers.end()) {
    return absl::InvalidArgumentError("bin edges must increase strictly");
  }
  spec.edges = std::move(numbers);
  return spec;
}

}  // namespace

absl::StatusOr<JobConfig> ParseJobConfig(absl::string_view text, absl::string_view base_dir) {
  JobConfig job;
  std::set<std::string> seen;
  std::vector<std::string> numeric;
  bool as_set = false;
  int line_number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    if (size_t hash = line.find('#'); hash != absl::string_view::npos) line = line.substr(0, hash);
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == absl::string_view::npos) return Bad(line_number, line, "expected key = value");
    const std::string key(absl::StripAsciiWhitespace(line.substr(0, eq)));
    const absl::string_view value = absl::StripAsciiWhitespace(line.substr(eq + 1));
    if (!seen.insert(key).second) return Bad(line_number, key, "given twice");

    if (key == "input") {
      job.input_path = std::string(value);
    } else if (key == "id_column") {
      job.id_column = std::string(value);
    } else if (key == "qi_attributes") {
      job.qi_attributes = SplitList(value);
    } else if (key == "sensitive_attribute") {
      job.sensitive_attribute = std::string(value);
    } else if (key == "sensitive_targets") {
      if (value == "all") {
        job.targets = SensitiveTargets::All();
      } else {
        job.targets = SensitiveTargets{false, SplitList(value), false};
        if (job.targets.values.empty()) return Bad(line_number, key, "empty list");
      }
    } else if (key == "targets_as_set") {
      absl::StatusOr<bool> b = ParseBool(value);
      if (!b.ok()) return Bad(line_number, key, b.status().message());
      as_set = *b;
    } else if (key == "r") {
      absl::StatusOr<Rational> r = ParseRational(value);
      if (!r.ok()) return Bad(line_number, key, r.status().message());
      if (*r <= 1) return Bad(line_number, key, "must exceed 1");
      job.r = *r;
    } else if (key == "max_attrset_size") {
      if (!absl::SimpleAtoi(value, &job.max_attrset_size) || job.max_attrset_size < 1) {
        return Bad(line_number, key, "expected a positive integer");
      }
    } else if (key == "min_support") {
      if (!absl::SimpleAtoi(value, &job.min_support) || job.min_support < 1) {
        return Bad(line_number, key, "expected a positive integer");
      }
    } else if (key == "seed") {
      if (!absl::SimpleAtoi(value, &job.seed)) return Bad(line_number, key, "expected an integer");
    } else if (key == "world_cap") {
      if (!absl::SimpleAtoi(value, &job.world_cap) || job.world_cap < 1) {
        return Bad(line_number, key, "expected a positive integer");
      }
    } else if (key == "exact_guard") {
      absl::StatusOr<bool> b = ParseBool(value);
      if (!b.ok()) return Bad(line_number, key, b.status().message());
      job.exact_guard = *b;
    } else if (key == "numeric_attributes") {
      numeric = SplitList(value);
    } else if (key == "missing_markers") {
      job.missing_markers = SplitList(value);
    } else if (absl::StartsWith(key, "bins.") && key.size() > 5) {
      absl::StatusOr<BinSpec> bins = ParseBins(value);
      if (!bins.ok()) return Bad(line_number, key, bins.status().message());
      job.numeric_bins[key.substr(5)] = *std::move(bins);
    } else {
      return Bad(line_number, key, "unknown key");
    }
  }
  if (job.qi_attributes.empty()) {
    return absl::InvalidArgumentError("config: qi_attributes is required");
  }
  if (job.sensitive_attribute.empty()) {
    return absl::InvalidArgumentError("config: sensitive_attribute is required");
  }
  if (as_set) {
    if (job.targets.all) {
      return absl::InvalidArgumentError("config: targets_as_set needs an explicit target list");
    }
    job.targets.as_set = true;
  }
  for (const std::string& a : numeric) {
    job.numeric_bins.try_emplace(a, BinSpec{kDefaultBinWidth, {}});
  }
  for (const auto& [attribute, spec] : job.numeric_bins) {
    if (std::find(job.qi_attributes.begin(), job.qi_attributes.end(), attribute) ==
        job.qi_attributes.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("config: binned attribute ", attribute, " is not a QI attribute"));
    }
  }
  if (!job.input_path.empty() && !base_dir.empty() &&
      std::filesystem::path(job.input_path).is_relative()) {
    job.input_path = (std::filesystem::path(std::string(base_dir)) / job.input_path).string();
  }
  return job;
}

absl::StatusOr<JobConfig> LoadJobConfig(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<JobConfig> job =
      ParseJobConfig(*text, std::filesystem::path(path).parent_path().string());
  if (!job.ok()) {
    return absl::Status(job.status().code(), absl::StrCat(path, ": ", job.status().message()));
  }
  return job;
}

ArtConfig ToArtConfig(const JobConfig& job) {
  ArtConfig config;
  config.r = job.r;
  config.targets = job.targets;
  config.max_attrset_size = job.max_attrset_size;
  config.min_support = job.min_support;
  config.world_cap = job.world_cap;
  config.exact_guard = job.exact_guard;
  return config;
}

}  // namespace robustanon
