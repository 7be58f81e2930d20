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

#ifndef ROBUSTANON_IO_H_
#define ROBUSTANON_IO_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "absl/types/span.h"
#include "robustanon/anonymized.h"
#include "robustanon/art.h"
#include "robustanon/csv.h"
#include "robustanon/distribution.h"
#include "robustanon/evaluation.h"
#include "robustanon/job_config.h"
#include "robustanon/robustness.h"
#include "robustanon/table.h"

namespace robustanon {

struct IngestResult {
  RawTable table;
  int64_t read_rows = 0;
  // Rows with a missing value in a configured attribute.
  int64_t dropped_rows = 0;
};

// Label of `value` under `spec`, e.g. "30-39", "<18", ">=65". Integral
// bounds print without a fraction.
std::string BinLabel(double value, const BinSpec& spec);

// Builds the table from the configured attributes of a parsed CSV. Rows with
// an empty or missing-marker field in a configured column are dropped and
// counted; binned columns must hold numbers. NotFound names a configured
// attribute absent from the header.
absl::StatusOr<IngestResult> IngestCsv(const CsvDocument& doc, const JobConfig& job);
absl::StatusOr<IngestResult> IngestCsvFile(const std::string& path, const JobConfig& job);

struct PublishedFiles {
  std::string qi_csv;    // row_id, QI attributes..., GID
  std::string sens_csv;  // GID, sensitive attribute
};

PublishedFiles FormatPublished(const AnonymizedDataset& dataset);

// Writes <prefix>.qi.csv and <prefix>.sens.csv.
absl::Status WritePublished(const AnonymizedDataset& dataset, const std::string& prefix);

// Rebuilds the dataset from the two views and the original table. Original
// rows absent from the QI file are treated as suppressed. InvalidArgument
// when a row's QI values differ from the original, or the sensitive view of
// a group does not match the original values of its members.
absl::StatusOr<AnonymizedDataset> ParsePublished(std::shared_ptr<const RawTable> original,
                                                 const CsvDocument& qi,
                                                 const CsvDocument& sens);
absl::StatusOr<AnonymizedDataset> ReadPublished(std::shared_ptr<const RawTable> original,
                                                const std::string& prefix);

// Versioned, tab-separated line records. Fields are key=value; values escape
// '\\', tab and line breaks as \\\\, \\t, \\n.
// `problematic` is omitted when undefined (no published target holder).
std::string FormatAuditReport(const RobustnessReport& report,
                              const std::optional<Rational>& problematic);
std::string FormatAnonymizeReport(const ArtResult& result, int64_t dropped_rows);
std::string FormatMetricsReport(const MetricsReport& metrics, bool include_runtime);
std::string FormatDistributions(absl::Span<const BoundDistribution> knowledge);

}  // namespace robustanon

#endif  // ROBUSTANON_IO_H_
