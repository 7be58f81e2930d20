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

#ifndef ROBUSTANON_CSV_H_
#define ROBUSTANON_CSV_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "absl/types/span.h"

namespace robustanon {

// RFC 4180 text: comma-separated, fields optionally double-quoted with ""
// as an escaped quote, quoted fields may span lines. CRLF and LF line ends
// are both accepted. Unquoted fields are trimmed of surrounding spaces.
struct CsvDocument {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> records;
};

// InvalidArgument on an empty document, an unterminated quote, or a record
// whose field count differs from the header's. Blank lines are skipped.
absl::StatusOr<CsvDocument> ParseCsv(absl::string_view text);

// NotFound / PermissionDenied style errors for unreadable files.
absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, absl::string_view contents);

absl::StatusOr<CsvDocument> ReadCsvFile(const std::string& path);

// Quotes a field when it holds a comma, quote, line break or outer spaces.
std::string CsvEscape(absl::string_view field);

// Escaped fields joined by commas, terminated by "\n".
std::string FormatCsvRecord(absl::Span<const std::string> fields);

}  // namespace robustanon

#endif  // ROBUSTANON_CSV_H_
