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

#include "robustanon/csv.h"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"

namespace robustanon {

namespace {

// Splits the text into records; line numbers are those where a record starts.
absl::Status Tokenize(absl::string_view text,
                      std::vector<std::pair<int64_t, std::vector<std::string>>>& out) {
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;      // inside quotes
  bool was_quoted = false;  // the current field was quoted
  bool record_empty = true;  // no comma or quote seen yet
  int64_t line = 1, record_line = 1;
  auto end_field = [&] {
    record.push_back(was_quoted ? std::move(field)
                                : std::string(absl::StripAsciiWhitespace(field)));
    field.clear();
    was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    if (!(record.size() == 1 && record[0].empty() && record_empty)) {
      out.emplace_back(record_line, std::move(record));
    }
    record.clear();
    record_empty = true;
    record_line = line;
  };
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!absl::StripAsciiWhitespace(field).empty()) {
          return absl::InvalidArgumentError(
              absl::StrCat("line ", line, ": quote inside an unquoted field"));
        }
        field.clear();
        quoted = was_quoted = true;
        record_empty = false;
        break;
      case ',':
        end_field();
        record_empty = false;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        [[fallthrough]];
      case '\n':
        ++line;
        end_record();
        break;
      default:
        if (was_quoted) {
          if (c == ' ' || c == '\t') break;
          return absl::InvalidArgumentError(
              absl::StrCat("line ", line, ": text after a closing quote"));
        }
        field.push_back(c);
    }
  }
  if (quoted) {
    return absl::InvalidArgumentError(
        absl::StrCat("line ", record_line, ": unterminated quoted field"));
  }
  if (!field.empty() || !record.empty() || was_quoted) end_record();
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<CsvDocument> ParseCsv(absl::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<std::pair<int64_t, std::vector<std::string>>> records;
  if (absl::Status s = Tokenize(text, records); !s.ok()) return s;
  if (records.empty()) return absl::InvalidArgumentError("CSV has no header row");
  CsvDocument doc;
  doc.header = std::move(records[0].second);
  for (size_t i = 1; i < records.size(); ++i) {
    auto& [line, fields] = records[i];
    if (fields.size() != doc.header.size()) {
      return absl::InvalidArgumentError(absl::StrCat("line ", line, ": expected ",
                                                     doc.header.size(), " fields, found ",
                                                     fields.size()));
    }
    doc.records.push_back(std::move(fields));
  }
  return doc;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open ", path, ": ", std::strerror(errno)));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return absl::DataLossError(absl::StrCat("cannot read ", path));
  return buffer.str();
}

absl::Status WriteFile(const std::string& path, absl::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot write ", path, ": ", std::strerror(errno)));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("cannot write ", path));
  return absl::OkStatus();
}

absl::StatusOr<CsvDocument> ReadCsvFile(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<CsvDocument> doc = ParseCsv(*text);
  if (!doc.ok()) {
    return absl::Status(doc.status().code(), absl::StrCat(path, ": ", doc.status().message()));
  }
  return doc;
}

std::string CsvEscape(absl::string_view field) {
  const bool needs_quotes =
      field.find_first_of(",\"\r\n") != absl::string_view::npos ||
      (!field.empty() && (absl::ascii_isspace(field.front()) || absl::ascii_isspace(field.back())));
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string FormatCsvRecord(absl::Span<const std::string> fields) {
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += CsvEscape(fields[i]);
  }
  out.push_back('\n');
  return out;
}

}  // namespace robustanon
