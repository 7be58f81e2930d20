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

#include "robustanon/io.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace robustanon {

namespace {

std::string Number(double v) {
  if (std::floor(v) == v && std::fabs(v) < 1e15) {
    return absl::StrCat(static_cast<int64_t>(v));
  }
  return absl::StrFormat("%g", v);
}

bool Integral(double v) { return std::floor(v) == v && std::fabs(v) < 1e15; }

std::string Range(double lo, double hi) {
  if (Integral(lo) && Integral(hi)) return absl::StrCat(Number(lo), "-", Number(hi - 1));
  return absl::StrCat("[", Number(lo), ",", Number(hi), ")");
}

std::string Escape(absl::string_view v) {
  std::string out;
  for (char c : v) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// "key=value" fields joined by tabs after the record kind.
class Record {
 public:
  explicit Record(absl::string_view kind) : line_(kind) {}
  Record& Add(absl::string_view key, absl::string_view value) {
    absl::StrAppend(&line_, "\t", key, "=", Escape(value));
    return *this;
  }
  Record& Add(absl::string_view key, int64_t value) { return Add(key, absl::StrCat(value)); }
  Record& AddFraction(absl::string_view key, const Rational& q) {
    Add(key, FormatFraction(q));
    return Add(absl::StrCat(key, "_decimal"), FormatDecimal(q));
  }
  std::string Line() const { return line_ + "\n"; }

 private:
  std::string line_;
};

absl::StatusOr<size_t> Column(const CsvDocument& doc, absl::string_view name,
                              absl::string_view file) {
  auto it = std::find(doc.header.begin(), doc.header.end(), name);
  if (it == doc.header.end()) {
    return absl::NotFoundError(absl::StrCat(file, " has no column named '", name, "'"));
  }
  return static_cast<size_t>(it - doc.header.begin());
}

absl::StatusOr<int64_t> ParseId(absl::string_view v, absl::string_view what) {
  int64_t id;
  if (!absl::SimpleAtoi(v, &id)) {
    return absl::InvalidArgumentError(absl::StrCat(what, " is not an integer: '", v, "'"));
  }
  return id;
}

}  // namespace

std::string BinLabel(double value, const BinSpec& spec) {
  if (spec.width > 0) {
    const double lo = std::floor(value / spec.width) * spec.width;
    return Range(lo, lo + spec.width);
  }
  if (value < spec.edges.front()) return absl::StrCat("<", Number(spec.edges.front()));
  if (value >= spec.edges.back()) return absl::StrCat(">=", Number(spec.edges.back()));
  auto hi = std::upper_bound(spec.edges.begin(), spec.edges.end(), value);
  return Range(*(hi - 1), *hi);
}

absl::StatusOr<IngestResult> IngestCsv(const CsvDocument& doc, const JobConfig& job) {
  std::vector<size_t> qi_columns;
  for (const std::string& a : job.qi_attributes) {
    absl::StatusOr<size_t> c = Column(doc, a, "input");
    if (!c.ok()) return c.status();
    qi_columns.push_back(*c);
  }
  absl::StatusOr<size_t> sensitive_column = Column(doc, job.sensitive_attribute, "input");
  if (!sensitive_column.ok()) return sensitive_column.status();
  std::optional<size_t> id_column;
  if (!job.id_column.empty()) {
    absl::StatusOr<size_t> c = Column(doc, job.id_column, "input");
    if (!c.ok()) return c.status();
    id_column = *c;
  }
  auto missing = [&](const std::string& v) {
    return v.empty() ||
           std::find(job.missing_markers.begin(), job.missing_markers.end(), v) !=
               job.missing_markers.end();
  };

  std::vector<Row> rows;
  int64_t dropped = 0;
  for (size_t i = 0; i < doc.records.size(); ++i) {
    const std::vector<std::string>& rec = doc.records[i];
    Row row;
    bool incomplete = missing(rec[*sensitive_column]);
    for (size_t c : qi_columns) incomplete |= missing(rec[c]);
    if (id_column) incomplete |= missing(rec[*id_column]);
    if (incomplete) {
      ++dropped;
      continue;
    }
    if (id_column) {
      absl::StatusOr<int64_t> id =
          ParseId(rec[*id_column], absl::StrCat("record ", i + 1, " id"));
      if (!id.ok()) return id.status();
      row.row_id = *id;
    } else {
      row.row_id = static_cast<int64_t>(i) + 1;
    }
    for (size_t a = 0; a < qi_columns.size(); ++a) {
      const std::string& v = rec[qi_columns[a]];
      auto bins = job.numeric_bins.find(job.qi_attributes[a]);
      if (bins == job.numeric_bins.end()) {
        row.qi_values.push_back(v);
        continue;
      }
      double d;
      if (!absl::SimpleAtod(v, &d) || !std::isfinite(d)) {
        return absl::InvalidArgumentError(absl::StrCat("record ", i + 1, ": ",
                                                       job.qi_attributes[a],
                                                       " is not numeric: '", v, "'"));
      }
      row.qi_values.push_back(BinLabel(d, bins->second));
    }
    row.sensitive_value = rec[*sensitive_column];
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return absl::InvalidArgumentError("input has no complete rows");
  absl::StatusOr<RawTable> table =
      RawTable::Create(job.qi_attributes, job.sensitive_attribute, std::move(rows));
  if (!table.ok()) return table.status();
  return IngestResult{*std::move(table), static_cast<int64_t>(doc.records.size()), dropped};
}

absl::StatusOr<IngestResult> IngestCsvFile(const std::string& path, const JobConfig& job) {
  absl::StatusOr<CsvDocument> doc = ReadCsvFile(path);
  if (!doc.ok()) return doc.status();
  absl::StatusOr<IngestResult> result = IngestCsv(*doc, job);
  if (!result.ok()) {
    return absl::Status(result.status().code(),
                        absl::StrCat(path, ": ", result.status().message()));
  }
  return result;
}

PublishedFiles FormatPublished(const AnonymizedDataset& dataset) {
  auto [qi, sens] = ProjectViews(dataset);
  PublishedFiles out;
  std::vector<std::string> header = {"row_id"};
  header.insert(header.end(), qi.qi_attributes.begin(), qi.qi_attributes.end());
  header.push_back("GID");
  out.qi_csv = FormatCsvRecord(header);
  for (const QITableView::Row& r : qi.rows) {
    std::vector<std::string> fields = {absl::StrCat(r.row_id)};
    fields.insert(fields.end(), r.qi_values.begin(), r.qi_values.end());
    fields.push_back(absl::StrCat(r.gid));
    out.qi_csv += FormatCsvRecord(fields);
  }
  out.sens_csv = FormatCsvRecord(std::vector<std::string>{"GID", sens.sensitive_attribute});
  for (const SensitiveTableView::Row& r : sens.rows) {
    out.sens_csv += FormatCsvRecord(std::vector<std::string>{absl::StrCat(r.gid), r.value});
  }
  return out;
}

absl::Status WritePublished(const AnonymizedDataset& dataset, const std::string& prefix) {
  PublishedFiles files = FormatPublished(dataset);
  if (absl::Status s = WriteFile(prefix + ".qi.csv", files.qi_csv); !s.ok()) return s;
  return WriteFile(prefix + ".sens.csv", files.sens_csv);
}

absl::StatusOr<AnonymizedDataset> ParsePublished(std::shared_ptr<const RawTable> original,
                                                 const CsvDocument& qi,
                                                 const CsvDocument& sens) {
  const RawTable& t = *original;
  std::vector<std::string> expected = {"row_id"};
  expected.insert(expected.end(), t.qi_attributes().begin(), t.qi_attributes().end());
  expected.push_back("GID");
  if (qi.header != expected) {
    return absl::InvalidArgumentError("QI file header does not match the original table");
  }
  if (sens.header != std::vector<std::string>{"GID", t.sensitive_attribute()}) {
    return absl::InvalidArgumentError(
        "sensitive file header does not match the original table");
  }
  std::map<int64_t, std::vector<int64_t>> members;
  std::set<int64_t> published;
  for (const std::vector<std::string>& rec : qi.records) {
    absl::StatusOr<int64_t> id = ParseId(rec.front(), "QI file row_id");
    if (!id.ok()) return id.status();
    absl::StatusOr<int64_t> gid = ParseId(rec.back(), "QI file GID");
    if (!gid.ok()) return gid.status();
    std::optional<size_t> index = t.IndexOf(*id);
    if (!index) {
      return absl::InvalidArgumentError(
          absl::StrCat("QI file row ", *id, " is not in the original table"));
    }
    for (size_t a = 0; a < t.qi_attributes().size(); ++a) {
      if (rec[a + 1] != t.row(*index).qi_values[a]) {
        return absl::InvalidArgumentError(absl::StrCat(
            "QI file row ", *id, " differs from the original in ", t.qi_attributes()[a]));
      }
    }
    members[*gid].push_back(*id);
    published.insert(*id);
  }
  std::map<int64_t, std::vector<std::string>> values;
  for (const std::vector<std::string>& rec : sens.records) {
    absl::StatusOr<int64_t> gid = ParseId(rec[0], "sensitive file GID");
    if (!gid.ok()) return gid.status();
    values[*gid].push_back(rec[1]);
  }
  std::vector<AGroup> groups;
  for (auto& [gid, ids] : members) {
    absl::StatusOr<AGroup> g = MakeGroup(t, gid, std::move(ids));
    if (!g.ok()) return g.status();
    std::vector<std::string> published_values = std::move(values[gid]);
    values.erase(gid);
    std::vector<std::string> actual = g->sensitive_multiset;
    std::sort(published_values.begin(), published_values.end());
    std::sort(actual.begin(), actual.end());
    if (published_values != actual) {
      return absl::InvalidArgumentError(absl::StrCat(
          "sensitive values of group ", gid, " do not match the original members"));
    }
    groups.push_back(*std::move(g));
  }
  if (!values.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sensitive file lists group ", values.begin()->first, " with no QI rows"));
  }
  std::vector<int64_t> suppressed;
  for (const Row& r : t.rows()) {
    if (!published.count(r.row_id)) suppressed.push_back(r.row_id);
  }
  return AnonymizedDataset::Create(std::move(original), std::move(groups),
                                   std::move(suppressed));
}

absl::StatusOr<AnonymizedDataset> ReadPublished(std::shared_ptr<const RawTable> original,
                                                const std::string& prefix) {
  absl::StatusOr<CsvDocument> qi = ReadCsvFile(prefix + ".qi.csv");
  if (!qi.ok()) return qi.status();
  absl::StatusOr<CsvDocument> sens = ReadCsvFile(prefix + ".sens.csv");
  if (!sens.ok()) return sens.status();
  return ParsePublished(std::move(original), *qi, *sens);
}

std::string FormatAuditReport(const RobustnessReport& report,
                              const std::optional<Rational>& problematic) {
  std::string out = "robustanon-audit v1\n";
  out += Record("config").AddFraction("r", report.r).Line();
  for (const TupleVerdict& v : report.per_tuple) {
    out += Record("tuple")
               .Add("row_id", v.row_id)
               .Add("gid", v.gid)
               .Add("target", v.target)
               .AddFraction("p", v.probability)
               .Add("attribute_set", v.attribute_set.ToString())
               .Add("problematic", v.problematic ? 1 : 0)
               .Line();
  }
  for (const GroupError& e : report.group_errors) {
    out += Record("group_error")
               .Add("gid", e.gid)
               .Add("code", absl::StatusCodeToString(e.status.code()))
               .Add("message", e.status.message())
               .Line();
  }
  Record summary("summary");
  summary.Add("tuples", static_cast<int64_t>(report.per_tuple.size()))
      .Add("violation_count", report.violation_count)
      .Add("group_errors", static_cast<int64_t>(report.group_errors.size()));
  if (problematic) summary.AddFraction("problematic_proportion", *problematic);
  out += summary.Line();
  return out;
}

std::string FormatAnonymizeReport(const ArtResult& result, int64_t dropped_rows) {
  std::string out = "robustanon-anonymize v1\n";
  int64_t published = 0;
  for (const AGroup& g : result.dataset.groups()) published += static_cast<int64_t>(g.size());
  out += Record("summary")
             .Add("groups", static_cast<int64_t>(result.dataset.groups().size()))
             .Add("published_rows", published)
             .Add("suppressed_rows", static_cast<int64_t>(result.suppressed.size()))
             .Add("dropped_rows", dropped_rows)
             .Add("merges", static_cast<int64_t>(result.trace.size()))
             .Add("guard_checks", result.guard_checks)
             .Line();
  for (const AttributeSet& a : result.attribute_sets) {
    out += Record("attribute_set").Add("name", a.ToString()).Line();
  }
  for (const MergeTraceStep& s : result.trace) {
    out += Record("merge")
               .Add("gid", s.gid)
               .Add("absorbed_gid", s.absorbed_gid)
               .Add("expected_min_size", s.expected_min_size)
               .Add("size_after", static_cast<int64_t>(s.size_after))
               .AddFraction("distance", s.distance)
               .Line();
  }
  for (const SuppressedRow& s : result.suppressed) {
    out += Record("suppressed").Add("row_id", s.row_id).Add("reason", s.reason).Line();
  }
  return out;
}

std::string FormatMetricsReport(const MetricsReport& m, bool include_runtime) {
  std::string out = "robustanon-metrics v1\n";
  out += Record("queries")
             .Add("count", m.query_count)
             .Add("skipped", m.skipped_queries)
             .Line();
  out += Record("metric").Add("name", "avg_relative_error").AddFraction("value", m.avg_relative_error).Line();
  out += Record("metric")
             .Add("name", "problematic_proportion")
             .AddFraction("value", m.problematic_proportion)
             .Line();
  out += Record("metric").Add("name", "average_delta").AddFraction("value", m.average_delta).Line();
  if (include_runtime) {
    out += Record("runtime").Add("seconds", absl::StrFormat("%.3f", m.runtime_seconds)).Line();
  }
  return out;
}

std::string FormatDistributions(absl::Span<const BoundDistribution> knowledge) {
  std::string out = "robustanon-distributions v1\n";
  for (const BoundDistribution& k : knowledge) {
    const QIDistribution& d = k.distribution();
    for (const QIDistribution::Entry& e : d.entries()) {
      const std::string signature = d.SignatureOf(e).ToString();
      for (size_t v = 0; v < d.sensitive_domain().size(); ++v) {
        out += Record("entry")
                   .Add("attribute_set", d.attribute_set().ToString())
                   .Add("signature", signature)
                   .Add("value", d.sensitive_domain()[v])
                   .AddFraction("p", e.probabilities[v])
                   .Add("support", e.support)
                   .Line();
      }
    }
  }
  return out;
}

}  // namespace robustanon
