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

#include "robustanon/cli.h"

#include <chrono>
#include <memory>
#include <optional>
#include <utility>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "robustanon/art.h"
#include "robustanon/csv.h"
#include "robustanon/distribution.h"
#include "robustanon/evaluation.h"
#include "robustanon/io.h"
#include "robustanon/job_config.h"
#include "robustanon/parallel.h"
#include "robustanon/robustness.h"
#include "robustanon/synthetic.h"

namespace robustanon {

namespace {

struct Options {
  int threads = 0;
  std::string config;
  std::string out;
  std::string qi, sens, original, published, report;
  int64_t queries = 10000;
  int qd = 0;
  double selectivity = 0.05;
  bool timing = false;
  SyntheticOptions synthetic;
};

absl::StatusOr<std::vector<BoundDistribution>> Knowledge(const RawTable& table,
                                                         const JobConfig& job) {
  absl::StatusOr<std::vector<AttributeSet>> sets =
      EnumerateAttributeSets(table, job.max_attrset_size, job.min_support);
  if (!sets.ok()) return sets.status();
  if (sets->empty()) {
    return absl::InvalidArgumentError("min_support prunes every attribute set");
  }
  return DeriveKnowledge(table, *sets);
}

absl::StatusOr<std::shared_ptr<const RawTable>> LoadTable(const std::string& path,
                                                          const JobConfig& job,
                                                          int64_t* dropped) {
  if (path.empty()) return absl::InvalidArgumentError("no input file given");
  absl::StatusOr<IngestResult> in = IngestCsvFile(path, job);
  if (!in.ok()) return in.status();
  if (dropped != nullptr) *dropped = in->dropped_rows;
  return std::make_shared<const RawTable>(std::move(in->table));
}

absl::Status Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return absl::OkStatus();
  }
  return WriteFile(path, text);
}

absl::StatusOr<int> Anonymize(const Options& o, std::ostream& out) {
  absl::StatusOr<JobConfig> job = LoadJobConfig(o.config);
  if (!job.ok()) return job.status();
  int64_t dropped = 0;
  absl::StatusOr<std::shared_ptr<const RawTable>> table =
      LoadTable(job->input_path, *job, &dropped);
  if (!table.ok()) return table.status();
  absl::StatusOr<ArtResult> result = ArtAnonymize(*table, ToArtConfig(*job));
  if (!result.ok()) return result.status();
  if (absl::Status s = WritePublished(result->dataset, o.out); !s.ok()) return s;
  if (absl::Status s = WriteFile(o.out + ".report.txt", FormatAnonymizeReport(*result, dropped));
      !s.ok()) {
    return s;
  }
  out << "groups: " << result->dataset.groups().size()
      << "  suppressed: " << result->suppressed.size() << "  dropped: " << dropped << "\n";
  return result->suppressed.empty() ? kExitOk : kExitSuppressed;
}

absl::StatusOr<int> Audit(const Options& o, std::ostream& out) {
  absl::StatusOr<JobConfig> job = LoadJobConfig(o.config);
  if (!job.ok()) return job.status();
  absl::StatusOr<std::shared_ptr<const RawTable>> original =
      LoadTable(o.original, *job, nullptr);
  if (!original.ok()) return original.status();
  absl::StatusOr<CsvDocument> qi = ReadCsvFile(o.qi);
  if (!qi.ok()) return qi.status();
  absl::StatusOr<CsvDocument> sens = ReadCsvFile(o.sens);
  if (!sens.ok()) return sens.status();
  absl::StatusOr<AnonymizedDataset> dataset = ParsePublished(*original, *qi, *sens);
  if (!dataset.ok()) return dataset.status();
  absl::StatusOr<std::vector<BoundDistribution>> knowledge = Knowledge(**original, *job);
  if (!knowledge.ok()) return knowledge.status();
  absl::StatusOr<RobustnessReport> report = VerifyRRobustness(
      *dataset, *knowledge, job->r, job->targets, VerifyOptions{job->world_cap});
  if (!report.ok()) return report.status();
  std::optional<Rational> problematic;
  if (absl::StatusOr<Rational> p = ProblematicProportion(*report, **original, job->targets);
      p.ok()) {
    problematic = *p;
  }
  if (absl::Status s = Emit(o.report, FormatAuditReport(*report, problematic), out); !s.ok()) {
    return s;
  }
  const bool clean = report->violation_count == 0 && report->group_errors.empty();
  return clean ? kExitOk : kExitViolations;
}

absl::StatusOr<int> Evaluate(const Options& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  absl::StatusOr<JobConfig> job = LoadJobConfig(o.config);
  if (!job.ok()) return job.status();
  absl::StatusOr<std::shared_ptr<const RawTable>> original =
      LoadTable(o.original, *job, nullptr);
  if (!original.ok()) return original.status();
  absl::StatusOr<AnonymizedDataset> dataset = ReadPublished(*original, o.published);
  if (!dataset.ok()) return dataset.status();
  absl::StatusOr<std::vector<BoundDistribution>> knowledge = Knowledge(**original, *job);
  if (!knowledge.ok()) return knowledge.status();
  const int qd = o.qd > 0 ? o.qd : static_cast<int>(job->qi_attributes.size());
  absl::StatusOr<std::vector<QuerySpec>> queries =
      GenerateQueries(**original, qd, o.selectivity, o.queries, job->seed);
  if (!queries.ok()) return queries.status();

  MetricsReport m;
  m.query_count = static_cast<int64_t>(queries->size());
  absl::StatusOr<RelativeError> error = RelativeErrorRatio(*dataset, *queries);
  if (!error.ok()) return error.status();
  m.avg_relative_error = error->mean;
  m.skipped_queries = error->skipped;
  absl::StatusOr<Rational> problematic = ProblematicProportion(
      *dataset, *knowledge, job->r, job->targets, VerifyOptions{job->world_cap});
  if (!problematic.ok()) return problematic.status();
  m.problematic_proportion = *problematic;
  absl::StatusOr<Rational> delta = AverageDelta(*dataset, *knowledge, job->targets);
  if (!delta.ok()) return delta.status();
  m.average_delta = *delta;
  m.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (absl::Status s = Emit(o.report, FormatMetricsReport(m, o.timing), out); !s.ok()) return s;
  return kExitOk;
}

absl::StatusOr<int> Distributions(const Options& o, std::ostream& out) {
  absl::StatusOr<JobConfig> job = LoadJobConfig(o.config);
  if (!job.ok()) return job.status();
  absl::StatusOr<std::shared_ptr<const RawTable>> table =
      LoadTable(job->input_path, *job, nullptr);
  if (!table.ok()) return table.status();
  absl::StatusOr<std::vector<BoundDistribution>> knowledge = Knowledge(**table, *job);
  if (!knowledge.ok()) return knowledge.status();
  if (absl::Status s = Emit(o.out, FormatDistributions(*knowledge), out); !s.ok()) return s;
  return kExitOk;
}

absl::StatusOr<int> Synthesize(const Options& o, std::ostream& out) {
  absl::StatusOr<RawTable> table = GenerateSyntheticTable(o.synthetic);
  if (!table.ok()) return table.status();
  std::vector<std::string> header = {"row_id"};
  header.insert(header.end(), table->qi_attributes().begin(), table->qi_attributes().end());
  header.push_back(table->sensitive_attribute());
  std::string csv = FormatCsvRecord(header);
  for (const Row& r : table->rows()) {
    std::vector<std::string> fields = {absl::StrCat(r.row_id)};
    fields.insert(fields.end(), r.qi_values.begin(), r.qi_values.end());
    fields.push_back(r.sensitive_value);
    csv += FormatCsvRecord(fields);
  }
  if (absl::Status s = Emit(o.out, csv, out); !s.ok()) return s;
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Anonymization with corruption-robust linkage guarantees"};
  app.require_subcommand(1);
  app.add_option("--threads", o.threads,
                 "Worker threads (default: ROBUSTANON_THREADS, else all cores)");

  CLI::App* anonymize = app.add_subcommand("anonymize", "Anonymize the configured table");
  anonymize->add_option("--config", o.config, "Job config file")->required();
  anonymize->add_option("--out", o.out, "Output prefix")->required();

  CLI::App* audit = app.add_subcommand("audit", "Audit a published dataset");
  audit->add_option("--qi", o.qi, "Published QI table")->required();
  audit->add_option("--sens", o.sens, "Published sensitive table")->required();
  audit->add_option("--original", o.original, "Original CSV")->required();
  audit->add_option("--config", o.config, "Job config file")->required();
  audit->add_option("--report", o.report, "Report file (default: stdout)");

  CLI::App* evaluate = app.add_subcommand("evaluate", "Utility and risk metrics");
  evaluate->add_option("--original", o.original, "Original CSV")->required();
  evaluate->add_option("--published", o.published, "Published prefix")->required();
  evaluate->add_option("--config", o.config, "Job config file")->required();
  evaluate->add_option("--queries", o.queries, "Number of queries")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--qd", o.qd, "Query dimensionality (default: QI size)")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--selectivity", o.selectivity, "Expected selectivity")
      ->check(CLI::Range(1e-12, 1.0));
  evaluate->add_option("--report", o.report, "Report file (default: stdout)");
  evaluate->add_flag("--timing", o.timing, "Include the runtime in the report");

  CLI::App* distributions =
      app.add_subcommand("distributions", "Dump the derived background knowledge");
  distributions->add_option("--config", o.config, "Job config file")->required();
  distributions->add_option("--out", o.out, "Output file")->required();

  CLI::App* synthesize = app.add_subcommand("synthesize", "Write a seeded synthetic table");
  synthesize->add_option("--rows", o.synthetic.rows, "Row count")->check(CLI::PositiveNumber);
  synthesize->add_option("--seed", o.synthetic.seed, "Seed");
  synthesize->add_option("--out", o.out, "Output CSV (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  SetThreadCount(o.threads);

  absl::StatusOr<int> code;
  if (anonymize->parsed()) {
    code = Anonymize(o, out);
  } else if (audit->parsed()) {
    code = Audit(o, out);
  } else if (evaluate->parsed()) {
    code = Evaluate(o, out);
  } else if (distributions->parsed()) {
    code = Distributions(o, out);
  } else {
    code = Synthesize(o, out);
  }
  if (!code.ok()) {
    err << "error: " << code.status().message() << "\n";
    return kExitError;
  }
  return *code;
}

}  // namespace robustanon
