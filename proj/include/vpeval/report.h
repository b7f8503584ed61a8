// vpeval/report.h

// Copyright 2026  vpeval authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef VPEVAL_REPORT_H_
#define VPEVAL_REPORT_H_

#include <optional>
#include <string>
#include <vector>

#include "vpeval/json_util.h"

namespace vpeval {

// One metric artifact to fold into a report. kind is one of eer, cllr,
// linkability, zebra, wer, gvd, deid; label is the condition label where the
// metric is per-condition (empty for gvd/deid).
struct MetricArtifact {
  std::string dataset;
  std::string kind;
  std::string label;
  Json value;
};

// Per-dataset trees plus cross-dataset averages. Averaged values are the
// unweighted arithmetic mean of the per-dataset values present for that
// condition; trial counts are not averaged, and the zebra tag is recomputed
// from the averaged worst case.
Json build_metric_report(const std::string& system, const std::string& engine_version,
                         const std::string& config_hash,
                         const std::vector<MetricArtifact>& artifacts);

enum class ReportFormat { kJson, kCsv, kMarkdown };
ReportFormat parse_report_format(const std::string& name);

// json: canonical full precision. csv: one row per scalar, full precision
// (lossless for scalar fields). markdown: tables with 2-decimal values,
// rates as percentages.
std::string render_report(const Json& report, ReportFormat format);
void emit_report(const Json& report, ReportFormat format, const std::filesystem::path& path);

// "3.11 / 52.85 / 25.65 / 7.62"-style row: the metric across conditions from
// the report's averages, formatted for a comparison table. Rates (eer, wer)
// render as percentages with 2 decimals.
std::string format_metric_row(const Json& report, const std::string& metric,
                              const std::vector<std::string>& conditions);

// Pulls a comparable scalar out of a report; eer and wer come back in
// percent so rank tie thresholds are in percentage points.
double report_metric_value(const Json& report, const std::string& metric,
                           const std::string& condition);

struct RankEntry {
  std::string system;
  double value = 0.0;
  int position = 0;    // 1-based, ordered best first
  int shared_lo = 0;   // tie-group place range
  int shared_hi = 0;
};

struct RankTable {
  std::string metric;
  std::string condition;
  bool higher_better = true;
  double tie_epsilon = 0.5;
  std::vector<RankEntry> entries;  // best first

  bool tied(const std::string& a, const std::string& b) const;
  // True when every consecutive pair in `order` is either strictly ordered
  // that way or inside one tie group.
  bool compatible_with(const std::vector<std::string>& order) const;
  Json to_json() const;
};

// Ordinal ranking of systems by a metric value. Adjacent systems closer than
// tie_epsilon chain into a tie group sharing a place range. Direction: eer
// and gvd-style privacy metrics rank higher-better, wer/cllr lower-better;
// override with higher_better.
RankTable rank_compare(const std::vector<std::pair<std::string, Json>>& reports,
                       const std::string& metric, const std::string& condition,
                       double tie_epsilon = 0.5,
                       std::optional<bool> higher_better = std::nullopt);

struct RankComparison {
  std::vector<RankTable> tables;  // one per condition
  bool consistent = false;        // identical system order across conditions
  int agreeing_pairs = 0;         // unordered system pairs agreeing everywhere
  int total_pairs = 0;
  Json to_json() const;
};

RankComparison rank_compare_conditions(
    const std::vector<std::pair<std::string, Json>>& reports, const std::string& metric,
    const std::vector<std::string>& conditions, double tie_epsilon = 0.5,
    std::optional<bool> higher_better = std::nullopt);

}  // namespace vpeval

#endif  // VPEVAL_REPORT_H_
