// vpeval/report.cc

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

#include "vpeval/report.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "vpeval/common.h"
#include "vpeval/privacy.h"

namespace vpeval {

namespace {

bool is_rate_metric(const std::string& metric) { return metric == "eer" || metric == "wer"; }

// Keys that are bookkeeping rather than metric values; excluded from
// cross-dataset averaging.
bool averaging_excluded(const std::string& key) {
  return key == "condition" || key == "n_target" || key == "n_nontarget" ||
         key == "zebra_tag" || key == "strategy" || key == "utts_per_speaker" ||
         key == "seed" || key == "pair_evaluations" || key == "eer_threshold";
}

void collect_numeric_paths(const Json& tree, const std::string& prefix,
                           std::set<std::string>* out) {
  if (tree.is_object()) {
    for (const auto& [key, value] : tree.items()) {
      if (value.is_object()) {
        collect_numeric_paths(value, prefix.empty() ? key : prefix + "/" + key, out);
      } else if (value.is_number() && !averaging_excluded(key)) {
        out->insert(prefix.empty() ? key : prefix + "/" + key);
      }
    }
  }
}

const Json* walk(const Json& tree, const std::vector<std::string>& path) {
  const Json* cur = &tree;
  for (const std::string& part : path) {
    if (!cur->is_object()) return nullptr;
    auto it = cur->find(part);
    if (it == cur->end()) return nullptr;
    cur = &*it;
  }
  return cur;
}

void insert_path(Json* tree, const std::vector<std::string>& path, const Json& value) {
  Json* cur = tree;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) cur = &(*cur)[path[i]];
  (*cur)[path.back()] = value;
}

}  // namespace

Json build_metric_report(const std::string& system, const std::string& engine_version,
                         const std::string& config_hash,
                         const std::vector<MetricArtifact>& artifacts) {
  if (artifacts.empty()) throw ValidationError("nothing to report");
  Json datasets = Json::object();
  for (const MetricArtifact& a : artifacts) {
    Json& ds = datasets[a.dataset];
    if (a.kind == "eer" || a.kind == "cllr" || a.kind == "linkability" || a.kind == "zebra") {
      if (a.label.empty()) throw ValidationError("report: privacy metric without a condition");
      Json& row = ds["privacy"]["conditions"][a.label];
      for (const auto& [key, value] : a.value.items()) row[key] = value;
    } else if (a.kind == "deid") {
      ds["privacy"]["deid"] = a.value;
    } else if (a.kind == "wer") {
      if (a.label.empty()) throw ValidationError("report: wer metric without a condition");
      ds["utility"]["wer"][a.label] = a.value;
    } else if (a.kind == "gvd") {
      ds["utility"]["gvd"] = a.value;
    } else {
      throw ValidationError("report: unknown metric kind '" + a.kind + "'");
    }
  }

  // Unweighted mean over datasets, per numeric leaf path.
  std::set<std::string> paths;
  for (const auto& [name, tree] : datasets.items()) collect_numeric_paths(tree, "", &paths);
  Json averages = Json::object();
  for (const std::string& path : paths) {
    auto parts = split(path, '/');
    double sum = 0.0;
    int count = 0;
    for (const auto& [name, tree] : datasets.items()) {
      const Json* leaf = walk(tree, parts);
      if (leaf && leaf->is_number()) {
        sum += leaf->get<double>();
        ++count;
      }
    }
    if (count > 0) insert_path(&averages, parts, sum / count);
  }
  // The averaged worst case still maps onto the tag scale.
  if (const Json* priv = walk(averages, {"privacy", "conditions"})) {
    for (const auto& [label, row] : priv->items()) {
      if (row.contains("worst_case_loglr")) {
        averages["privacy"]["conditions"][label]["zebra_tag"] =
            zebra_tag_for(row.at("worst_case_loglr").get<double>());
      }
    }
  }

  return Json{{"schema_version", 1},
              {"system", system},
              {"engine_version", engine_version},
              {"config_hash", config_hash},
              {"datasets", std::move(datasets)},
              {"averages", std::move(averages)}};
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  throw ValidationError("unknown report format: '" + name + "'");
}

namespace {

void csv_rows(const Json& tree, const std::string& scope, const std::string& path,
              std::string* out) {
  if (tree.is_object()) {
    for (const auto& [key, value] : tree.items())
      csv_rows(value, scope, path.empty() ? key : path + "/" + key, out);
    return;
  }
  std::string rendered;
  if (tree.is_number_float())
    rendered = format_g17(tree.get<double>());
  else if (tree.is_number_integer())
    rendered = std::to_string(tree.get<std::int64_t>());
  else if (tree.is_number_unsigned())
    rendered = std::to_string(tree.get<std::uint64_t>());
  else if (tree.is_string())
    rendered = tree.get<std::string>();
  else if (tree.is_null())
    rendered = "";
  else
    return;
  *out += scope + "," + path + "," + rendered + "\n";
}

std::string human_value(const std::string& key, const Json& value) {
  if (value.is_null()) return "< -99";  // distinctiveness floor sentinel
  if (value.is_string()) return value.get<std::string>();
  if (!value.is_number()) return value.dump();
  double v = value.get<double>();
  if (key == "eer" || key == "wer" || key == "dsys" || key == "deid") {
    if (key == "eer" || key == "wer") v *= 100.0;
    return format_fixed(v, 2);
  }
  if (value.is_number_integer() || value.is_number_unsigned()) {
    return std::to_string(value.get<std::int64_t>());
  }
  return format_fixed(v, 2);
}

void markdown_condition_table(const Json& conditions, std::string* out) {
  // union of metric keys across conditions, fixed order
  const std::vector<std::string> preferred{"eer",  "cllr",  "min_cllr", "dsys",
                                           "d_ece", "worst_case_loglr", "zebra_tag",
                                           "n_target", "n_nontarget"};
  std::set<std::string> present;
  for (const auto& [label, row] : conditions.items())
    for (const auto& [key, value] : row.items())
      if (key != "condition" && key != "eer_threshold") present.insert(key);
  std::vector<std::string> cols;
  for (const std::string& key : preferred)
    if (present.count(key)) cols.push_back(key);
  for (const std::string& key : present)
    if (std::find(cols.begin(), cols.end(), key) == cols.end()) cols.push_back(key);

  *out += "| condition |";
  for (const auto& c : cols) *out += " " + (c == "eer" ? "eer%" : c) + " |";
  *out += "\n|---|";
  for (std::size_t i = 0; i < cols.size(); ++i) *out += "---|";
  *out += "\n";
  for (const auto& [label, row] : conditions.items()) {
    *out += "| " + label + " |";
    for (const auto& c : cols)
      *out += " " + (row.contains(c) ? human_value(c, row.at(c)) : "") + " |";
    *out += "\n";
  }
}

void markdown_section(const Json& tree, const std::string& title, std::string* out) {
  *out += "### " + title + "\n\n";
  if (tree.contains("privacy")) {
    const Json& privacy = tree.at("privacy");
    if (privacy.contains("conditions")) {
      markdown_condition_table(privacy.at("conditions"), out);
      *out += "\n";
    }
    if (privacy.contains("deid") && privacy.at("deid").contains("deid")) {
      *out += "de-identification: " + human_value("deid", privacy.at("deid").at("deid")) + "\n\n";
    }
  }
  if (tree.contains("utility")) {
    const Json& utility = tree.at("utility");
    if (utility.contains("wer")) {
      *out += "| condition | wer% |\n|---|---|\n";
      for (const auto& [label, row] : utility.at("wer").items()) {
        *out += "| " + label + " | " +
                (row.contains("wer") ? human_value("wer", row.at("wer")) : "") + " |\n";
      }
      *out += "\n";
    }
    if (utility.contains("gvd") && utility.at("gvd").contains("gvd_db")) {
      const Json& g = utility.at("gvd").at("gvd_db");
      std::string v = g.is_null() ? "< -99" : format_fixed(g.get<double>(), 2);
      *out += "gain of voice distinctiveness: " + v + " dB\n\n";
    }
  }
}

}  // namespace

std::string render_report(const Json& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson:
      return canonical_dump(report) + "\n";
    case ReportFormat::kCsv: {
      std::string out = "scope,path,value\n";
      if (report.contains("datasets"))
        for (const auto& [name, tree] : report.at("datasets").items())
          csv_rows(tree, name, "", &out);
      if (report.contains("averages")) csv_rows(report.at("averages"), "averages", "", &out);
      return out;
    }
    case ReportFormat::kMarkdown: {
      std::string out = "## " + report.value("system", std::string("results")) + "\n\n";
      out += "engine: " + report.value("engine_version", std::string()) + ", config: " +
             report.value("config_hash", std::string()).substr(0, 12) + "\n\n";
      if (report.contains("datasets"))
        for (const auto& [name, tree] : report.at("datasets").items())
          markdown_section(tree, name, &out);
      if (report.contains("averages") && report.at("averages").is_object() &&
          !report.at("averages").empty())
        markdown_section(report.at("averages"), "averages", &out);
      return out;
    }
  }
  throw ValidationError("bad report format");
}

void emit_report(const Json& report, ReportFormat format, const std::filesystem::path& path) {
  write_text_file_atomic(path, render_report(report, format));
}

std::string format_metric_row(const Json& report, const std::string& metric,
                              const std::vector<std::string>& conditions) {
  std::string out;
  for (const std::string& cond : conditions) {
    if (!out.empty()) out += " / ";
    double v = report_metric_value(report, metric, cond);
    out += format_fixed(v, 2);
  }
  return out;
}

double report_metric_value(const Json& report, const std::string& metric,
                           const std::string& condition) {
  const Json& averages = report.at("averages");
  const Json* leaf = nullptr;
  if (metric == "wer") {
    leaf = walk(averages, {"utility", "wer", condition, "wer"});
  } else if (metric == "gvd") {
    leaf = walk(averages, {"utility", "gvd", "gvd_db"});
  } else if (metric == "deid") {
    leaf = walk(averages, {"privacy", "deid", "deid"});
  } else {
    leaf = walk(averages, {"privacy", "conditions", condition, metric});
  }
  if (!leaf || !leaf->is_number())
    throw ValidationError("report for '" + report.value("system", std::string()) +
                          "' has no value for metric '" + metric + "' under condition '" +
                          condition + "'");
  double v = leaf->get<double>();
  return is_rate_metric(metric) ? v * 100.0 : v;
}

bool RankTable::tied(const std::string& a, const std::string& b) const {
  const RankEntry *ea = nullptr, *eb = nullptr;
  for (const RankEntry& e : entries) {
    if (e.system == a) ea = &e;
    if (e.system == b) eb = &e;
  }
  if (!ea || !eb) throw ValidationError("rank table: unknown system");
  return ea->shared_lo == eb->shared_lo && ea->shared_hi == eb->shared_hi;
}

bool RankTable::compatible_with(const std::vector<std::string>& order) const {
  std::map<std::string, const RankEntry*> by_name;
  for (const RankEntry& e : entries) by_name[e.system] = &e;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    auto a = by_name.find(order[i]);
    auto b = by_name.find(order[i + 1]);
    if (a == by_name.end() || b == by_name.end()) return false;
    const bool strictly_before = a->second->position < b->second->position;
    if (!strictly_before && !tied(order[i], order[i + 1])) return false;
  }
  return true;
}

Json RankTable::to_json() const {
  Json entries_json = Json::array();
  for (const RankEntry& e : entries) {
    entries_json.push_back(Json{{"system", e.system},
                                {"value", e.value},
                                {"position", e.position},
                                {"shared_lo", e.shared_lo},
                                {"shared_hi", e.shared_hi}});
  }
  return Json{{"metric", metric},
              {"condition", condition},
              {"higher_better", higher_better},
              {"tie_epsilon", tie_epsilon},
              {"entries", std::move(entries_json)}};
}

RankTable rank_compare(const std::vector<std::pair<std::string, Json>>& reports,
                       const std::string& metric, const std::string& condition,
                       double tie_epsilon, std::optional<bool> higher_better) {
  if (reports.size() < 2) throw ValidationError("rank_compare: need at least 2 reports");
  RankTable table;
  table.metric = metric;
  table.condition = condition;
  table.tie_epsilon = tie_epsilon;
  // Privacy reads up (a higher error rate means a stronger system); utility
  // costs read down.
  table.higher_better =
      higher_better.value_or(metric == "eer" || metric == "dsys" || metric == "d_ece" ||
                             metric == "worst_case_loglr" || metric == "deid");

  for (const auto& [system, report] : reports) {
    RankEntry e;
    e.system = system;
    e.value = report_metric_value(report, metric, condition);
    table.entries.push_back(std::move(e));
  }
  std::stable_sort(table.entries.begin(), table.entries.end(),
                   [&](const RankEntry& a, const RankEntry& b) {
                     return table.higher_better ? a.value > b.value : a.value < b.value;
                   });
  for (std::size_t i = 0; i < table.entries.size(); ++i)
    table.entries[i].position = static_cast<int>(i) + 1;
  // chain adjacent near-ties into shared place ranges
  std::size_t group_start = 0;
  for (std::size_t i = 1; i <= table.entries.size(); ++i) {
    const bool boundary =
        i == table.entries.size() ||
        std::abs(table.entries[i].value - table.entries[i - 1].value) >= tie_epsilon;
    if (boundary) {
      for (std::size_t j = group_start; j < i; ++j) {
        table.entries[j].shared_lo = table.entries[group_start].position;
        table.entries[j].shared_hi = table.entries[i - 1].position;
      }
      group_start = i;
    }
  }
  return table;
}

Json RankComparison::to_json() const {
  Json tables_json = Json::array();
  for (const RankTable& t : tables) tables_json.push_back(t.to_json());
  return Json{{"tables", std::move(tables_json)},
              {"consistent", consistent},
              {"agreeing_pairs", agreeing_pairs},
              {"total_pairs", total_pairs}};
}

RankComparison rank_compare_conditions(
    const std::vector<std::pair<std::string, Json>>& reports, const std::string& metric,
    const std::vector<std::string>& conditions, double tie_epsilon,
    std::optional<bool> higher_better) {
  if (conditions.empty()) throw ValidationError("rank_compare: no conditions");
  RankComparison cmp;
  for (const std::string& cond : conditions)
    cmp.tables.push_back(rank_compare(reports, metric, cond, tie_epsilon, higher_better));

  // identical system order across all tables
  cmp.consistent = true;
  for (std::size_t t = 1; t < cmp.tables.size(); ++t) {
    for (std::size_t i = 0; i < cmp.tables[t].entries.size(); ++i) {
      if (cmp.tables[t].entries[i].system != cmp.tables[0].entries[i].system)
        cmp.consistent = false;
    }
  }

  // unordered pairs whose relation (before/after/tied) matches across tables
  std::vector<std::string> systems;
  for (const auto& [system, report] : reports) systems.push_back(system);
  for (std::size_t a = 0; a < systems.size(); ++a) {
    for (std::size_t b = a + 1; b < systems.size(); ++b) {
      ++cmp.total_pairs;
      int relation0 = 0;
      bool agree = true;
      for (std::size_t t = 0; t < cmp.tables.size(); ++t) {
        const RankTable& table = cmp.tables[t];
        int pos_a = 0, pos_b = 0;
        for (const RankEntry& e : table.entries) {
          if (e.system == systems[a]) pos_a = e.position;
          if (e.system == systems[b]) pos_b = e.position;
        }
        int relation = table.tied(systems[a], systems[b]) ? 0 : (pos_a < pos_b ? 1 : -1);
        if (t == 0)
          relation0 = relation;
        else if (relation != relation0)
          agree = false;
      }
      if (agree) ++cmp.agreeing_pairs;
    }
  }
  if (cmp.total_pairs > 0 && cmp.agreeing_pairs < cmp.total_pairs) cmp.consistent = false;
  return cmp;
}

}  // namespace vpeval
