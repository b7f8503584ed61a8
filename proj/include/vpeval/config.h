// vpeval/config.h

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

#ifndef VPEVAL_CONFIG_H_
#define VPEVAL_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vpeval/corpus.h"
#include "vpeval/json_util.h"
#include "vpeval/protocol.h"
#include "vpeval/scoring.h"
#include "vpeval/similarity.h"

namespace vpeval {

struct EmbeddingSourceConfig {
  Condition condition = Condition::kOriginal;
  Space space = Space::kEval;
  std::filesystem::path path;
};

struct DatasetConfig {
  std::string name;
  std::vector<EmbeddingSourceConfig> embeddings;
  // JSON file: enroll-model-id -> list of utterance ids.
  std::filesystem::path enrollment_map;
  // ASV condition label -> trials csv.
  std::map<std::string, std::filesystem::path> trials;
  std::filesystem::path reference_transcripts;
  // ASR condition label -> hypothesis tsv.
  std::map<std::string, std::filesystem::path> hypotheses;
};

struct BackendConfig {
  Backend kind = Backend::kCosine;
  std::filesystem::path plda_model;  // required for plda
  // Preprocessing defaults follow the backend: raw vectors for cosine,
  // center + length-norm for plda. Enrollment renormalization defaults on
  // for cosine, off for plda.
  std::optional<bool> center;
  std::optional<bool> length_norm;
  std::optional<bool> enroll_renorm;

  bool effective_center() const;
  bool effective_length_norm() const;
  bool effective_enroll_renorm() const;
};

struct EerMetricConfig {
  bool enabled = false;
  std::vector<std::string> conditions;
};

struct CllrMetricConfig {
  bool enabled = false;
  std::vector<std::string> conditions;
};

struct LinkabilityMetricConfig {
  bool enabled = false;
  std::vector<std::string> conditions;
  int bins = 100;
  double omega = 1.0;
};

struct ZebraMetricConfig {
  bool enabled = false;
  std::vector<std::string> conditions;
  double grid_range = 10.0;
  double grid_step = 0.02;
};

struct WerMetricConfig {
  bool enabled = false;
  std::vector<std::string> conditions;  // ASR labels
};

struct GvdMetricConfig {
  bool enabled = false;
  GvdStrategy strategy = GvdStrategy::kEvalOnly;
  int utts_per_speaker = 5;
  std::uint64_t seed = 0;
};

struct DeidMetricConfig {
  bool enabled = false;
  int utts_per_speaker = 5;
  std::uint64_t seed = 0;
};

struct MetricsConfig {
  EerMetricConfig eer;
  CllrMetricConfig cllr;
  LinkabilityMetricConfig linkability;
  ZebraMetricConfig zebra;
  WerMetricConfig wer;
  GvdMetricConfig gvd;
  DeidMetricConfig deid;

  bool any_enabled() const;
};

struct ReductionConfig {
  std::string dataset;
  Condition condition = Condition::kOriginal;
  Space space = Space::kEval;
  ReductionSpec spec;
};

struct PipelineConfig {
  std::string name;
  std::filesystem::path output_dir;
  std::filesystem::path cache_dir;
  int parallelism = 1;
  std::vector<DatasetConfig> datasets;
  BackendConfig backend;
  MetricsConfig metrics;
  std::vector<ReductionConfig> reductions;

  // Hash over the result-determining parts of the config (execution-only
  // keys such as cache_dir/output_dir/parallelism excluded), so reports do
  // not change when only the execution setup does.
  std::string semantic_hash() const;
  Json semantic_json() const;
};

// Parses .json or .yaml/.yml (YAML is converted to the same tree). Unknown
// keys anywhere are hard errors. Relative paths resolve against the config
// file's directory. Env overrides: VPEVAL_CACHE_DIR, VPEVAL_PARALLELISM.
PipelineConfig load_pipeline_config(const std::filesystem::path& path);
PipelineConfig pipeline_config_from_json(const Json& j,
                                         const std::filesystem::path& base_dir);

// Checks that every referenced file exists; collects all gaps in one error.
void check_config_files(const PipelineConfig& config);

}  // namespace vpeval

#endif  // VPEVAL_CONFIG_H_
