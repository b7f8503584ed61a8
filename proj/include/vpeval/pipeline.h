// vpeval/pipeline.h

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

#ifndef VPEVAL_PIPELINE_H_
#define VPEVAL_PIPELINE_H_

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "vpeval/cache.h"
#include "vpeval/config.h"
#include "vpeval/json_util.h"

namespace vpeval {

// One step of the evaluation DAG. Artifacts are canonical JSON documents; a
// node's cache key covers its step name, parameters, the keys of its
// dependencies, the content hashes of any external input files and the
// engine fingerprint.
struct PlanNode {
  std::string id;
  std::string step;
  Json params = Json::object();
  std::vector<std::string> deps;
  std::vector<std::filesystem::path> input_files;
  std::function<Json(const std::map<std::string, const Json*>&)> compute;
  // Optional output materialization into the run's output directory.
  std::function<void(const Json&, const std::filesystem::path&)> emit;
};

struct ExecutionPlan {
  std::vector<PlanNode> nodes;  // topologically ordered by construction
  std::vector<std::string> warnings;

  const PlanNode* find(const std::string& id) const;
  std::vector<std::string> ids_with_step_prefix(const std::string& prefix) const;
};

// Builds the DAG for a validated config: load/preprocess per embedding
// source, enrollment averaging, batch scoring per attack condition, one node
// per enabled metric, similarity matrices feeding distinctiveness metrics,
// reduction manifests, and a final report node. Validates file existence and
// (condition, space) availability; asserts acyclicity.
ExecutionPlan plan(const PipelineConfig& config);

enum class NodeStatus { kComputed, kCached, kFailed, kSkipped };
const char* node_status_name(NodeStatus s);

struct NodeReport {
  std::string id;
  std::string step;
  NodeStatus status = NodeStatus::kSkipped;
  double wall_ms = 0.0;
  std::string key;
  std::string artifact_sha256;
  std::string error;
};

struct RunManifest {
  std::string engine;
  std::string config_hash;
  bool ok = false;
  std::size_t computed = 0, cached = 0, failed = 0, skipped = 0;
  std::vector<NodeReport> nodes;  // sorted by id
  std::vector<std::string> warnings;

  const NodeReport* find(const std::string& id) const;
  Json to_json() const;
};

// Executes the plan with a worker pool of config.parallelism threads. Each
// node runs at most once; cache hits skip computation entirely. A failing
// node marks its dependents skipped while independent branches complete.
// Outputs (report, reduction manifests) land in config.output_dir along with
// run_manifest.json.
RunManifest run(const ExecutionPlan& plan, const PipelineConfig& config);

}  // namespace vpeval

#endif  // VPEVAL_PIPELINE_H_
