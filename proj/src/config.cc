// vpeval/config.cc

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

#include "vpeval/config.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cstdlib>
#include <set>

#include "vpeval/common.h"
#include "vpeval/hash.h"

namespace vpeval {

namespace fs = std::filesystem;

bool BackendConfig::effective_center() const {
  return center.value_or(kind == Backend::kPlda);
}
bool BackendConfig::effective_length_norm() const {
  return length_norm.value_or(kind == Backend::kPlda);
}
bool BackendConfig::effective_enroll_renorm() const {
  return enroll_renorm.value_or(kind == Backend::kCosine);
}

bool MetricsConfig::any_enabled() const {
  return eer.enabled || cllr.enabled || linkability.enabled || zebra.enabled || wer.enabled ||
         gvd.enabled || deid.enabled;
}

namespace {

// YAML -> the same tree shape the JSON path produces.
Json yaml_to_json(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Null:
      return nullptr;
    case YAML::NodeType::Scalar: {
      const std::string& s = node.Scalar();
      // Tagged strings stay strings; untagged scalars get the usual YAML
      // bool/int/double reading.
      if (node.Tag() == "!") return s;
      if (s == "true" || s == "True") return true;
      if (s == "false" || s == "False") return false;
      if (s == "null" || s == "~" || s.empty()) return nullptr;
      try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos == s.size()) return v;
      } catch (...) {
      }
      try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos == s.size()) return v;
      } catch (...) {
      }
      return s;
    }
    case YAML::NodeType::Sequence: {
      Json arr = Json::array();
      for (const auto& item : node) arr.push_back(yaml_to_json(item));
      return arr;
    }
    case YAML::NodeType::Map: {
      Json obj = Json::object();
      for (const auto& kv : node) obj[kv.first.Scalar()] = yaml_to_json(kv.second);
      return obj;
    }
    default:
      return nullptr;
  }
}

void require_keys(const Json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ValidationError("config: '" + where + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key))
      throw ValidationError("config: unknown key '" + key + "' in " + where);
  }
}

const Json* find(const Json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::string get_string(const Json& obj, const char* key, const std::string& where) {
  const Json* v = find(obj, key);
  if (!v) throw ValidationError("config: missing '" + std::string(key) + "' in " + where);
  if (!v->is_string())
    throw ValidationError("config: '" + std::string(key) + "' in " + where + " must be a string");
  return v->get<std::string>();
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::vector<std::string> condition_list(const Json& j, const std::string& where, bool asr) {
  if (!j.is_array()) throw ValidationError("config: '" + where + "' must be an array of labels");
  std::vector<std::string> out;
  for (const Json& item : j) {
    std::string label = item.get<std::string>();
    if (asr)
      parse_asr_condition(label);
    else
      parse_asv_condition(label);
    out.push_back(std::move(label));
  }
  if (out.empty()) throw ValidationError("config: '" + where + "' is empty");
  return out;
}

}  // namespace

Json PipelineConfig::semantic_json() const {
  Json j;
  j["name"] = name;
  Json ds_arr = Json::array();
  for (const DatasetConfig& ds : datasets) {
    Json d;
    d["name"] = ds.name;
    Json embs = Json::array();
    for (const auto& e : ds.embeddings)
      embs.push_back(Json{{"condition", condition_name(e.condition)},
                          {"space", space_name(e.space)},
                          {"sha256", sha256_file_hex(e.path)}});
    d["embeddings"] = std::move(embs);
    if (!ds.enrollment_map.empty()) d["enrollment_map"] = sha256_file_hex(ds.enrollment_map);
    Json trials = Json::object();
    for (const auto& [label, path] : ds.trials) trials[label] = sha256_file_hex(path);
    d["trials"] = std::move(trials);
    if (!ds.reference_transcripts.empty())
      d["reference_transcripts"] = sha256_file_hex(ds.reference_transcripts);
    Json hyps = Json::object();
    for (const auto& [label, path] : ds.hypotheses) hyps[label] = sha256_file_hex(path);
    d["hypotheses"] = std::move(hyps);
    ds_arr.push_back(std::move(d));
  }
  j["datasets"] = std::move(ds_arr);

  j["backend"] = Json{{"kind", backend_name(backend.kind)},
                      {"plda_model", backend.plda_model.empty()
                                         ? Json(nullptr)
                                         : Json(sha256_file_hex(backend.plda_model))},
                      {"center", backend.effective_center()},
                      {"length_norm", backend.effective_length_norm()},
                      {"enroll_renorm", backend.effective_enroll_renorm()}};

  Json m;
  m["eer"] = Json{{"enabled", metrics.eer.enabled}, {"conditions", metrics.eer.conditions}};
  m["cllr"] = Json{{"enabled", metrics.cllr.enabled}, {"conditions", metrics.cllr.conditions}};
  m["linkability"] = Json{{"enabled", metrics.linkability.enabled},
                          {"conditions", metrics.linkability.conditions},
                          {"bins", metrics.linkability.bins},
                          {"omega", metrics.linkability.omega}};
  m["zebra"] = Json{{"enabled", metrics.zebra.enabled},
                    {"conditions", metrics.zebra.conditions},
                    {"grid_range", metrics.zebra.grid_range},
                    {"grid_step", metrics.zebra.grid_step}};
  m["wer"] = Json{{"enabled", metrics.wer.enabled}, {"conditions", metrics.wer.conditions}};
  m["gvd"] = Json{{"enabled", metrics.gvd.enabled},
                  {"strategy", gvd_strategy_name(metrics.gvd.strategy)},
                  {"utts_per_speaker", metrics.gvd.utts_per_speaker},
                  {"seed", metrics.gvd.seed}};
  m["deid"] = Json{{"enabled", metrics.deid.enabled},
                   {"utts_per_speaker", metrics.deid.utts_per_speaker},
                   {"seed", metrics.deid.seed}};
  j["metrics"] = std::move(m);

  Json reds = Json::array();
  for (const ReductionConfig& r : reductions)
    reds.push_back(Json{{"dataset", r.dataset},
                        {"condition", condition_name(r.condition)},
                        {"space", space_name(r.space)},
                        {"strategy", reduction_strategy_name(r.spec.strategy)},
                        {"amount", r.spec.amount},
                        {"seed", r.spec.seed}});
  j["reductions"] = std::move(reds);
  return j;
}

std::string PipelineConfig::semantic_hash() const { return sha256_hex(canonical_dump(semantic_json())); }

PipelineConfig pipeline_config_from_json(const Json& j, const fs::path& base_dir) {
  require_keys(j, "config",
               {"name", "output_dir", "cache_dir", "parallelism", "datasets", "backend",
                "metrics", "reductions"});
  PipelineConfig config;
  config.name = get_string(j, "name", "config");
  config.output_dir = resolve(base_dir, get_string(j, "output_dir", "config"));
  config.cache_dir = resolve(base_dir, get_string(j, "cache_dir", "config"));
  if (const Json* p = find(j, "parallelism")) {
    if (!p->is_number_integer() || p->get<int>() < 1)
      throw ValidationError("config: parallelism must be a positive integer");
    config.parallelism = p->get<int>();
  }

  const Json* datasets = find(j, "datasets");
  if (!datasets || !datasets->is_array() || datasets->empty())
    throw ValidationError("config: 'datasets' must be a non-empty array");
  std::set<std::string> seen_names;
  for (const Json& d : *datasets) {
    require_keys(d, "dataset",
                 {"name", "embeddings", "enrollment_map", "trials", "reference_transcripts",
                  "hypotheses"});
    DatasetConfig ds;
    ds.name = get_string(d, "name", "dataset");
    if (!seen_names.insert(ds.name).second)
      throw ValidationError("config: duplicate dataset name '" + ds.name + "'");
    const Json* embs = find(d, "embeddings");
    if (!embs || !embs->is_array() || embs->empty())
      throw ValidationError("config: dataset '" + ds.name + "' needs embeddings");
    std::set<std::pair<Condition, Space>> seen_keys;
    for (const Json& e : *embs) {
      require_keys(e, "embedding source", {"condition", "space", "path"});
      EmbeddingSourceConfig src;
      src.condition = parse_condition(get_string(e, "condition", "embedding source"));
      if (const Json* s = find(e, "space")) src.space = parse_space(s->get<std::string>());
      src.path = resolve(base_dir, get_string(e, "path", "embedding source"));
      if (!seen_keys.insert({src.condition, src.space}).second)
        throw ValidationError("config: dataset '" + ds.name +
                              "' lists duplicate (condition, space) embeddings");
      ds.embeddings.push_back(std::move(src));
    }
    if (const Json* em = find(d, "enrollment_map"))
      ds.enrollment_map = resolve(base_dir, em->get<std::string>());
    if (const Json* trials = find(d, "trials")) {
      if (!trials->is_object())
        throw ValidationError("config: dataset trials must map labels to csv paths");
      for (const auto& [label, path] : trials->items()) {
        parse_asv_condition(label);
        ds.trials[label] = resolve(base_dir, path.get<std::string>());
      }
    }
    if (const Json* r = find(d, "reference_transcripts"))
      ds.reference_transcripts = resolve(base_dir, r->get<std::string>());
    if (const Json* hyps = find(d, "hypotheses")) {
      if (!hyps->is_object())
        throw ValidationError("config: dataset hypotheses must map labels to tsv paths");
      for (const auto& [label, path] : hyps->items()) {
        parse_asr_condition(label);
        ds.hypotheses[label] = resolve(base_dir, path.get<std::string>());
      }
    }
    config.datasets.push_back(std::move(ds));
  }

  if (const Json* b = find(j, "backend")) {
    require_keys(*b, "backend", {"kind", "plda_model", "center", "length_norm", "enroll_renorm"});
    config.backend.kind = parse_backend(get_string(*b, "kind", "backend"));
    if (const Json* p = find(*b, "plda_model"))
      config.backend.plda_model = resolve(base_dir, p->get<std::string>());
    if (const Json* v = find(*b, "center")) config.backend.center = v->get<bool>();
    if (const Json* v = find(*b, "length_norm")) config.backend.length_norm = v->get<bool>();
    if (const Json* v = find(*b, "enroll_renorm")) config.backend.enroll_renorm = v->get<bool>();
    if (config.backend.kind == Backend::kPlda && config.backend.plda_model.empty())
      throw ValidationError("config: plda backend requires 'plda_model'");
  }

  if (const Json* m = find(j, "metrics")) {
    require_keys(*m, "metrics", {"eer", "cllr", "linkability", "zebra", "wer", "gvd", "deid"});
    if (const Json* e = find(*m, "eer")) {
      require_keys(*e, "metrics.eer", {"enabled", "conditions"});
      config.metrics.eer.enabled = e->value("enabled", true);
      if (const Json* c = find(*e, "conditions"))
        config.metrics.eer.conditions = condition_list(*c, "metrics.eer.conditions", false);
    }
    if (const Json* e = find(*m, "cllr")) {
      require_keys(*e, "metrics.cllr", {"enabled", "conditions"});
      config.metrics.cllr.enabled = e->value("enabled", true);
      if (const Json* c = find(*e, "conditions"))
        config.metrics.cllr.conditions = condition_list(*c, "metrics.cllr.conditions", false);
    }
    if (const Json* e = find(*m, "linkability")) {
      require_keys(*e, "metrics.linkability", {"enabled", "conditions", "bins", "omega"});
      config.metrics.linkability.enabled = e->value("enabled", true);
      if (const Json* c = find(*e, "conditions"))
        config.metrics.linkability.conditions =
            condition_list(*c, "metrics.linkability.conditions", false);
      config.metrics.linkability.bins = e->value("bins", 100);
      config.metrics.linkability.omega = e->value("omega", 1.0);
      if (config.metrics.linkability.bins < 2)
        throw ValidationError("config: linkability bins must be >= 2");
    }
    if (const Json* e = find(*m, "zebra")) {
      require_keys(*e, "metrics.zebra", {"enabled", "conditions", "grid_range", "grid_step"});
      config.metrics.zebra.enabled = e->value("enabled", true);
      if (const Json* c = find(*e, "conditions"))
        config.metrics.zebra.conditions = condition_list(*c, "metrics.zebra.conditions", false);
      config.metrics.zebra.grid_range = e->value("grid_range", 10.0);
      config.metrics.zebra.grid_step = e->value("grid_step", 0.02);
    }
    if (const Json* e = find(*m, "wer")) {
      require_keys(*e, "metrics.wer", {"enabled", "conditions"});
      config.metrics.wer.enabled = e->value("enabled", true);
      if (const Json* c = find(*e, "conditions"))
        config.metrics.wer.conditions = condition_list(*c, "metrics.wer.conditions", true);
    }
    if (const Json* e = find(*m, "gvd")) {
      require_keys(*e, "metrics.gvd", {"enabled", "strategy", "utts_per_speaker", "seed"});
      config.metrics.gvd.enabled = e->value("enabled", true);
      if (const Json* s = find(*e, "strategy"))
        config.metrics.gvd.strategy = parse_gvd_strategy(s->get<std::string>());
      config.metrics.gvd.utts_per_speaker = e->value("utts_per_speaker", 5);
      if (const Json* s = find(*e, "seed"))
        config.metrics.gvd.seed = s->get<std::uint64_t>();
      else if (config.metrics.gvd.enabled && config.metrics.gvd.utts_per_speaker > 0)
        throw ValidationError("config: metrics.gvd needs a 'seed' when sampling utterances");
      if (config.metrics.gvd.utts_per_speaker < 0)
        throw ValidationError("config: gvd utts_per_speaker must be >= 0 (0 = all)");
    }
    if (const Json* e = find(*m, "deid")) {
      require_keys(*e, "metrics.deid", {"enabled", "utts_per_speaker", "seed"});
      config.metrics.deid.enabled = e->value("enabled", true);
      config.metrics.deid.utts_per_speaker = e->value("utts_per_speaker", 5);
      if (const Json* s = find(*e, "seed"))
        config.metrics.deid.seed = s->get<std::uint64_t>();
      else if (config.metrics.deid.enabled && config.metrics.deid.utts_per_speaker > 0)
        throw ValidationError("config: metrics.deid needs a 'seed' when sampling utterances");
    }
  }

  if (const Json* reds = find(j, "reductions")) {
    if (!reds->is_array()) throw ValidationError("config: 'reductions' must be an array");
    for (const Json& r : *reds) {
      require_keys(r, "reduction", {"dataset", "condition", "space", "strategy", "amount", "seed"});
      ReductionConfig rc;
      rc.dataset = get_string(r, "dataset", "reduction");
      if (!seen_names.count(rc.dataset))
        throw ValidationError("config: reduction references unknown dataset '" + rc.dataset +
                              "'");
      if (const Json* c = find(r, "condition"))
        rc.condition = parse_condition(c->get<std::string>());
      if (const Json* s = find(r, "space")) rc.space = parse_space(s->get<std::string>());
      rc.spec.strategy = parse_reduction_strategy(get_string(r, "strategy", "reduction"));
      rc.spec.amount = r.value("amount", 0);
      if (rc.spec.strategy != ReductionStrategy::kAll) {
        if (rc.spec.amount < 1) throw ValidationError("config: reduction amount must be >= 1");
        const Json* s = find(r, "seed");
        if (!s) throw ValidationError("config: reduction needs a 'seed'");
        rc.spec.seed = s->get<std::uint64_t>();
      }
      config.reductions.push_back(std::move(rc));
    }
  }

  // env overrides
  if (const char* env = std::getenv("VPEVAL_CACHE_DIR")) {
    if (*env) config.cache_dir = fs::path(env);
  }
  if (const char* env = std::getenv("VPEVAL_PARALLELISM")) {
    if (*env) {
      long v = parse_long(env);
      if (v < 1) throw ValidationError("VPEVAL_PARALLELISM must be >= 1");
      config.parallelism = static_cast<int>(v);
    }
  }
  return config;
}

PipelineConfig load_pipeline_config(const fs::path& path) {
  const std::string ext = to_lower(path.extension().string());
  Json tree;
  if (ext == ".json") {
    tree = parse_json_file(path);
  } else if (ext == ".yaml" || ext == ".yml") {
    try {
      tree = yaml_to_json(YAML::LoadFile(path.string()));
    } catch (const YAML::Exception& e) {
      throw ValidationError(path.string() + ": invalid YAML: " + e.what());
    }
  } else {
    throw ValidationError("config must be .json, .yaml or .yml: " + path.string());
  }
  return pipeline_config_from_json(tree, path.parent_path());
}

void check_config_files(const PipelineConfig& config) {
  std::vector<std::string> missing;
  auto need = [&](const fs::path& p) {
    if (!p.empty() && !fs::exists(p)) missing.push_back(p.string());
  };
  for (const DatasetConfig& ds : config.datasets) {
    for (const auto& e : ds.embeddings) need(e.path);
    need(ds.enrollment_map);
    for (const auto& [label, p] : ds.trials) need(p);
    need(ds.reference_transcripts);
    for (const auto& [label, p] : ds.hypotheses) need(p);
  }
  need(config.backend.plda_model);
  if (!missing.empty()) {
    std::string msg = "config references missing files:";
    for (const auto& m : missing) msg += " " + m;
    throw ValidationError(msg);
  }
}

}  // namespace vpeval
