// vpeval/serialize.cc

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

#include "vpeval/serialize.h"

#include <cmath>

#include "vpeval/common.h"

namespace vpeval {

namespace {
Json optional_number(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}
}  // namespace

Json to_json(const EmbeddingSet& set) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto v = set.vec(i);
    entries.push_back(
        Json::array({set.utt(i), set.speaker(i), std::vector<double>(v.begin(), v.end())}));
  }
  return Json{{"dataset", set.dataset()},
              {"condition", condition_name(set.condition())},
              {"space", space_name(set.space())},
              {"dim", set.dim()},
              {"entries", std::move(entries)}};
}

EmbeddingSet embedding_set_from_json(const Json& j) {
  std::vector<std::tuple<std::string, std::string, std::vector<double>>> entries;
  for (const Json& rec : j.at("entries")) {
    entries.emplace_back(rec.at(0).get<std::string>(), rec.at(1).get<std::string>(),
                         rec.at(2).get<std::vector<double>>());
  }
  return EmbeddingSet(j.at("dataset").get<std::string>(),
                      parse_condition(j.at("condition").get<std::string>()),
                      parse_space(j.at("space").get<std::string>()), std::move(entries));
}

Json to_json(const EnrollmentModelSet& set) {
  Json models = Json::object();
  for (const auto& [id, model] : set.models)
    models[id] = Json{{"spk", model.speaker}, {"vec", model.vec}};
  return Json{{"dim", set.dim}, {"models", std::move(models)}};
}

EnrollmentModelSet enrollment_set_from_json(const Json& j) {
  EnrollmentModelSet set;
  set.dim = j.at("dim").get<int>();
  for (const auto& [id, model] : j.at("models").items()) {
    set.models.emplace(id, EnrollmentModel{model.at("spk").get<std::string>(),
                                           model.at("vec").get<std::vector<double>>()});
  }
  return set;
}

Json to_json(const ScoreSet& scores) {
  Json trials = Json::array();
  for (const ScoredTrial& t : scores.trials)
    trials.push_back(Json::array({t.enroll_id, t.utt_id, t.target ? 1 : 0, t.score}));
  return Json{{"kind", score_kind_name(scores.kind)}, {"trials", std::move(trials)}};
}

ScoreSet score_set_from_json(const Json& j) {
  ScoreSet set;
  set.kind = parse_score_kind(j.at("kind").get<std::string>());
  for (const Json& rec : j.at("trials")) {
    set.trials.push_back({rec.at(0).get<std::string>(), rec.at(1).get<std::string>(),
                          rec.at(2).get<int>() != 0, rec.at(3).get<double>()});
  }
  return set;
}

Json to_json(const SimilarityMatrix& m) {
  return Json{{"row_speakers", m.row_speakers},
              {"col_speakers", m.col_speakers},
              {"values", m.values},
              {"utts_per_speaker", m.utts_per_speaker},
              {"seed", m.seed},
              {"pair_evaluations", m.pair_evaluations}};
}

SimilarityMatrix similarity_from_json(const Json& j) {
  SimilarityMatrix m;
  m.row_speakers = j.at("row_speakers").get<std::vector<std::string>>();
  m.col_speakers = j.at("col_speakers").get<std::vector<std::string>>();
  m.values = j.at("values").get<std::vector<double>>();
  m.utts_per_speaker = j.at("utts_per_speaker").get<int>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.pair_evaluations = j.at("pair_evaluations").get<std::uint64_t>();
  if (m.values.size() != m.row_speakers.size() * m.col_speakers.size())
    throw ValidationError("similarity json: value count mismatch");
  return m;
}

Json to_json(const PrivacyResult& r) {
  Json j;
  j["condition"] = r.condition_label;
  j["n_target"] = r.n_target;
  j["n_nontarget"] = r.n_nontarget;
  if (r.eer) j["eer"] = *r.eer;
  if (r.eer_threshold) j["eer_threshold"] = *r.eer_threshold;
  if (r.cllr_bits) j["cllr"] = *r.cllr_bits;
  if (r.min_cllr_bits) j["min_cllr"] = *r.min_cllr_bits;
  if (r.dsys) j["dsys"] = *r.dsys;
  if (r.d_ece) j["d_ece"] = *r.d_ece;
  if (r.worst_case_loglr) j["worst_case_loglr"] = optional_number(r.worst_case_loglr);
  if (r.zebra_tag) j["zebra_tag"] = *r.zebra_tag;
  return j;
}

Json to_json(const WerResult& r) {
  return Json{{"substitutions", r.substitutions},
              {"deletions", r.deletions},
              {"insertions", r.insertions},
              {"reference_tokens", r.reference_tokens},
              {"wer", r.wer}};
}

}  // namespace vpeval
