// vpeval/scoring.cc

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

#include "vpeval/scoring.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "vpeval/common.h"
#include "vpeval/kernels.h"

namespace vpeval {

const char* backend_name(Backend b) { return b == Backend::kCosine ? "cosine" : "plda"; }

Backend parse_backend(const std::string& name) {
  if (name == "cosine") return Backend::kCosine;
  if (name == "plda") return Backend::kPlda;
  throw ValidationError("unknown backend: '" + name + "'");
}

EmbeddingSet preprocess(const EmbeddingSet& set, bool center, bool length_norm,
                        const std::vector<double>* reference_mean) {
  const std::size_t d = static_cast<std::size_t>(set.dim());
  std::vector<double> mean;
  if (center) {
    if (reference_mean) {
      if (reference_mean->size() != d)
        throw ValidationError("preprocess: reference mean has dimension " +
                              std::to_string(reference_mean->size()) + ", expected " +
                              std::to_string(d));
      mean = *reference_mean;
    } else {
      mean = set.mean();
    }
  }

  std::vector<std::tuple<std::string, std::string, std::vector<double>>> entries;
  entries.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto src = set.vec(i);
    std::vector<double> v(src.begin(), src.end());
    if (center) kernels::subtract_inplace(v, mean);
    if (length_norm) {
      double norm = std::sqrt(kernels::squared_norm(v));
      if (norm > 0.0) {
        kernels::scale_inplace(v, 1.0 / norm);
      } else {
        warn("preprocess: zero-norm vector left unchanged: '" + set.utt(i) + "'");
      }
    }
    entries.emplace_back(set.utt(i), set.speaker(i), std::move(v));
  }
  return set.with_entries(std::move(entries));
}

double cosine_score(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ComputeError("cosine_score: dimension mismatch");
  const double na = kernels::squared_norm(a);
  const double nb = kernels::squared_norm(b);
  if (na == 0.0 || nb == 0.0) throw ComputeError("cosine_score: zero vector");
  double value = kernels::dot(a, b) / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(value, -1.0, 1.0);
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

EnrollmentModelSet build_enrollment_models(
    const EmbeddingSet& set,
    const std::map<std::string, std::vector<std::string>>& enrollment_map, bool renorm) {
  if (enrollment_map.empty()) throw ValidationError("build_enrollment_models: empty map");
  EnrollmentModelSet out;
  out.dim = set.dim();
  for (const auto& [enroll_id, utts] : enrollment_map) {
    if (utts.empty())
      throw ValidationError("enrollment model '" + enroll_id + "': empty utterance list");
    std::vector<double> acc(static_cast<std::size_t>(set.dim()), 0.0);
    std::string speaker;
    for (const std::string& utt : utts) {
      auto row = set.find(utt);
      if (!row)
        throw ValidationError("enrollment model '" + enroll_id + "': utterance '" + utt +
                              "' not found");
      if (speaker.empty()) {
        speaker = set.speaker(*row);
      } else if (speaker != set.speaker(*row)) {
        throw ValidationError("enrollment model '" + enroll_id + "': mixes speakers '" + speaker +
                              "' and '" + set.speaker(*row) + "'");
      }
      kernels::add_inplace(acc, set.vec(*row));
    }
    kernels::scale_inplace(acc, 1.0 / static_cast<double>(utts.size()));
    if (renorm) {
      double norm = std::sqrt(kernels::squared_norm(acc));
      if (norm > 0.0) kernels::scale_inplace(acc, 1.0 / norm);
    }
    out.models.emplace(enroll_id, EnrollmentModel{std::move(speaker), std::move(acc)});
  }
  return out;
}

ScoreSet score_trials(Backend backend, const PldaModel* model,
                      const EnrollmentModelSet& enrolls, const EmbeddingSet& embeddings,
                      const TrialList& trials) {
  if (backend == Backend::kPlda && !model)
    throw ValidationError("score_trials: plda backend requires a model");
  if (enrolls.dim != embeddings.dim())
    throw ValidationError("score_trials: enrollment dim " + std::to_string(enrolls.dim) +
                          " vs embedding dim " + std::to_string(embeddings.dim()));

  // Validate every id up front so one pass reports all gaps.
  std::set<std::string> missing_enrolls, missing_utts;
  for (const Trial& t : trials.trials) {
    if (!enrolls.models.count(t.enroll_id)) missing_enrolls.insert(t.enroll_id);
    if (!embeddings.find(t.utt_id)) missing_utts.insert(t.utt_id);
  }
  if (!missing_enrolls.empty() || !missing_utts.empty()) {
    std::string msg = "score_trials: unresolvable ids;";
    if (!missing_enrolls.empty()) {
      msg += " enroll-models:";
      for (const auto& id : missing_enrolls) msg += " " + id;
    }
    if (!missing_utts.empty()) {
      msg += " utterances:";
      for (const auto& id : missing_utts) msg += " " + id;
    }
    throw ValidationError(msg);
  }

  std::optional<PldaScorer> scorer;
  if (backend == Backend::kPlda) scorer.emplace(*model);

  ScoreSet out;
  out.kind = backend == Backend::kPlda ? ScoreKind::kLlr : ScoreKind::kCosine;
  out.trials.reserve(trials.trials.size());
  for (const Trial& t : trials.trials) {
    const EnrollmentModel& e = enrolls.models.at(t.enroll_id);
    auto test = embeddings.vec(*embeddings.find(t.utt_id));
    double score = backend == Backend::kPlda ? scorer->score(e.vec, test)
                                             : cosine_score(e.vec, test);
    out.trials.push_back({t.enroll_id, t.utt_id, t.target, score});
  }
  return out;
}

}  // namespace vpeval
