// vpeval/scoring.h

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

#ifndef VPEVAL_SCORING_H_
#define VPEVAL_SCORING_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vpeval/corpus.h"
#include "vpeval/plda.h"

namespace vpeval {

enum class Backend { kCosine, kPlda };
const char* backend_name(Backend b);
Backend parse_backend(const std::string& name);

// Centering and/or length normalization. Centering uses reference_mean when
// given, else the set's own mean. Zero vectors skip normalization with a
// warning.
EmbeddingSet preprocess(const EmbeddingSet& set, bool center, bool length_norm,
                        const std::vector<double>* reference_mean = nullptr);

// dot(a,b) / (|a| |b|), in [-1, 1]. Errors on zero-norm input.
double cosine_score(std::span<const double> a, std::span<const double> b);

double sigmoid(double x);

struct EnrollmentModel {
  std::string speaker;
  std::vector<double> vec;
};

struct EnrollmentModelSet {
  int dim = 0;
  std::map<std::string, EnrollmentModel> models;  // enroll-model-id -> model
};

// Arithmetic mean of the listed utterance vectors per enrollment model,
// optionally re-length-normalized. All listed utterances must exist and share
// one speaker.
EnrollmentModelSet build_enrollment_models(
    const EmbeddingSet& set,
    const std::map<std::string, std::vector<std::string>>& enrollment_map, bool renorm);

// One score per trial; deterministic and order-independent. Unresolvable
// enroll-model or utterance ids are collected and reported together.
ScoreSet score_trials(Backend backend, const PldaModel* model,
                      const EnrollmentModelSet& enrolls, const EmbeddingSet& embeddings,
                      const TrialList& trials);

}  // namespace vpeval

#endif  // VPEVAL_SCORING_H_
