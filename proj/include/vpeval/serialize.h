// vpeval/serialize.h

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

// JSON forms of the domain types, used for cache artifacts and CLI output.
// All emitters produce documents whose canonical_dump is deterministic.

#ifndef VPEVAL_SERIALIZE_H_
#define VPEVAL_SERIALIZE_H_

#include "vpeval/corpus.h"
#include "vpeval/json_util.h"
#include "vpeval/privacy.h"
#include "vpeval/scoring.h"
#include "vpeval/similarity.h"
#include "vpeval/wer.h"

namespace vpeval {

Json to_json(const EmbeddingSet& set);
EmbeddingSet embedding_set_from_json(const Json& j);

Json to_json(const EnrollmentModelSet& set);
EnrollmentModelSet enrollment_set_from_json(const Json& j);

Json to_json(const ScoreSet& scores);
ScoreSet score_set_from_json(const Json& j);

Json to_json(const SimilarityMatrix& m);
SimilarityMatrix similarity_from_json(const Json& j);

Json to_json(const PrivacyResult& r);
Json to_json(const WerResult& r);

}  // namespace vpeval

#endif  // VPEVAL_SERIALIZE_H_
