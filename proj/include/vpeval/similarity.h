// vpeval/similarity.h

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

#ifndef VPEVAL_SIMILARITY_H_
#define VPEVAL_SIMILARITY_H_

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vpeval/corpus.h"
#include "vpeval/scoring.h"

namespace vpeval {

// Speakers x speakers matrix of sigmoid-mapped mean pairwise scores.
struct SimilarityMatrix {
  std::vector<std::string> row_speakers;  // sorted
  std::vector<std::string> col_speakers;  // sorted
  std::vector<double> values;             // row-major, in (0,1)
  int utts_per_speaker = 0;               // 0 = all
  std::uint64_t seed = 0;
  std::uint64_t pair_evaluations = 0;     // scored pairs across all cells

  bool square() const;
  double at(std::size_t r, std::size_t c) const {
    return values[r * col_speakers.size() + c];
  }
};

// M(i,j) = sigmoid(mean score over sampled cross pairs between speaker i rows
// (from emb_a) and speaker j columns (from emb_b)). Per speaker,
// utts_per_speaker utterances are drawn uniformly without replacement,
// deterministically from the seed; speakers with fewer utterances keep all of
// them, and utts_per_speaker = 0 means all. When both sets are the same
// collection, identical-utterance pairs are excluded (they would score a
// vector against itself); cross-collection pairs with equal ids are kept,
// the two sides being distinct recordings.
//
// Cell means use a fixed pairwise summation tree over utterance-sorted pairs,
// so results are byte-stable for any thread count.
SimilarityMatrix build_similarity_matrix(const EmbeddingSet& emb_a, const EmbeddingSet& emb_b,
                                         Backend backend, const PldaModel* model,
                                         int utts_per_speaker, std::uint64_t seed,
                                         int threads = 1);

// Diagonal dominance: |mean(diagonal) - mean(off-diagonal)|. Square matrices
// with at least 2 speakers only.
double ddiag(const SimilarityMatrix& m);

// 10*log10(ddiag(anon)/ddiag(orig)) in dB. 0 dB means distinctiveness is
// preserved. Returns -infinity when ddiag(anon) is 0; errors when
// ddiag(orig) is 0.
double gain_vd(const SimilarityMatrix& m_orig, const SimilarityMatrix& m_anon);

// clamp(1 - ddiag(oa)/ddiag(oo), 0, 1); 1 = perfect de-identification. m_oa
// is the original-rows x anonymized-columns cross matrix.
double de_identification(const SimilarityMatrix& m_oo, const SimilarityMatrix& m_oa);

enum class GvdStrategy { kEvalOnly, kAnonOnly, kBoth };
const char* gvd_strategy_name(GvdStrategy s);
GvdStrategy parse_gvd_strategy(const std::string& name);

using EmbeddingKey = std::pair<Condition, Space>;

// Which (condition, space) pair feeds the original-space matrix and which
// feeds the anonymized-space matrix, given the evaluation-model strategy.
// Errors when a required embedding space is missing from `available`.
std::pair<EmbeddingKey, EmbeddingKey> gvd_model_strategy(
    const std::set<EmbeddingKey>& available, GvdStrategy strategy);

// CSV with a speaker header row and one row per row-speaker.
void write_similarity_csv(const std::filesystem::path& path, const SimilarityMatrix& m);
SimilarityMatrix load_similarity_csv(const std::filesystem::path& path);

}  // namespace vpeval

#endif  // VPEVAL_SIMILARITY_H_
