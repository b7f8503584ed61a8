// vpeval/corpus.h

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

#ifndef VPEVAL_CORPUS_H_
#define VPEVAL_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace vpeval {

// Processing state of the audio an embedding/transcript was extracted from.
enum class Condition { kOriginal, kAnonymized, kResynthesized };
// Which verification model produced the embeddings: one trained on original
// speech (eval) or one trained on anonymized speech (eval_anon).
enum class Space { kEval, kEvalAnon };

const char* condition_name(Condition c);
const char* space_name(Space s);
Condition parse_condition(const std::string& name);
Space parse_space(const std::string& name);

// ---------------------------------------------------------------------------
// EmbeddingSet: utterance-indexed speaker vectors, stored row-major and
// sorted by utterance id. Immutable after construction/loading.
// ---------------------------------------------------------------------------
class EmbeddingSet {
 public:
  EmbeddingSet() = default;
  // entries: (utt, speaker, vector). Validates ids, dimension consistency and
  // finiteness; sorts by utterance id.
  EmbeddingSet(std::string dataset, Condition condition, Space space,
               std::vector<std::tuple<std::string, std::string, std::vector<double>>> entries);

  const std::string& dataset() const { return dataset_; }
  Condition condition() const { return condition_; }
  Space space() const { return space_; }
  int dim() const { return dim_; }
  std::size_t size() const { return utts_.size(); }

  const std::string& utt(std::size_t i) const { return utts_[i]; }
  const std::string& speaker(std::size_t i) const { return speakers_[i]; }
  std::span<const double> vec(std::size_t i) const {
    return {data_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }

  // Row index of an utterance id, if present.
  std::optional<std::size_t> find(const std::string& utt) const;

  // speaker -> row indices, utterance-sorted. Deterministic iteration order.
  std::map<std::string, std::vector<std::size_t>> speaker_table() const;
  std::vector<std::string> speakers_sorted() const;

  // Mean over all rows.
  std::vector<double> mean() const;

  // True when both sets name the same physical collection (dataset,
  // condition, space). Same-set square similarity matrices exclude
  // identical-utterance pairs on their diagonal.
  bool same_collection(const EmbeddingSet& other) const;

  EmbeddingSet with_entries(
      std::vector<std::tuple<std::string, std::string, std::vector<double>>> entries) const;

 private:
  std::string dataset_;
  Condition condition_ = Condition::kOriginal;
  Space space_ = Space::kEval;
  int dim_ = 0;
  std::vector<std::string> utts_;      // sorted
  std::vector<std::string> speakers_;  // parallel to utts_
  std::vector<double> data_;           // row-major size x dim
  std::unordered_map<std::string, std::size_t> index_;
};

// JSON-lines loader: one {"utt":..,"spk":..,"emb":[..]} object per line, with
// an optional sidecar manifest "<path>.manifest.json" carrying dataset name,
// condition, space and dim. Errors carry 1-based line numbers.
EmbeddingSet load_embeddings(const std::filesystem::path& path,
                             std::optional<int> expected_dim = std::nullopt);
// Canonical writer (sorted by utterance, 17-significant-digit floats).
// Also writes the sidecar manifest.
void write_embeddings(const std::filesystem::path& path, const EmbeddingSet& set);

// ---------------------------------------------------------------------------
// Transcripts
// ---------------------------------------------------------------------------
struct TranscriptSet {
  std::map<std::string, std::vector<std::string>> entries;
  // Utterances whose text normalized to nothing; allowed but worth flagging.
  std::vector<std::string> empty_utts;
};

// "utt<TAB>text" lines; text is normalized on load.
TranscriptSet load_transcripts(const std::filesystem::path& path);
void write_transcripts(const std::filesystem::path& path, const TranscriptSet& set);

// ---------------------------------------------------------------------------
// Trials and scores
// ---------------------------------------------------------------------------
struct Trial {
  std::string enroll_id;
  std::string utt_id;
  bool target = false;
};

struct TrialList {
  std::string condition_label;
  std::vector<Trial> trials;

  std::size_t target_count() const;
  std::size_t nontarget_count() const;
};

enum class ScoreKind { kLlr, kCosine };
const char* score_kind_name(ScoreKind k);
ScoreKind parse_score_kind(const std::string& name);

struct ScoredTrial {
  std::string enroll_id;
  std::string utt_id;
  bool target = false;
  double score = 0.0;
};

struct ScoreSet {
  ScoreKind kind = ScoreKind::kLlr;
  std::vector<ScoredTrial> trials;

  std::vector<double> target_scores() const;
  std::vector<double> nontarget_scores() const;
};

// CSV "enroll_id,utt_id,label"; label in {target, nontarget}.
TrialList load_trials(const std::filesystem::path& path, const std::string& condition_label = "");
void write_trials(const std::filesystem::path& path, const TrialList& list);

// CSV "enroll_id,utt_id,label,score".
ScoreSet load_scores(const std::filesystem::path& path, ScoreKind kind = ScoreKind::kLlr);
void write_scores(const std::filesystem::path& path, const ScoreSet& scores);

// Verifies the scores join one-to-one against the trial list (same keys,
// same labels, same cardinality).
void check_scores_match_trials(const ScoreSet& scores, const TrialList& trials);

}  // namespace vpeval

#endif  // VPEVAL_CORPUS_H_
