// vpeval/wer.h

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

#ifndef VPEVAL_WER_H_
#define VPEVAL_WER_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vpeval {

struct TranscriptSet;  // corpus.h

// ASCII lowercasing, punctuation stripping, whitespace tokenization. The
// default keep-set retains apostrophes so contractions survive as one token.
// Non-ASCII bytes pass through unchanged.
struct TextNormalizer {
  std::string keep_punctuation = "'";
  std::vector<std::string> normalize(const std::string& raw) const;
};

std::vector<std::string> normalize_text(const std::string& raw);

struct WerResult {
  long substitutions = 0;
  long deletions = 0;
  long insertions = 0;
  long reference_tokens = 0;
  double wer = 0.0;  // (S+D+I)/N
};

struct AlignmentCounts {
  long substitutions = 0;
  long deletions = 0;
  long insertions = 0;
};

// Levenshtein alignment with unit costs. Ties between a substitution and an
// insertion+deletion pair resolve toward the substitution.
AlignmentCounts align_tokens(const std::vector<std::string>& ref,
                             const std::vector<std::string>& hyp);

// Corpus-level WER: edits summed over utterances divided by total reference
// length. Missing hypotheses count as full deletions (warned). Optional dump
// receives one TSV row per utterance: utt, S, D, I, N.
WerResult wer(const TranscriptSet& ref, const TranscriptSet& hyp,
              std::vector<std::string>* alignment_dump = nullptr);

}  // namespace vpeval

#endif  // VPEVAL_WER_H_
