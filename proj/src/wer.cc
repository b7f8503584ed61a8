// vpeval/wer.cc

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

#include "vpeval/wer.h"

#include <cctype>

#include "vpeval/common.h"
#include "vpeval/corpus.h"

namespace vpeval {

std::vector<std::string> TextNormalizer::normalize(const std::string& raw) const {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(current);
      current.clear();
    }
  };
  for (char ch : raw) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      flush();
    } else if (std::ispunct(c) && keep_punctuation.find(ch) == std::string::npos) {
      // stripped
    } else {
      current += static_cast<char>(std::tolower(c));
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> normalize_text(const std::string& raw) {
  return TextNormalizer{}.normalize(raw);
}

// Row-wise Levenshtein with backpointers. On equal total cost the diagonal
// move wins, so a one-token difference reports as a substitution rather than
// an insertion plus a deletion.
AlignmentCounts align_tokens(const std::vector<std::string>& ref,
                             const std::vector<std::string>& hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<long> cost((n + 1) * (m + 1));
  std::vector<unsigned char> move((n + 1) * (m + 1));  // 0 diag, 1 del, 2 ins
  auto at = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };
  for (std::size_t i = 0; i <= n; ++i) {
    cost[at(i, 0)] = static_cast<long>(i);
    move[at(i, 0)] = 1;
  }
  for (std::size_t j = 0; j <= m; ++j) {
    cost[at(0, j)] = static_cast<long>(j);
    move[at(0, j)] = 2;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      long diag = cost[at(i - 1, j - 1)] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      long del = cost[at(i - 1, j)] + 1;
      long ins = cost[at(i, j - 1)] + 1;
      long best = diag;
      unsigned char mv = 0;
      if (del < best) {
        best = del;
        mv = 1;
      }
      if (ins < best) {
        best = ins;
        mv = 2;
      }
      cost[at(i, j)] = best;
      move[at(i, j)] = mv;
    }
  }
  AlignmentCounts counts;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    unsigned char mv = move[at(i, j)];
    if (mv == 0 && i > 0 && j > 0) {
      if (ref[i - 1] != hyp[j - 1]) ++counts.substitutions;
      --i;
      --j;
    } else if (mv == 1 && i > 0) {
      ++counts.deletions;
      --i;
    } else {
      ++counts.insertions;
      --j;
    }
  }
  return counts;
}

WerResult wer(const TranscriptSet& ref, const TranscriptSet& hyp,
              std::vector<std::string>* alignment_dump) {
  if (ref.entries.empty()) throw ComputeError("empty reference corpus");
  WerResult result;
  static const std::vector<std::string> kEmpty;
  for (const auto& [utt, ref_tokens] : ref.entries) {
    const std::vector<std::string>* hyp_tokens = &kEmpty;
    auto it = hyp.entries.find(utt);
    if (it != hyp.entries.end()) {
      hyp_tokens = &it->second;
    } else {
      warn("missing hypothesis for '" + utt + "', counting as deletions");
    }
    AlignmentCounts counts = align_tokens(ref_tokens, *hyp_tokens);
    result.substitutions += counts.substitutions;
    result.deletions += counts.deletions;
    result.insertions += counts.insertions;
    result.reference_tokens += static_cast<long>(ref_tokens.size());
    if (alignment_dump) {
      alignment_dump->push_back(utt + "\t" + std::to_string(counts.substitutions) + "\t" +
                                std::to_string(counts.deletions) + "\t" +
                                std::to_string(counts.insertions) + "\t" +
                                std::to_string(ref_tokens.size()));
    }
  }
  if (result.reference_tokens == 0) throw ComputeError("reference corpus has no tokens");
  result.wer = static_cast<double>(result.substitutions + result.deletions + result.insertions) /
               static_cast<double>(result.reference_tokens);
  return result;
}

}  // namespace vpeval
