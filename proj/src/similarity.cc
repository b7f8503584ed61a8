// vpeval/similarity.cc

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

#include "vpeval/similarity.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <random>
#include <thread>

#include "vpeval/common.h"
#include "vpeval/json_util.h"
#include "vpeval/kernels.h"

namespace vpeval {

bool SimilarityMatrix::square() const { return row_speakers == col_speakers; }

namespace {

std::string collection_tag(const EmbeddingSet& set) {
  return set.dataset() + "/" + condition_name(set.condition()) + "/" + space_name(set.space());
}

// Per-speaker subset: first k entries of a seeded permutation of the
// utterance-sorted row indices, re-sorted for a deterministic pair order.
// Keyed by collection+speaker so the row and column side of a same-collection
// matrix pick identical subsets.
std::vector<std::size_t> sample_rows(const std::vector<std::size_t>& rows, int k,
                                     std::uint64_t seed, const std::string& collection,
                                     const std::string& speaker) {
  if (k <= 0 || static_cast<std::size_t>(k) >= rows.size()) return rows;
  std::vector<std::size_t> perm = rows;
  std::mt19937_64 rng(seed ^ fnv1a64(collection) ^ fnv1a64(speaker));
  std::shuffle(perm.begin(), perm.end(), rng);
  perm.resize(static_cast<std::size_t>(k));
  std::sort(perm.begin(), perm.end());
  return perm;
}

}  // namespace

SimilarityMatrix build_similarity_matrix(const EmbeddingSet& emb_a, const EmbeddingSet& emb_b,
                                         Backend backend, const PldaModel* model,
                                         int utts_per_speaker, std::uint64_t seed, int threads) {
  if (emb_a.dim() != emb_b.dim())
    throw ValidationError("similarity: embedding dims differ (" + std::to_string(emb_a.dim()) +
                          " vs " + std::to_string(emb_b.dim()) + ")");
  if (utts_per_speaker < 0) throw ValidationError("similarity: utts_per_speaker must be >= 0");
  if (backend == Backend::kPlda && !model)
    throw ValidationError("similarity: plda backend requires a model");

  auto table_a = emb_a.speaker_table();
  auto table_b = emb_b.speaker_table();
  const std::string tag_a = collection_tag(emb_a);
  const std::string tag_b = collection_tag(emb_b);
  const bool same_set = emb_a.same_collection(emb_b);

  SimilarityMatrix m;
  m.utts_per_speaker = utts_per_speaker;
  m.seed = seed;
  for (const auto& [spk, rows] : table_a) m.row_speakers.push_back(spk);
  for (const auto& [spk, rows] : table_b) m.col_speakers.push_back(spk);

  std::vector<std::vector<std::size_t>> rows_a, rows_b;
  rows_a.reserve(m.row_speakers.size());
  for (const auto& spk : m.row_speakers)
    rows_a.push_back(sample_rows(table_a.at(spk), utts_per_speaker, seed, tag_a, spk));
  rows_b.reserve(m.col_speakers.size());
  for (const auto& spk : m.col_speakers)
    rows_b.push_back(sample_rows(table_b.at(spk), utts_per_speaker, seed, tag_b, spk));

  std::optional<PldaScorer> scorer;
  if (backend == Backend::kPlda) scorer.emplace(*model);

  const std::size_t nrow = m.row_speakers.size();
  const std::size_t ncol = m.col_speakers.size();
  m.values.assign(nrow * ncol, 0.0);
  std::atomic<std::uint64_t> pair_count{0};

  auto fill_rows = [&](std::size_t r_begin, std::size_t r_end) {
    std::vector<double> pair_scores;
    std::uint64_t local_pairs = 0;
    for (std::size_t r = r_begin; r < r_end; ++r) {
      for (std::size_t c = 0; c < ncol; ++c) {
        pair_scores.clear();
        for (std::size_t ia : rows_a[r]) {
          for (std::size_t ib : rows_b[c]) {
            if (same_set && emb_a.utt(ia) == emb_b.utt(ib)) continue;
            double s = backend == Backend::kPlda
                           ? scorer->score(emb_a.vec(ia), emb_b.vec(ib))
                           : cosine_score(emb_a.vec(ia), emb_b.vec(ib));
            pair_scores.push_back(s);
          }
        }
        if (pair_scores.empty())
          throw ComputeError("similarity: no scorable pairs for (" + m.row_speakers[r] + ", " +
                             m.col_speakers[c] + "); same-set diagonals need >= 2 utterances");
        local_pairs += pair_scores.size();
        double mean =
            kernels::pairwise_sum(pair_scores) / static_cast<double>(pair_scores.size());
        m.values[r * ncol + c] =
            std::clamp(sigmoid(mean), 1e-15, 1.0 - 1e-15);
      }
    }
    pair_count += local_pairs;
  };

  threads = std::max(1, threads);
  if (threads == 1 || nrow < 2) {
    fill_rows(0, nrow);
  } else {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), nrow);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (nrow + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          fill_rows(w * chunk, std::min(nrow, (w + 1) * chunk));
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  m.pair_evaluations = pair_count.load();
  return m;
}

double ddiag(const SimilarityMatrix& m) {
  if (!m.square()) throw ComputeError("ddiag: matrix is not square over one speaker inventory");
  const std::size_t n = m.row_speakers.size();
  if (n < 2) throw ComputeError("ddiag: need at least 2 speakers");
  std::vector<double> diag, off;
  diag.reserve(n);
  off.reserve(n * n - n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      (r == c ? diag : off).push_back(m.at(r, c));
  const double diag_mean = kernels::pairwise_sum(diag) / static_cast<double>(diag.size());
  const double off_mean = kernels::pairwise_sum(off) / static_cast<double>(off.size());
  return std::abs(diag_mean - off_mean);
}

namespace {
void check_same_speakers(const SimilarityMatrix& a, const SimilarityMatrix& b, const char* what) {
  if (a.row_speakers != b.row_speakers || a.col_speakers != b.col_speakers)
    throw ComputeError(std::string(what) + ": speaker inventories differ");
}
}  // namespace

double gain_vd(const SimilarityMatrix& m_orig, const SimilarityMatrix& m_anon) {
  check_same_speakers(m_orig, m_anon, "gain_vd");
  const double d_orig = ddiag(m_orig);
  if (d_orig == 0.0) throw ComputeError("gain_vd: original matrix has zero diagonal dominance");
  const double d_anon = ddiag(m_anon);
  if (d_anon == 0.0) return -HUGE_VAL;
  return 10.0 * std::log10(d_anon / d_orig);
}

double de_identification(const SimilarityMatrix& m_oo, const SimilarityMatrix& m_oa) {
  check_same_speakers(m_oo, m_oa, "de_identification");
  const double d_oo = ddiag(m_oo);
  if (d_oo == 0.0)
    throw ComputeError("de_identification: original matrix has zero diagonal dominance");
  return std::clamp(1.0 - ddiag(m_oa) / d_oo, 0.0, 1.0);
}

const char* gvd_strategy_name(GvdStrategy s) {
  switch (s) {
    case GvdStrategy::kEvalOnly: return "eval_only";
    case GvdStrategy::kAnonOnly: return "anon_only";
    case GvdStrategy::kBoth: return "both";
  }
  return "unknown";
}

GvdStrategy parse_gvd_strategy(const std::string& name) {
  if (name == "eval_only") return GvdStrategy::kEvalOnly;
  if (name == "anon_only") return GvdStrategy::kAnonOnly;
  if (name == "both") return GvdStrategy::kBoth;
  throw ValidationError("unknown gvd strategy: '" + name + "'");
}

std::pair<EmbeddingKey, EmbeddingKey> gvd_model_strategy(
    const std::set<EmbeddingKey>& available, GvdStrategy strategy) {
  Space orig_space = Space::kEval;
  Space anon_space = Space::kEval;
  switch (strategy) {
    case GvdStrategy::kEvalOnly:
      break;
    case GvdStrategy::kAnonOnly:
      orig_space = Space::kEvalAnon;
      anon_space = Space::kEvalAnon;
      break;
    case GvdStrategy::kBoth:
      anon_space = Space::kEvalAnon;
      break;
  }
  EmbeddingKey orig_key{Condition::kOriginal, orig_space};
  EmbeddingKey anon_key{Condition::kAnonymized, anon_space};
  for (const EmbeddingKey& key : {orig_key, anon_key}) {
    if (!available.count(key))
      throw ValidationError(std::string("gvd strategy ") + gvd_strategy_name(strategy) +
                            ": missing embeddings for (" + condition_name(key.first) + ", " +
                            space_name(key.second) + ")");
  }
  return {orig_key, anon_key};
}

void write_similarity_csv(const std::filesystem::path& path, const SimilarityMatrix& m) {
  std::string out = "speaker";
  for (const auto& spk : m.col_speakers) out += "," + spk;
  out += "\n";
  const std::size_t ncol = m.col_speakers.size();
  for (std::size_t r = 0; r < m.row_speakers.size(); ++r) {
    out += m.row_speakers[r];
    for (std::size_t c = 0; c < ncol; ++c) out += "," + format_g17(m.values[r * ncol + c]);
    out += "\n";
  }
  write_text_file_atomic(path, out);
}

SimilarityMatrix load_similarity_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open similarity csv: " + path.string());
  SimilarityMatrix m;
  std::string line;
  if (!std::getline(in, line)) throw ValidationError(path.string() + ": empty file");
  auto header = split(trim(line), ',');
  if (header.size() < 2 || header[0] != "speaker")
    throw ValidationError(path.string() + ": expected 'speaker,<col...>' header");
  m.col_speakers.assign(header.begin() + 1, header.end());
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != header.size())
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": wrong field count");
    m.row_speakers.push_back(trim(fields[0]));
    for (std::size_t c = 1; c < fields.size(); ++c) m.values.push_back(parse_double(fields[c]));
  }
  if (m.row_speakers.empty()) throw ValidationError(path.string() + ": no rows");
  return m;
}

}  // namespace vpeval
