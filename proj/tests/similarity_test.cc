// tests/similarity_test.cc

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

#include <cmath>
#include <filesystem>
#include <random>

#include <doctest.h>

#include "oracles.h"
#include "vpeval/common.h"
#include "vpeval/plda.h"

namespace vpeval {
namespace {

SimilarityMatrix matrix2(const std::vector<double>& v) {
  SimilarityMatrix m;
  m.row_speakers = {"a", "b"};
  m.col_speakers = {"a", "b"};
  m.values = v;
  return m;
}

TEST_CASE("ddiag on hand-built matrices") {
  CHECK(ddiag(matrix2({0.5, 0.5, 0.5, 0.5})) == 0.0);
  CHECK(ddiag(matrix2({0.9, 0.1, 0.1, 0.9})) == doctest::Approx(0.8).epsilon(1e-12));

  SimilarityMatrix one;
  one.row_speakers = {"a"};
  one.col_speakers = {"a"};
  one.values = {0.5};
  CHECK_THROWS_AS(ddiag(one), ComputeError);

  SimilarityMatrix rect;
  rect.row_speakers = {"a", "b"};
  rect.col_speakers = {"a", "c"};
  rect.values = {0.5, 0.5, 0.5, 0.5};
  CHECK_THROWS_AS(ddiag(rect), ComputeError);
}

TEST_CASE("ddiag invariant under joint speaker permutation") {
  SimilarityMatrix m;
  m.row_speakers = {"a", "b", "c"};
  m.col_speakers = {"a", "b", "c"};
  m.values = {0.9, 0.2, 0.3, 0.1, 0.8, 0.4, 0.25, 0.15, 0.7};
  const double base = ddiag(m);

  SimilarityMatrix p;  // rows+cols permuted by (c, a, b)
  p.row_speakers = {"c", "a", "b"};
  p.col_speakers = {"c", "a", "b"};
  p.values = {0.7, 0.25, 0.15, 0.3, 0.9, 0.2, 0.4, 0.1, 0.8};
  CHECK(ddiag(p) == doctest::Approx(base).epsilon(1e-15));
}

TEST_CASE("gain_vd and de_identification arithmetic") {
  SimilarityMatrix strong = matrix2({0.9, 0.1, 0.1, 0.9});   // ddiag 0.8
  SimilarityMatrix weak = matrix2({0.7, 0.5, 0.5, 0.7});     // ddiag 0.2
  SimilarityMatrix flat = matrix2({0.5, 0.5, 0.5, 0.5});     // ddiag 0

  CHECK(gain_vd(strong, strong) == 0.0);
  CHECK(gain_vd(strong, weak) == doctest::Approx(-6.0206).epsilon(1e-4));
  CHECK(gain_vd(strong, weak) == doctest::Approx(-gain_vd(weak, strong)).epsilon(1e-12));
  CHECK(gain_vd(strong, flat) == -HUGE_VAL);
  CHECK_THROWS_AS(gain_vd(flat, strong), ComputeError);

  CHECK(de_identification(strong, flat) == 1.0);
  CHECK(de_identification(strong, strong) == 0.0);
  CHECK(de_identification(strong, weak) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("similarity cells are sigmoid of the mean pair score") {
  // two speakers, two utterances each, scores controlled through plda with
  // B = 0 replaced by... easier: cosine with hand-built vectors.
  // within-speaker pairs at cos=+1, cross pairs at cos=-1 won't hit +-4, so
  // instead check the all-equal-score case: every vector identical gives
  // cos=1 everywhere, M = sigmoid(1) in all cells except the excluded
  // diagonal self-pairs.
  std::vector<std::tuple<std::string, std::string, std::vector<double>>> entries;
  for (int s = 0; s < 2; ++s)
    for (int u = 0; u < 2; ++u)
      entries.emplace_back("s" + std::to_string(s) + "u" + std::to_string(u),
                           "s" + std::to_string(s), std::vector<double>{1.0, 0.0});
  EmbeddingSet set("x", Condition::kOriginal, Space::kEval, std::move(entries));
  SimilarityMatrix m = build_similarity_matrix(set, set, Backend::kCosine, nullptr, 0, 1);
  for (double v : m.values) CHECK(v == doctest::Approx(1.0 / (1.0 + std::exp(-1.0))));
  // diagonal cells: 2x2 pairs minus 2 self-pairs = 2; off-diagonal 4
  CHECK(m.pair_evaluations == 2 + 4 + 4 + 2);
}

TEST_CASE("plda-backed similarity matches the sigmoid table on controlled scores") {
  // d=1 model with strong speaker separation: same-speaker pairs score high,
  // cross pairs low. Model: mean 0, B=4, W=0.25.
  PldaModel model;
  model.mean = Eigen::VectorXd::Zero(1);
  model.between = Eigen::MatrixXd::Constant(1, 1, 4.0);
  model.within = Eigen::MatrixXd::Constant(1, 1, 0.25);

  std::vector<std::tuple<std::string, std::string, std::vector<double>>> entries;
  entries.emplace_back("a1", "a", std::vector<double>{2.0});
  entries.emplace_back("a2", "a", std::vector<double>{2.1});
  entries.emplace_back("b1", "b", std::vector<double>{-2.0});
  entries.emplace_back("b2", "b", std::vector<double>{-2.1});
  EmbeddingSet set("x", Condition::kOriginal, Space::kEval, std::move(entries));

  SimilarityMatrix m = build_similarity_matrix(set, set, Backend::kPlda, &model, 0, 1);
  PldaScorer scorer(model);
  std::vector<double> a1{2.0}, a2{2.1};
  const double same_llr = scorer.score(a1, a2);
  // diagonal cell (a,a): pairs (a1,a2) and (a2,a1), both the same llr
  CHECK(m.at(0, 0) == doctest::Approx(1.0 / (1.0 + std::exp(-same_llr))).epsilon(1e-12));
  CHECK(m.at(0, 0) > 0.8);
  CHECK(m.at(0, 1) < 0.1);
}

TEST_CASE("sampling is deterministic, capped, and exhaustive when k >= available") {
  testing::SyntheticSpec spec;
  spec.speakers = 6;
  spec.utts_per_speaker = 10;
  spec.dim = 8;
  EmbeddingSet set = testing::synthetic_embeddings(spec);

  SimilarityMatrix a = build_similarity_matrix(set, set, Backend::kCosine, nullptr, 5, 42);
  SimilarityMatrix b = build_similarity_matrix(set, set, Backend::kCosine, nullptr, 5, 42);
  CHECK(a.values == b.values);

  SimilarityMatrix c = build_similarity_matrix(set, set, Backend::kCosine, nullptr, 5, 43);
  CHECK(a.values != c.values);

  SimilarityMatrix all1 = build_similarity_matrix(set, set, Backend::kCosine, nullptr, 0, 1);
  SimilarityMatrix all2 = build_similarity_matrix(set, set, Backend::kCosine, nullptr, 10, 9);
  CHECK(all1.values == all2.values);
  SimilarityMatrix capped = build_similarity_matrix(set, set, Backend::kCosine, nullptr, 50, 9);
  CHECK(all1.values == capped.values);
}

TEST_CASE("pair evaluations scale as k^2 per speaker pair") {
  testing::SyntheticSpec spec;
  spec.speakers = 4;
  spec.utts_per_speaker = 9;
  spec.dim = 4;
  EmbeddingSet set = testing::synthetic_embeddings(spec);
  for (int k : {2, 3, 5}) {
    SimilarityMatrix m = build_similarity_matrix(set, set, Backend::kCosine, nullptr, k, 7);
    const std::uint64_t kk = static_cast<std::uint64_t>(k) * k;
    // off-diagonal cells: k^2 each; diagonal cells: k^2 - k (self-pairs out)
    const std::uint64_t expected = 12 * kk + 4 * (kk - k);
    CHECK(m.pair_evaluations == expected);
  }
}

TEST_CASE("threaded construction is byte-identical to single-threaded") {
  testing::SyntheticSpec spec;
  spec.speakers = 8;
  spec.utts_per_speaker = 6;
  spec.dim = 16;
  EmbeddingSet set = testing::synthetic_embeddings(spec);
  SimilarityMatrix st = build_similarity_matrix(set, set, Backend::kCosine, nullptr, 4, 5, 1);
  SimilarityMatrix mt = build_similarity_matrix(set, set, Backend::kCosine, nullptr, 4, 5, 8);
  CHECK(st.values == mt.values);
  CHECK(st.pair_evaluations == mt.pair_evaluations);
}

TEST_CASE("same-collection diagonal needs two utterances") {
  std::vector<std::tuple<std::string, std::string, std::vector<double>>> entries;
  entries.emplace_back("a1", "a", std::vector<double>{1.0});
  entries.emplace_back("b1", "b", std::vector<double>{-1.0});
  EmbeddingSet set("x", Condition::kOriginal, Space::kEval, std::move(entries));
  CHECK_THROWS_AS(build_similarity_matrix(set, set, Backend::kCosine, nullptr, 0, 1),
                  ComputeError);
}

TEST_CASE("cross-collection matrices keep equal utterance ids") {
  // one utterance per speaker is fine for a cross matrix: the OA diagonal
  // pairs each original recording with its anonymized counterpart.
  std::vector<std::tuple<std::string, std::string, std::vector<double>>> orig, anon;
  orig.emplace_back("a1", "a", std::vector<double>{1.0, 0.0});
  orig.emplace_back("b1", "b", std::vector<double>{0.0, 1.0});
  anon.emplace_back("a1", "a", std::vector<double>{0.9, 0.1});
  anon.emplace_back("b1", "b", std::vector<double>{0.1, 0.9});
  EmbeddingSet o("x", Condition::kOriginal, Space::kEval, std::move(orig));
  EmbeddingSet a("x", Condition::kAnonymized, Space::kEval, std::move(anon));
  SimilarityMatrix m = build_similarity_matrix(o, a, Backend::kCosine, nullptr, 0, 1);
  CHECK(m.pair_evaluations == 4);
  CHECK(m.at(0, 0) > m.at(0, 1));
}

TEST_CASE("gvd strategy selects embedding spaces and validates availability") {
  std::set<EmbeddingKey> full{{Condition::kOriginal, Space::kEval},
                              {Condition::kAnonymized, Space::kEval},
                              {Condition::kOriginal, Space::kEvalAnon},
                              {Condition::kAnonymized, Space::kEvalAnon}};
  auto [orig, anon] = gvd_model_strategy(full, GvdStrategy::kEvalOnly);
  CHECK(orig.second == Space::kEval);
  CHECK(anon.second == Space::kEval);
  auto [orig_b, anon_b] = gvd_model_strategy(full, GvdStrategy::kBoth);
  CHECK(orig_b.second == Space::kEval);
  CHECK(anon_b.second == Space::kEvalAnon);

  std::set<EmbeddingKey> eval_only{{Condition::kOriginal, Space::kEval},
                                   {Condition::kAnonymized, Space::kEval}};
  CHECK_THROWS_AS(gvd_model_strategy(eval_only, GvdStrategy::kAnonOnly), ValidationError);
}

TEST_CASE("similarity csv round-trip") {
  SimilarityMatrix m = matrix2({0.9, 0.1, 0.2, 0.8});
  auto tmp = std::filesystem::temp_directory_path() /
             ("vpeval-sim-" + std::to_string(std::random_device{}()) + ".csv");
  write_similarity_csv(tmp, m);
  SimilarityMatrix loaded = load_similarity_csv(tmp);
  CHECK(loaded.row_speakers == m.row_speakers);
  CHECK(loaded.col_speakers == m.col_speakers);
  CHECK(loaded.values == m.values);
  std::filesystem::remove(tmp);
}

}  // namespace
}  // namespace vpeval
