// tests/scoring_test.cc

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
#include <random>

#include <doctest.h>

#include "vpeval/common.h"

namespace vpeval {
namespace {

EmbeddingSet tiny_set() {
  std::vector<std::tuple<std::string, std::string, std::vector<double>>> entries;
  entries.emplace_back("u1", "s1", std::vector<double>{1.0, 0.0});
  entries.emplace_back("u2", "s1", std::vector<double>{0.0, 1.0});
  entries.emplace_back("u3", "s2", std::vector<double>{3.0, 4.0});
  return EmbeddingSet("tiny", Condition::kOriginal, Space::kEval, std::move(entries));
}

TEST_CASE("cosine score basics") {
  std::vector<double> e1{1.0, 0.0}, e2{0.0, 1.0}, both{1.0, 1.0};
  CHECK(cosine_score(e1, e1) == 1.0);
  CHECK(cosine_score(e1, e2) == 0.0);
  CHECK(cosine_score(both, e1) == doctest::Approx(0.70710678).epsilon(1e-8));
  std::vector<double> zero{0.0, 0.0};
  CHECK_THROWS_AS(cosine_score(zero, e1), ComputeError);
}

TEST_CASE("cosine score invariant under positive scaling") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(16), b(16);
    for (double& x : a) x = dist(rng);
    for (double& x : b) x = dist(rng);
    std::vector<double> a7 = a, b3 = b;
    for (double& x : a7) x *= 7.0;
    for (double& x : b3) x *= 3.0;
    CHECK(std::abs(cosine_score(a, b) - cosine_score(a7, b3)) < 1e-12);
  }
}

TEST_CASE("preprocess centers and length-normalizes") {
  EmbeddingSet set = tiny_set();
  EmbeddingSet normed = preprocess(set, false, true);
  CHECK(normed.vec(2)[0] == doctest::Approx(0.6));
  CHECK(normed.vec(2)[1] == doctest::Approx(0.8));

  EmbeddingSet centered = preprocess(set, true, false);
  auto mean = centered.mean();
  for (double v : mean) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));

  // external reference mean
  std::vector<double> ref{1.0, 1.0};
  EmbeddingSet shifted = preprocess(set, true, false, &ref);
  CHECK(shifted.vec(0)[0] == doctest::Approx(0.0));
  CHECK(shifted.vec(0)[1] == doctest::Approx(-1.0));
}

TEST_CASE("preprocess leaves zero vectors unchanged with a warning") {
  std::vector<std::tuple<std::string, std::string, std::vector<double>>> entries;
  entries.emplace_back("u1", "s1", std::vector<double>{0.0, 0.0});
  entries.emplace_back("u2", "s1", std::vector<double>{1.0, 1.0});
  EmbeddingSet set("z", Condition::kOriginal, Space::kEval, std::move(entries));
  static int warnings = 0;
  warnings = 0;
  WarnHandler old = set_warn_handler([](const std::string&) { ++warnings; });
  EmbeddingSet normed = preprocess(set, false, true);
  set_warn_handler(old);
  CHECK(warnings == 1);
  CHECK(normed.vec(0)[0] == 0.0);
  CHECK(normed.vec(0)[1] == 0.0);
}

TEST_CASE("enrollment models average and optionally renormalize") {
  EmbeddingSet set = tiny_set();
  std::map<std::string, std::vector<std::string>> enroll_map{
      {"m1", {"u1"}}, {"m2", {"u1", "u2"}}};

  EnrollmentModelSet plain = build_enrollment_models(set, enroll_map, false);
  CHECK(plain.models.at("m1").vec == std::vector<double>{1.0, 0.0});
  CHECK(plain.models.at("m2").vec == std::vector<double>{0.5, 0.5});
  CHECK(plain.models.at("m2").speaker == "s1");

  EnrollmentModelSet renormed = build_enrollment_models(set, enroll_map, true);
  CHECK(renormed.models.at("m2").vec[0] == doctest::Approx(0.70710678).epsilon(1e-8));
  CHECK(renormed.models.at("m2").vec[1] == doctest::Approx(0.70710678).epsilon(1e-8));

  CHECK_THROWS_AS(build_enrollment_models(set, {{"m", {}}}, false), ValidationError);
  CHECK_THROWS_AS(build_enrollment_models(set, {{"m", {"nope"}}}, false), ValidationError);
  CHECK_THROWS_AS(build_enrollment_models(set, {{"m", {"u1", "u3"}}}, false), ValidationError);
}

TEST_CASE("score_trials scores every trial deterministically") {
  EmbeddingSet set = tiny_set();
  EnrollmentModelSet enrolls =
      build_enrollment_models(set, {{"e1", {"u1"}}, {"e2", {"u3"}}}, false);

  TrialList trials;
  trials.trials = {{"e1", "u1", true}, {"e1", "u3", false}, {"e2", "u3", true}};
  ScoreSet scores = score_trials(Backend::kCosine, nullptr, enrolls, set, trials);
  CHECK(scores.kind == ScoreKind::kCosine);
  REQUIRE(scores.trials.size() == 3);
  CHECK(scores.trials[0].score == 1.0);  // same vector
  CHECK(scores.trials[2].score == 1.0);

  // permuted trial order: identical multiset of (key, score)
  TrialList permuted;
  permuted.trials = {{"e2", "u3", true}, {"e1", "u1", true}, {"e1", "u3", false}};
  ScoreSet scores2 = score_trials(Backend::kCosine, nullptr, enrolls, set, permuted);
  auto key = [](const ScoredTrial& t) { return t.enroll_id + "|" + t.utt_id; };
  std::map<std::string, double> map1, map2;
  for (const auto& t : scores.trials) map1[key(t)] = t.score;
  for (const auto& t : scores2.trials) map2[key(t)] = t.score;
  CHECK(map1 == map2);

  // empty trial list is allowed and yields an empty score set
  TrialList empty;
  CHECK(score_trials(Backend::kCosine, nullptr, enrolls, set, empty).trials.empty());
}

TEST_CASE("score_trials reports all unresolvable ids at once") {
  EmbeddingSet set = tiny_set();
  EnrollmentModelSet enrolls = build_enrollment_models(set, {{"e1", {"u1"}}}, false);
  TrialList trials;
  trials.trials = {{"missing1", "u1", true}, {"e1", "nope", false}, {"missing2", "u2", false}};
  try {
    score_trials(Backend::kCosine, nullptr, enrolls, set, trials);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    CHECK(msg.find("missing1") != std::string::npos);
    CHECK(msg.find("missing2") != std::string::npos);
    CHECK(msg.find("nope") != std::string::npos);
  }
}

TEST_CASE("cosine trial scores invariant under argument scaling") {
  EmbeddingSet set = tiny_set();
  std::vector<std::tuple<std::string, std::string, std::vector<double>>> scaled_entries;
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto v = set.vec(i);
    std::vector<double> w(v.begin(), v.end());
    for (double& x : w) x *= 7.0;
    scaled_entries.emplace_back(set.utt(i), set.speaker(i), std::move(w));
  }
  EmbeddingSet scaled = set.with_entries(std::move(scaled_entries));

  auto enroll_map = std::map<std::string, std::vector<std::string>>{{"e1", {"u1", "u2"}}};
  EnrollmentModelSet e1 = build_enrollment_models(set, enroll_map, true);
  EnrollmentModelSet e2 = build_enrollment_models(scaled, enroll_map, true);
  TrialList trials;
  trials.trials = {{"e1", "u3", false}};
  double s1 = score_trials(Backend::kCosine, nullptr, e1, set, trials).trials[0].score;
  double s2 = score_trials(Backend::kCosine, nullptr, e2, scaled, trials).trials[0].score;
  CHECK(std::abs(s1 - s2) < 1e-12);
}

}  // namespace
}  // namespace vpeval
