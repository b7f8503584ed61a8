// tests/calibration_test.cc

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

#include "vpeval/calibration.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "vpeval/common.h"

namespace vpeval {
namespace {

std::vector<double> random_scores(std::mt19937_64& rng, std::size_t n, double shift) {
  std::normal_distribution<double> dist(shift, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

TEST_CASE("cllr on hand-checked values") {
  // all-zero llrs carry no information: exactly 1 bit
  std::vector<double> zeros(5, 0.0);
  CHECK(cllr(zeros, zeros) == 1.0);

  // huge margins: effectively zero cost
  std::vector<double> big_t{1e6}, big_n{-1e6};
  CHECK(cllr(big_t, big_n) == doctest::Approx(0.0).epsilon(1e-12));

  // targets at ln 3, nontargets at -ln 3: log2(4/3)
  std::vector<double> t{std::log(3.0)}, n{-std::log(3.0)};
  CHECK(cllr(t, n) == doctest::Approx(std::log2(4.0 / 3.0)).epsilon(1e-12));

  CHECK_THROWS_AS(cllr({}, zeros), ComputeError);
  CHECK_THROWS_AS(cllr(zeros, {}), ComputeError);
}

TEST_CASE("pav produces a monotone mapping and saturates on separated data") {
  std::vector<double> targets{3.0, 4.0, 5.0};
  std::vector<double> nontargets{0.0, 1.0, 2.0};
  CalibratedScores cal = pav_calibrate(targets, nontargets);

  for (std::size_t i = 1; i < cal.mapping.size(); ++i) {
    CHECK(cal.mapping[i].first > cal.mapping[i - 1].first);
    CHECK(cal.mapping[i].second >= cal.mapping[i - 1].second);
  }
  const double bound = -std::log(kLlrClampEpsilon);
  for (double l : cal.target_llrs) CHECK(l == doctest::Approx(bound));
  for (double l : cal.nontarget_llrs) CHECK(l == doctest::Approx(-bound));
}

TEST_CASE("identical scores collapse to one block with llr 0") {
  std::vector<double> targets(4, 1.5), nontargets(7, 1.5);
  CalibratedScores cal = pav_calibrate(targets, nontargets);
  CHECK(cal.mapping.size() == 1);
  for (double l : cal.target_llrs) CHECK(l == 0.0);
  for (double l : cal.nontarget_llrs) CHECK(l == 0.0);
  CHECK(min_cllr(targets, nontargets) == 1.0);
}

TEST_CASE("identical multisets give min_cllr exactly 1 bit") {
  std::vector<double> scores{0.3, -0.7, 1.9, 0.3};
  CHECK(min_cllr(scores, scores) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pav output is non-decreasing in the score, in input order") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    auto targets = random_scores(rng, 40, 0.8);
    auto nontargets = random_scores(rng, 60, -0.8);
    CalibratedScores cal = pav_calibrate(targets, nontargets);
    // order by score, llr must follow
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t i = 0; i < targets.size(); ++i)
      pairs.emplace_back(targets[i], cal.target_llrs[i]);
    for (std::size_t i = 0; i < nontargets.size(); ++i)
      pairs.emplace_back(nontargets[i], cal.nontarget_llrs[i]);
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t i = 1; i < pairs.size(); ++i) CHECK(pairs[i].second >= pairs[i - 1].second);
  }
}

// Randomized optimality check: no random monotone step map beats PAV.
TEST_CASE("pav minimizes cllr among random monotone maps") {
  std::mt19937_64 rng(42);
  auto targets = random_scores(rng, 10, 0.8);
  auto nontargets = random_scores(rng, 10, -0.8);
  const double pav_cost = min_cllr(targets, nontargets);

  std::vector<double> pooled = targets;
  pooled.insert(pooled.end(), nontargets.begin(), nontargets.end());
  std::sort(pooled.begin(), pooled.end());
  std::uniform_int_distribution<std::size_t> pick(0, pooled.size() - 1);
  std::uniform_real_distribution<double> value(-15.0, 15.0);
  std::uniform_int_distribution<int> knots(1, 6);

  for (int trial = 0; trial < 1000; ++trial) {
    // random monotone step function over random thresholds
    int k = knots(rng);
    std::vector<double> thresholds, values;
    for (int i = 0; i < k; ++i) thresholds.push_back(pooled[pick(rng)]);
    std::sort(thresholds.begin(), thresholds.end());
    for (int i = 0; i < k; ++i) values.push_back(value(rng));
    std::sort(values.begin(), values.end());
    auto apply = [&](double s) {
      std::size_t idx = 0;
      while (idx + 1 < thresholds.size() && s >= thresholds[idx + 1]) ++idx;
      if (s < thresholds[0]) return values[0];
      return values[idx];
    };
    std::vector<double> t_mapped, n_mapped;
    for (double s : targets) t_mapped.push_back(apply(s));
    for (double s : nontargets) n_mapped.push_back(apply(s));
    CHECK(pav_cost <= cllr(t_mapped, n_mapped) + 1e-12);
  }
}

TEST_CASE("min_cllr core properties") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    auto targets = random_scores(rng, 30, 0.5);
    auto nontargets = random_scores(rng, 45, -0.5);

    // min <= cllr of the raw scores read as llrs
    CHECK(min_cllr(targets, nontargets) <= cllr(targets, nontargets) + 1e-12);

    // invariance under a strictly increasing transform
    auto expd = targets;
    auto expn = nontargets;
    for (double& s : expd) s = std::exp(s);
    for (double& s : expn) s = std::exp(s);
    CHECK(std::abs(min_cllr(targets, nontargets) - min_cllr(expd, expn)) < 1e-9);

    CHECK(min_cllr(targets, nontargets) >= 0.0);
    CHECK(min_cllr(targets, nontargets) <= 1.0 + 1e-12);
  }

  // perfectly separated: ~0 (clamp keeps it marginally positive)
  std::vector<double> hi{10.0, 11.0}, lo{-10.0, -9.0};
  CHECK(min_cllr(hi, lo) < 1e-5);
}

}  // namespace
}  // namespace vpeval
