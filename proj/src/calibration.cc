// vpeval/calibration.cc

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
#include <map>

#include "vpeval/common.h"

namespace vpeval {

double softplus2(double x) {
  // log2(1+e^x) = (x + log1p(e^-x)) / ln2 for x > 0, log1p(e^x)/ln2 otherwise.
  if (x > 0.0) return (x + std::log1p(std::exp(-x))) / M_LN2;
  return std::log1p(std::exp(x)) / M_LN2;
}

double cllr(std::span<const double> target_llrs, std::span<const double> nontarget_llrs) {
  if (target_llrs.empty()) throw ComputeError("cllr: no target llrs");
  if (nontarget_llrs.empty()) throw ComputeError("cllr: no nontarget llrs");
  for (double s : target_llrs)
    if (!std::isfinite(s)) throw ComputeError("cllr: non-finite target llr");
  for (double s : nontarget_llrs)
    if (!std::isfinite(s)) throw ComputeError("cllr: non-finite nontarget llr");
  double target_sum = 0.0;
  for (double s : target_llrs) target_sum += softplus2(-s);
  double nontarget_sum = 0.0;
  for (double s : nontarget_llrs) nontarget_sum += softplus2(s);
  return target_sum / (2.0 * static_cast<double>(target_llrs.size())) +
         nontarget_sum / (2.0 * static_cast<double>(nontarget_llrs.size()));
}

namespace {

struct Block {
  double target_weight;  // targets pooled in
  double total_weight;   // all trials pooled in
  double min_score;
};

double clamp_llr(double llr) {
  const double bound = -std::log(kLlrClampEpsilon);
  return std::clamp(llr, -bound, bound);
}

}  // namespace

double CalibratedScores::map_score(double score) const {
  if (mapping.empty()) throw ComputeError("empty calibration mapping");
  // Last threshold <= score; scores below the first threshold take the first
  // block's value.
  auto it = std::upper_bound(
      mapping.begin(), mapping.end(), score,
      [](double s, const std::pair<double, double>& entry) { return s < entry.first; });
  if (it == mapping.begin()) return it->second;
  return std::prev(it)->second;
}

CalibratedScores pav_calibrate(std::span<const double> target_scores,
                               std::span<const double> nontarget_scores) {
  if (target_scores.empty()) throw ComputeError("pav_calibrate: no target scores");
  if (nontarget_scores.empty()) throw ComputeError("pav_calibrate: no nontarget scores");

  // Pool equal scores first: score -> (target count, total count).
  std::map<double, std::pair<double, double>> pooled;
  for (double s : target_scores) {
    if (!std::isfinite(s)) throw ComputeError("pav_calibrate: non-finite score");
    auto& p = pooled[s];
    p.first += 1.0;
    p.second += 1.0;
  }
  for (double s : nontarget_scores) {
    if (!std::isfinite(s)) throw ComputeError("pav_calibrate: non-finite score");
    pooled[s].second += 1.0;
  }

  // PAV: merge adjacent blocks while the posterior would decrease.
  std::vector<Block> stack;
  stack.reserve(pooled.size());
  for (const auto& [score, counts] : pooled) {
    Block blk{counts.first, counts.second, score};
    while (!stack.empty() && stack.back().target_weight * blk.total_weight >=
                                 blk.target_weight * stack.back().total_weight) {
      blk.target_weight += stack.back().target_weight;
      blk.total_weight += stack.back().total_weight;
      blk.min_score = stack.back().min_score;
      stack.pop_back();
    }
    stack.push_back(blk);
  }

  const double nt = static_cast<double>(target_scores.size());
  const double nn = static_cast<double>(nontarget_scores.size());

  CalibratedScores out;
  out.target_scores.assign(target_scores.begin(), target_scores.end());
  out.nontarget_scores.assign(nontarget_scores.begin(), nontarget_scores.end());
  out.mapping.reserve(stack.size());
  for (const Block& blk : stack) {
    // posterior odds over prior odds in one ratio, so a block matching the
    // empirical prior maps to exactly 0.
    const double target_w = blk.target_weight;
    const double nontarget_w = blk.total_weight - blk.target_weight;
    double llr;
    if (target_w <= 0.0) {
      llr = -HUGE_VAL;
    } else if (nontarget_w <= 0.0) {
      llr = HUGE_VAL;
    } else {
      llr = std::log((target_w * nn) / (nontarget_w * nt));
    }
    out.mapping.emplace_back(blk.min_score, clamp_llr(llr));
  }

  out.target_llrs.reserve(out.target_scores.size());
  for (double s : out.target_scores) out.target_llrs.push_back(out.map_score(s));
  out.nontarget_llrs.reserve(out.nontarget_scores.size());
  for (double s : out.nontarget_scores) out.nontarget_llrs.push_back(out.map_score(s));
  return out;
}

double min_cllr(std::span<const double> target_scores,
                std::span<const double> nontarget_scores) {
  CalibratedScores cal = pav_calibrate(target_scores, nontarget_scores);
  return cllr(cal.target_llrs, cal.nontarget_llrs);
}

}  // namespace vpeval
