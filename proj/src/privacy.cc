// vpeval/privacy.cc

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

#include "vpeval/privacy.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "vpeval/calibration.h"
#include "vpeval/common.h"

namespace vpeval {

// ---------------------------------------------------------------------------
// EER
// ---------------------------------------------------------------------------

EerResult eer(std::span<const double> target_scores,
              std::span<const double> nontarget_scores) {
  if (target_scores.empty()) throw ComputeError("eer: no target scores");
  if (nontarget_scores.empty()) throw ComputeError("eer: no nontarget scores");

  std::vector<double> targets(target_scores.begin(), target_scores.end());
  std::vector<double> nontargets(nontarget_scores.begin(), nontarget_scores.end());
  for (double s : targets)
    if (!std::isfinite(s)) throw ComputeError("eer: non-finite target score");
  for (double s : nontargets)
    if (!std::isfinite(s)) throw ComputeError("eer: non-finite nontarget score");
  std::sort(targets.begin(), targets.end());
  std::sort(nontargets.begin(), nontargets.end());

  // Distinct pooled scores.
  std::vector<double> pooled;
  pooled.reserve(targets.size() + nontargets.size());
  std::merge(targets.begin(), targets.end(), nontargets.begin(), nontargets.end(),
             std::back_inserter(pooled));
  pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());
  const std::size_t k = pooled.size();

  const std::int64_t nt = static_cast<std::int64_t>(targets.size());
  const std::int64_t nn = static_cast<std::int64_t>(nontargets.size());

  // Operating point j covers thresholds in (pooled[j-1], pooled[j]); point 0
  // sits below every score and point k above. miss[j] = #targets <= pooled[j-1],
  // fa[j] = #nontargets > pooled[j-1].
  std::vector<std::int64_t> miss(k + 1), fa(k + 1);
  std::vector<double> op_threshold(k + 1);
  miss[0] = 0;
  fa[0] = nn;
  op_threshold[0] = pooled.front() - 1.0;
  {
    std::size_t ti = 0, ni = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      double edge = pooled[j - 1];
      while (ti < targets.size() && targets[ti] <= edge) ++ti;
      while (ni < nontargets.size() && nontargets[ni] <= edge) ++ni;
      miss[j] = static_cast<std::int64_t>(ti);
      fa[j] = nn - static_cast<std::int64_t>(ni);
      op_threshold[j] =
          j < k ? 0.5 * (pooled[j - 1] + pooled[j]) : pooled.back() + 1.0;
    }
  }

  // diff = miss/nt - fa/nn is non-decreasing from -1 to +1; locate the first
  // non-negative point. Comparisons stay in integers (miss*nn vs fa*nt).
  std::size_t cross = 0;
  while (miss[cross] * nn < fa[cross] * nt) ++cross;

  EerResult result;
  if (miss[cross] * nn == fa[cross] * nt) {
    result.eer = static_cast<double>(miss[cross]) / static_cast<double>(nt);
    result.threshold = op_threshold[cross];
    return result;
  }
  // Strict sign change between cross-1 and cross: interpolate the segment.
  //   eer = (dm*fa_a - miss_a*df) / (nn*dm - nt*df)
  // where dm, df are the count increments across the segment.
  const std::size_t a = cross - 1;
  const std::int64_t dm = miss[cross] - miss[a];
  const std::int64_t df = fa[cross] - fa[a];
  const std::int64_t num = dm * fa[a] - miss[a] * df;
  const std::int64_t den = nn * dm - nt * df;
  result.eer = static_cast<double>(num) / static_cast<double>(den);
  const double alpha = static_cast<double>(nt * fa[a] - nn * miss[a]) / static_cast<double>(den);
  result.threshold = op_threshold[a] + alpha * (op_threshold[cross] - op_threshold[a]);
  return result;
}

// ---------------------------------------------------------------------------
// Linkability
// ---------------------------------------------------------------------------

double linkability_dsys(std::span<const double> mated_scores,
                        std::span<const double> nonmated_scores, int bins, double omega) {
  if (mated_scores.empty()) throw ComputeError("linkability: no mated scores");
  if (nonmated_scores.empty()) throw ComputeError("linkability: no nonmated scores");
  if (bins < 2) throw ValidationError("linkability: bins must be >= 2");
  if (!(omega > 0.0)) throw ValidationError("linkability: omega must be positive");

  double lo = mated_scores[0], hi = mated_scores[0];
  for (double s : mated_scores) {
    if (!std::isfinite(s)) throw ComputeError("linkability: non-finite score");
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  for (double s : nonmated_scores) {
    if (!std::isfinite(s)) throw ComputeError("linkability: non-finite score");
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  if (hi <= lo) return 0.0;

  const double width = (hi - lo) / bins;
  auto bin_of = [&](double s) {
    int b = static_cast<int>((s - lo) / (hi - lo) * bins);
    return std::clamp(b, 0, bins - 1);
  };
  std::vector<double> mated_count(bins, 0.0), nonmated_count(bins, 0.0);
  for (double s : mated_scores) mated_count[bin_of(s)] += 1.0;
  for (double s : nonmated_scores) nonmated_count[bin_of(s)] += 1.0;

  const double nm = static_cast<double>(mated_scores.size());
  const double nn = static_cast<double>(nonmated_scores.size());
  double dsys = 0.0;
  for (int b = 0; b < bins; ++b) {
    if (mated_count[b] == 0.0) continue;
    const double pm = mated_count[b] / (nm * width);
    double local;
    if (nonmated_count[b] == 0.0) {
      local = 1.0;  // LR -> infinity
    } else {
      const double pn = nonmated_count[b] / (nn * width);
      const double lr = pm / pn;
      local = std::max(0.0, 2.0 * (omega * lr / (1.0 + omega * lr)) - 1.0);
    }
    dsys += local * pm * width;
  }
  return std::clamp(dsys, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// ZEBRA
// ---------------------------------------------------------------------------

std::string zebra_tag_for(double c) {
  if (c <= 0.0) return "0";
  if (c <= 1.0) return "A";
  if (c <= 2.0) return "B";
  if (c <= 4.0) return "C";
  if (c <= 5.0) return "D";
  if (c <= 6.0) return "E";
  return "F";
}

ZebraResult zebra(std::span<const double> target_llrs,
                  std::span<const double> nontarget_llrs, double grid_range,
                  double grid_step) {
  if (target_llrs.empty()) throw ComputeError("zebra: no target llrs");
  if (nontarget_llrs.empty()) throw ComputeError("zebra: no nontarget llrs");
  if (!(grid_range > 0.0) || !(grid_step > 0.0) || grid_step > grid_range)
    throw ValidationError("zebra: invalid grid");

  CalibratedScores cal = pav_calibrate(target_llrs, nontarget_llrs);

  ZebraResult result;
  for (double l : cal.target_llrs)
    result.worst_case_loglr = std::max(result.worst_case_loglr, std::abs(l) / M_LN10);
  for (double l : cal.nontarget_llrs)
    result.worst_case_loglr = std::max(result.worst_case_loglr, std::abs(l) / M_LN10);
  result.tag = zebra_tag_for(result.worst_case_loglr);

  const std::size_t steps = static_cast<std::size_t>(std::lround(2.0 * grid_range / grid_step));
  const double nt = static_cast<double>(cal.target_llrs.size());
  const double nn = static_cast<double>(cal.nontarget_llrs.size());

  // ECE profile against the llr=0 default, both in bits. The default is
  // folded into the per-trial terms, so every term (and hence the integrand)
  // is exactly zero when the calibrated llrs are all zero.
  auto integrand = [&](double prior_log_odds) {
    const double pi = 1.0 / (1.0 + std::exp(-prior_log_odds));
    const double default_t = softplus2(-prior_log_odds);
    const double default_n = softplus2(prior_log_odds);
    double target_gain = 0.0;
    for (double l : cal.target_llrs) target_gain += default_t - softplus2(-(l + prior_log_odds));
    double nontarget_gain = 0.0;
    for (double l : cal.nontarget_llrs) nontarget_gain += default_n - softplus2(l + prior_log_odds);
    return std::max(0.0, pi * target_gain / nt + (1.0 - pi) * nontarget_gain / nn);
  };

  double acc = 0.5 * (integrand(-grid_range) + integrand(grid_range));
  for (std::size_t i = 1; i < steps; ++i)
    acc += integrand(-grid_range + grid_step * static_cast<double>(i));
  result.d_ece = acc * grid_step;
  return result;
}

// ---------------------------------------------------------------------------
// Aggregated report
// ---------------------------------------------------------------------------

PrivacyResult privacy_report(const TrialList& trials, const ScoreSet& scores,
                             const PrivacyMetricOptions& options) {
  check_scores_match_trials(scores, trials);
  PrivacyResult result;
  result.condition_label = trials.condition_label;

  std::vector<double> target = scores.target_scores();
  std::vector<double> nontarget = scores.nontarget_scores();
  result.n_target = target.size();
  result.n_nontarget = nontarget.size();
  if (target.empty() || nontarget.empty())
    throw ComputeError("privacy_report: need at least one target and one nontarget trial");

  if (options.with_eer) {
    EerResult e = eer(target, nontarget);
    result.eer = e.eer;
    result.eer_threshold = e.threshold;
  }
  if (options.with_cllr) {
    if (scores.kind == ScoreKind::kLlr) {
      result.cllr_bits = cllr(target, nontarget);
      result.min_cllr_bits = min_cllr(target, nontarget);
    } else {
      CalibratedScores cal = pav_calibrate(target, nontarget);
      result.cllr_bits = cllr(cal.target_llrs, cal.nontarget_llrs);
      result.min_cllr_bits = result.cllr_bits;
    }
  }
  if (options.with_linkability) {
    result.dsys = linkability_dsys(target, nontarget, options.linkability_bins,
                                   options.linkability_omega);
  }
  if (options.with_zebra) {
    ZebraResult z = zebra(target, nontarget, options.zebra_grid_range, options.zebra_grid_step);
    result.d_ece = z.d_ece;
    result.worst_case_loglr = z.worst_case_loglr;
    result.zebra_tag = z.tag;
  }
  return result;
}

}  // namespace vpeval
