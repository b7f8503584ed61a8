// vpeval/calibration.h

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

#ifndef VPEVAL_CALIBRATION_H_
#define VPEVAL_CALIBRATION_H_

#include <span>
#include <vector>

namespace vpeval {

// Calibrated log-likelihood ratios are clamped to +/-|ln(kLlrClampEpsilon)|
// (about +/-16.12 nats) so downstream cost arithmetic stays bounded.
inline constexpr double kLlrClampEpsilon = 1e-7;

// log2(1 + e^x), overflow-safe.
double softplus2(double x);

// Log-likelihood-ratio cost in bits:
//   (1/2Nt) sum_t log2(1+e^-s) + (1/2Nn) sum_n log2(1+e^s).
// Zero for perfectly calibrated, perfectly separating llrs; 1.0 for llrs that
// carry no information (all zero).
double cllr(std::span<const double> target_llrs, std::span<const double> nontarget_llrs);

struct CalibratedScores {
  std::vector<double> target_scores;      // input order preserved
  std::vector<double> nontarget_scores;   // input order preserved
  std::vector<double> target_llrs;        // parallel to target_scores
  std::vector<double> nontarget_llrs;     // parallel to nontarget_scores
  // Monotone step map as (score threshold, llr value), ascending. A score s
  // maps to the value of the last threshold <= s.
  std::vector<std::pair<double, double>> mapping;

  double map_score(double score) const;
};

// Pool-adjacent-violators isotonic fit of the empirical target posterior,
// converted to llrs at the empirical prior odds Nt/Nn. Equal scores are
// pooled into one block before the regression. Among all monotone score
// transforms this minimizes cllr (up to the clamp).
CalibratedScores pav_calibrate(std::span<const double> target_scores,
                               std::span<const double> nontarget_scores);

// cllr after PAV calibration; in [0, 1] and invariant under strictly
// increasing score transforms.
double min_cllr(std::span<const double> target_scores,
                std::span<const double> nontarget_scores);

}  // namespace vpeval

#endif  // VPEVAL_CALIBRATION_H_
