// vpeval/privacy.h

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

#ifndef VPEVAL_PRIVACY_H_
#define VPEVAL_PRIVACY_H_

#include <optional>
#include <span>
#include <string>

#include "vpeval/corpus.h"

namespace vpeval {

struct EerResult {
  double eer = 0.0;
  double threshold = 0.0;
};

// Equal error rate under the accept-if-score>=threshold convention.
// P_miss and P_fa are evaluated at operating points between consecutive
// distinct pooled scores (equal scores form one operating point); the EER is
// the linear interpolation at the crossing of the two rates. The crossing is
// solved in integer arithmetic over trial counts, so the result is an exact
// rational and invariant under any strictly increasing score transform.
EerResult eer(std::span<const double> target_scores,
              std::span<const double> nontarget_scores);

// Linkability D_sys: histogram estimate of the expected linkage advantage.
// Densities for mated/nonmated scores are estimated over the shared pooled
// range; each bin contributes max(0, 2*omega*LR/(1+omega*LR) - 1) weighted by
// the mated density. Returns 0 when all scores are equal.
double linkability_dsys(std::span<const double> mated_scores,
                        std::span<const double> nonmated_scores, int bins = 100,
                        double omega = 1.0);

struct ZebraResult {
  double d_ece = 0.0;             // bits
  double worst_case_loglr = 0.0;  // base-10
  std::string tag = "0";          // "0" or "A".."F"
};

// Expected (d_ece) and worst-case privacy disclosure. Input llrs are first
// PAV-calibrated; d_ece is the trapezoid integral over prior log odds of
// max(0, default-ECE - ECE); worst_case is max |calibrated llr| / ln(10).
ZebraResult zebra(std::span<const double> target_llrs,
                  std::span<const double> nontarget_llrs, double grid_range = 10.0,
                  double grid_step = 0.02);

std::string zebra_tag_for(double worst_case_loglr);

struct PrivacyMetricOptions {
  bool with_eer = true;
  bool with_cllr = true;
  bool with_linkability = false;
  bool with_zebra = false;
  int linkability_bins = 100;
  double linkability_omega = 1.0;
  double zebra_grid_range = 10.0;
  double zebra_grid_step = 0.02;
};

struct PrivacyResult {
  std::string condition_label;
  std::size_t n_target = 0;
  std::size_t n_nontarget = 0;
  std::optional<double> eer;
  std::optional<double> eer_threshold;
  std::optional<double> cllr_bits;
  std::optional<double> min_cllr_bits;
  std::optional<double> dsys;
  std::optional<double> d_ece;
  std::optional<double> worst_case_loglr;
  std::optional<std::string> zebra_tag;
};

// Runs the enabled metrics over a joined trial/score pair. Cosine scores are
// not llrs, so for them the cllr column is computed on the PAV-calibrated
// scores (making calibration loss zero by construction).
PrivacyResult privacy_report(const TrialList& trials, const ScoreSet& scores,
                             const PrivacyMetricOptions& options = {});

}  // namespace vpeval

#endif  // VPEVAL_PRIVACY_H_
