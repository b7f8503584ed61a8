// tests/oracles.h

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

// Reference implementations used only by tests. They deliberately take the
// slow, obvious route (exhaustive sweeps, naive density evaluation, budgeted
// search) and stay independent of the library code paths they check.

#ifndef VPEVAL_TESTS_ORACLES_H_
#define VPEVAL_TESTS_ORACLES_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vpeval/corpus.h"

namespace vpeval::testing {

// Equal error rate by exhaustive midpoint-threshold sweep: P_miss and P_fa
// are counted by scanning all scores at every midpoint between consecutive
// distinct pooled values (plus one threshold below and above everything),
// then the crossing of the two rates is linearly interpolated in plain
// double arithmetic.
double eer_sweep_oracle(std::span<const double> target_scores,
                        std::span<const double> nontarget_scores);

// Minimal edit distance by exhaustive search over edit scripts with a
// |i-j| lower-bound cutoff. No DP table.
long edit_distance_bruteforce(const std::vector<std::string>& ref,
                              const std::vector<std::string>& hyp);

// log N(x; mean, cov) evaluated directly via LU decomposition of the full
// covariance.
double gaussian_log_density(const Eigen::VectorXd& x, const Eigen::VectorXd& mean,
                            const Eigen::MatrixXd& cov);

// Verification llr from the two stacked 2d x 2d joint Gaussians, built and
// evaluated naively.
double plda_llr_joint_oracle(const Eigen::VectorXd& mean, const Eigen::MatrixXd& between,
                             const Eigen::MatrixXd& within, const Eigen::VectorXd& enroll,
                             const Eigen::VectorXd& test);

// Synthetic Gaussian speaker population: per speaker a mean drawn from
// N(0, between_var I), utterances mean + N(0, within_var I). Speaker means
// are optionally shrunk toward the origin by `shrink` (the toy anonymizer),
// with fresh within noise.
struct SyntheticSpec {
  int speakers = 20;
  int utts_per_speaker = 30;
  int dim = 16;
  double between_var = 4.0;
  double within_var = 1.0;
  double shrink = 1.0;  // 1 = untouched speaker means
  std::uint64_t seed = 1234;
  std::string dataset = "synth";
  Condition condition = Condition::kOriginal;
  Space space = Space::kEval;
};

// The speaker means are a function of (seed, speakers, dim, between_var)
// only, so two specs differing in shrink/condition share speakers and model
// an original/anonymized pair of the same population.
EmbeddingSet synthetic_embeddings(const SyntheticSpec& spec);

}  // namespace vpeval::testing

#endif  // VPEVAL_TESTS_ORACLES_H_
