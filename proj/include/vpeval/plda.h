// vpeval/plda.h

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

#ifndef VPEVAL_PLDA_H_
#define VPEVAL_PLDA_H_

#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace vpeval {

class EmbeddingSet;  // corpus.h

// Two-covariance model: a speaker variable y ~ N(mean, B) and observations
// x = y + e with e ~ N(0, W).
struct PldaModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd between;  // B, positive semi-definite
  Eigen::MatrixXd within;   // W, positive definite after ridge

  int dim() const { return static_cast<int>(mean.size()); }
  // Symmetry/PSD/PD checks; throws ComputeError when W is singular
  // (min eigenvalue <= 1e-10) even after the ridge.
  void validate() const;
};

PldaModel load_plda_model(const std::filesystem::path& path);
void write_plda_model(const std::filesystem::path& path, const PldaModel& model);

// Verification llr for the hypothesis that enroll and test share one speaker
// variable vs two independent ones. Natural log.
//
// With T = B + W the joint covariance is [[T, B], [B, T]] under same-speaker
// and [[T, 0], [0, T]] under different-speaker; the block structure reduces
// the llr to quadratic forms in x+y and x-y against (W+2B)^-1 and W^-1.
class PldaScorer {
 public:
  explicit PldaScorer(const PldaModel& model);
  double score(std::span<const double> enroll, std::span<const double> test) const;
  int dim() const { return dim_; }

 private:
  int dim_;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd sum_inv_;    // (W + 2B)^-1
  Eigen::MatrixXd within_inv_; // W^-1
  Eigen::MatrixXd total_inv_;  // (B + W)^-1
  double log_det_const_;       // 2 ln|B+W| - ln|W+2B| - ln|W|
};

// One-call convenience wrapper around PldaScorer.
double plda_score(const PldaModel& model, std::span<const double> enroll,
                  std::span<const double> test);

struct PldaTrainStats {
  std::vector<double> log_likelihoods;  // after each iteration (and for init)
};

// EM for the two-covariance model. Initialization: W = within-class scatter,
// B = between-class scatter of speaker means, mean = global mean; zero
// iterations returns that initialization. A ridge of
// ridge_rel * trace(W)/dim is added to W every M-step. The per-iteration
// total log-likelihood is non-decreasing (up to the ridge perturbation).
PldaModel plda_train_em(const EmbeddingSet& data, int iterations, double ridge_rel = 1e-6,
                        PldaTrainStats* stats = nullptr);

}  // namespace vpeval

#endif  // VPEVAL_PLDA_H_
