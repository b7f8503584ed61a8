// vpeval/plda.cc

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

#include "vpeval/plda.h"

#include <cmath>
#include <map>

#include "vpeval/common.h"
#include "vpeval/corpus.h"
#include "vpeval/json_util.h"

namespace vpeval {

namespace {

constexpr double kMinWithinEigenvalue = 1e-10;

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

// Inverse and log-determinant of a symmetric positive-definite matrix.
// Throws when the matrix is not numerically PD.
void spd_inverse_logdet(const Eigen::MatrixXd& m, const char* what, Eigen::MatrixXd* inverse,
                        double* log_det) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw ComputeError(std::string("matrix not positive definite: ") + what);
  if (inverse)
    *inverse = llt.solve(Eigen::MatrixXd::Identity(m.rows(), m.cols()));
  if (log_det) {
    double acc = 0.0;
    const auto& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < l.rows(); ++i) acc += std::log(l(i, i));
    *log_det = 2.0 * acc;
  }
}

Eigen::Map<const Eigen::VectorXd> as_vec(std::span<const double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

void PldaModel::validate() const {
  const Eigen::Index d = mean.size();
  if (d == 0) throw ComputeError("plda model: empty mean");
  if (between.rows() != d || between.cols() != d || within.rows() != d || within.cols() != d)
    throw ComputeError("plda model: dimension mismatch");
  if (!between.isApprox(between.transpose(), 1e-8))
    throw ComputeError("plda model: between-covariance not symmetric");
  if (!within.isApprox(within.transpose(), 1e-8))
    throw ComputeError("plda model: within-covariance not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> wsolver(within);
  if (wsolver.eigenvalues().minCoeff() <= kMinWithinEigenvalue)
    throw ComputeError("plda model: within-covariance singular after ridge");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> bsolver(between);
  if (bsolver.eigenvalues().minCoeff() < -1e-8 * std::max(1.0, bsolver.eigenvalues().maxCoeff()))
    throw ComputeError("plda model: between-covariance not positive semi-definite");
}

PldaModel load_plda_model(const std::filesystem::path& path) {
  Json j = parse_json_file(path);
  const int d = j.at("dim").get<int>();
  if (d <= 0) throw ValidationError(path.string() + ": dim must be positive");
  auto read_vec = [&](const char* key) {
    const Json& arr = j.at(key);
    if (!arr.is_array() || static_cast<int>(arr.size()) != d)
      throw ValidationError(path.string() + ": '" + key + "' must have dim entries");
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i) v(i) = arr[i].get<double>();
    return v;
  };
  auto read_mat = [&](const char* key) {
    const Json& arr = j.at(key);
    if (!arr.is_array() || static_cast<int>(arr.size()) != d * d)
      throw ValidationError(path.string() + ": '" + key + "' must have dim*dim entries (row-major)");
    Eigen::MatrixXd m(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) m(r, c) = arr[r * d + c].get<double>();
    return m;
  };
  PldaModel model;
  model.mean = read_vec("mean");
  model.between = read_mat("between");
  model.within = read_mat("within");
  model.validate();
  return model;
}

void write_plda_model(const std::filesystem::path& path, const PldaModel& model) {
  const int d = model.dim();
  Json j;
  j["dim"] = d;
  Json mean = Json::array();
  for (int i = 0; i < d; ++i) mean.push_back(model.mean(i));
  j["mean"] = std::move(mean);
  auto mat_to_json = [&](const Eigen::MatrixXd& m) {
    Json arr = Json::array();
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) arr.push_back(m(r, c));
    return arr;
  };
  j["between"] = mat_to_json(model.between);
  j["within"] = mat_to_json(model.within);
  write_json_file(path, j);
}

// ---------------------------------------------------------------------------
// Scoring
// ---------------------------------------------------------------------------

PldaScorer::PldaScorer(const PldaModel& model) : dim_(model.dim()), mean_(model.mean) {
  model.validate();
  const Eigen::MatrixXd total = symmetrized(model.between + model.within);
  const Eigen::MatrixXd sum = symmetrized(model.within + 2.0 * model.between);
  double log_det_total = 0.0, log_det_sum = 0.0, log_det_within = 0.0;
  spd_inverse_logdet(total, "B+W", &total_inv_, &log_det_total);
  spd_inverse_logdet(sum, "W+2B", &sum_inv_, &log_det_sum);
  spd_inverse_logdet(model.within, "W", &within_inv_, &log_det_within);
  log_det_const_ = 2.0 * log_det_total - log_det_sum - log_det_within;
}

double PldaScorer::score(std::span<const double> enroll, std::span<const double> test) const {
  if (static_cast<int>(enroll.size()) != dim_ || static_cast<int>(test.size()) != dim_)
    throw ComputeError("plda_score: dimension mismatch");
  const Eigen::VectorXd x = as_vec(enroll) - mean_;
  const Eigen::VectorXd y = as_vec(test) - mean_;
  const Eigen::VectorXd s = x + y;
  const Eigen::VectorXd d = x - y;
  const double q_diff = x.dot(total_inv_ * x) + y.dot(total_inv_ * y);
  const double q_same = 0.5 * s.dot(sum_inv_ * s) + 0.5 * d.dot(within_inv_ * d);
  return 0.5 * (log_det_const_ + q_diff - q_same);
}

double plda_score(const PldaModel& model, std::span<const double> enroll,
                  std::span<const double> test) {
  return PldaScorer(model).score(enroll, test);
}

// ---------------------------------------------------------------------------
// EM training
// ---------------------------------------------------------------------------

PldaModel plda_train_em(const EmbeddingSet& data, int iterations, double ridge_rel,
                        PldaTrainStats* stats) {
  const int d = data.dim();
  auto table = data.speaker_table();
  const std::size_t num_speakers = table.size();
  if (num_speakers < 2) throw ComputeError("plda_train_em: need at least 2 speakers");
  bool any_multi = false;
  for (const auto& [spk, rows] : table) any_multi |= rows.size() > 1;
  if (!any_multi)
    throw ComputeError(
        "plda_train_em: every speaker has a single utterance; "
        "within/between covariances are unidentifiable");

  // Flatten per-speaker data.
  struct Spk {
    std::vector<Eigen::VectorXd> x;
    Eigen::VectorXd sum;
  };
  std::vector<Spk> speakers;
  speakers.reserve(num_speakers);
  long total_count = 0;
  Eigen::VectorXd global_sum = Eigen::VectorXd::Zero(d);
  for (const auto& [spk, rows] : table) {
    Spk s;
    s.sum = Eigen::VectorXd::Zero(d);
    for (std::size_t r : rows) {
      Eigen::VectorXd v = as_vec(data.vec(r));
      s.sum += v;
      global_sum += v;
      s.x.push_back(std::move(v));
      ++total_count;
    }
    speakers.push_back(std::move(s));
  }

  // Initialization from scatter matrices.
  PldaModel model;
  model.mean = global_sum / static_cast<double>(total_count);
  Eigen::MatrixXd within_scatter = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd between_scatter = Eigen::MatrixXd::Zero(d, d);
  for (const Spk& s : speakers) {
    Eigen::VectorXd spk_mean = s.sum / static_cast<double>(s.x.size());
    for (const Eigen::VectorXd& v : s.x) {
      Eigen::VectorXd r = v - spk_mean;
      within_scatter += r * r.transpose();
    }
    Eigen::VectorXd c = spk_mean - model.mean;
    between_scatter += c * c.transpose();
  }
  model.within = symmetrized(within_scatter / static_cast<double>(total_count));
  model.between = symmetrized(between_scatter / static_cast<double>(num_speakers));
  model.within += (ridge_rel * model.within.trace() / d) * Eigen::MatrixXd::Identity(d, d);
  model.validate();

  auto log_likelihood = [&](const PldaModel& m) {
    Eigen::MatrixXd within_inv;
    double log_det_within = 0.0;
    spd_inverse_logdet(m.within, "W", &within_inv, &log_det_within);
    // Group speakers by count so (W + nB) factorizations are shared.
    std::map<int, std::pair<Eigen::MatrixXd, double>> by_count;  // n -> (inv, logdet)
    double llh = 0.0;
    for (const Spk& s : speakers) {
      const int n = static_cast<int>(s.x.size());
      auto it = by_count.find(n);
      if (it == by_count.end()) {
        Eigen::MatrixXd inv;
        double ld = 0.0;
        spd_inverse_logdet(symmetrized(m.within + n * m.between), "W+nB", &inv, &ld);
        it = by_count.emplace(n, std::make_pair(std::move(inv), ld)).first;
      }
      const Eigen::MatrixXd& wnb_inv = it->second.first;
      const double log_det_wnb = it->second.second;
      double quad = 0.0;
      for (const Eigen::VectorXd& v : s.x) {
        Eigen::VectorXd z = v - m.mean;
        quad += z.dot(within_inv * z);
      }
      Eigen::VectorXd centered_mean = s.sum / n - m.mean;
      quad -= n * centered_mean.dot((within_inv - wnb_inv) * centered_mean);
      llh += -0.5 * (n * d * std::log(2.0 * M_PI) + (n - 1) * log_det_within + log_det_wnb + quad);
    }
    return llh;
  };

  if (stats) {
    stats->log_likelihoods.clear();
    stats->log_likelihoods.push_back(log_likelihood(model));
  }

  for (int iter = 0; iter < iterations; ++iter) {
    Eigen::MatrixXd between_inv;
    Eigen::MatrixXd within_inv;
    spd_inverse_logdet(symmetrized(model.between +
                                   (1e-12 * std::max(1.0, model.between.trace() / d)) *
                                       Eigen::MatrixXd::Identity(d, d)),
                       "B", &between_inv, nullptr);
    spd_inverse_logdet(model.within, "W", &within_inv, nullptr);

    // E-step: posterior of each speaker variable, grouped by utterance count.
    std::map<int, Eigen::MatrixXd> post_cov;  // n -> (B^-1 + n W^-1)^-1
    Eigen::VectorXd mean_acc = Eigen::VectorXd::Zero(d);
    std::vector<Eigen::VectorXd> post_means(speakers.size());
    for (std::size_t si = 0; si < speakers.size(); ++si) {
      const Spk& s = speakers[si];
      const int n = static_cast<int>(s.x.size());
      auto it = post_cov.find(n);
      if (it == post_cov.end()) {
        Eigen::MatrixXd cov;
        spd_inverse_logdet(symmetrized(between_inv + n * within_inv), "posterior precision", &cov,
                           nullptr);
        it = post_cov.emplace(n, symmetrized(cov)).first;
      }
      post_means[si] = it->second * (between_inv * model.mean + within_inv * s.sum);
      mean_acc += post_means[si];
    }
    Eigen::VectorXd new_mean = mean_acc / static_cast<double>(speakers.size());

    // M-step.
    Eigen::MatrixXd new_between = Eigen::MatrixXd::Zero(d, d);
    Eigen::MatrixXd new_within = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t si = 0; si < speakers.size(); ++si) {
      const Spk& s = speakers[si];
      const int n = static_cast<int>(s.x.size());
      const Eigen::MatrixXd& cov = post_cov[n];
      Eigen::VectorXd db = post_means[si] - new_mean;
      new_between += cov + db * db.transpose();
      for (const Eigen::VectorXd& v : s.x) {
        Eigen::VectorXd dw = v - post_means[si];
        new_within += dw * dw.transpose();
      }
      new_within += n * cov;
    }
    model.mean = std::move(new_mean);
    model.between = symmetrized(new_between / static_cast<double>(speakers.size()));
    model.within = symmetrized(new_within / static_cast<double>(total_count));
    model.within += (ridge_rel * model.within.trace() / d) * Eigen::MatrixXd::Identity(d, d);

    if (stats) stats->log_likelihoods.push_back(log_likelihood(model));
  }

  model.validate();
  return model;
}

}  // namespace vpeval
