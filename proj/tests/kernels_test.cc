// tests/kernels_test.cc

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

#include "vpeval/kernels.h"

#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

namespace vpeval::kernels {
namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

TEST_CASE("scalar dot/norm/sum agree with simple formulas") {
  std::vector<double> a{1.0, 2.0, 3.0};
  std::vector<double> b{-1.0, 0.5, 2.0};
  CHECK(detail::dot_scalar(a.data(), b.data(), 3) == doctest::Approx(6.0));
  CHECK(detail::squared_norm_scalar(a.data(), 3) == doctest::Approx(14.0));
  CHECK(detail::sum_scalar(a.data(), 3) == doctest::Approx(6.0));
}

#ifdef VPEVAL_HAVE_AVX2_LANE
TEST_CASE("avx2 lane matches scalar lane within reassociation error") {
  if (!lane_available(Lane::kAvx2)) return;
  std::mt19937_64 rng(7);
  // Sweep sizes across remainder paths and past the unroll width.
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 15u, 16u, 17u, 31u, 64u, 257u, 4096u}) {
    auto a = random_vec(rng, n);
    auto b = random_vec(rng, n);
    double abs_prod = 0.0;
    for (std::size_t i = 0; i < n; ++i) abs_prod += std::abs(a[i] * b[i]);
    const double tol = 4.0 * static_cast<double>(n + 1) * 2.3e-16 * (abs_prod + 1.0);

    CHECK(std::abs(detail::dot_avx2(a.data(), b.data(), n) -
                   detail::dot_scalar(a.data(), b.data(), n)) <= tol);
    CHECK(std::abs(detail::squared_norm_avx2(a.data(), n) -
                   detail::squared_norm_scalar(a.data(), n)) <= tol);
    CHECK(std::abs(detail::sum_avx2(a.data(), n) - detail::sum_scalar(a.data(), n)) <= tol);

    // Elementwise kernels must be bit-identical.
    auto acc1 = a, acc2 = a;
    detail::add_inplace_scalar(acc1.data(), b.data(), n);
    detail::add_inplace_avx2(acc2.data(), b.data(), n);
    CHECK(acc1 == acc2);
    auto sub1 = a, sub2 = a;
    detail::subtract_inplace_scalar(sub1.data(), b.data(), n);
    detail::subtract_inplace_avx2(sub2.data(), b.data(), n);
    CHECK(sub1 == sub2);
    auto sc1 = a, sc2 = a;
    detail::scale_inplace_scalar(sc1.data(), 1.7, n);
    detail::scale_inplace_avx2(sc2.data(), 1.7, n);
    CHECK(sc1 == sc2);
  }
}
#endif

TEST_CASE("pairwise_sum is lane-independent and exact on integers") {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i + 1);
  CHECK(pairwise_sum(v) == 500500.0);

  Lane original = active_lane();
  force_lane(Lane::kScalar);
  double scalar_result = pairwise_sum(v);
  if (lane_available(Lane::kAvx2)) {
    force_lane(Lane::kAvx2);
    CHECK(pairwise_sum(v) == scalar_result);
  }
  force_lane(original);
}

TEST_CASE("dispatch reports an available lane") {
  CHECK(lane_available(Lane::kScalar));
  CHECK(lane_available(active_lane()));
  CHECK(std::string(active_lane_name()) == lane_name(active_lane()));
}

}  // namespace
}  // namespace vpeval::kernels
