// vpeval/kernels.h

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

#ifndef VPEVAL_KERNELS_H_
#define VPEVAL_KERNELS_H_

#include <cstddef>
#include <span>

// Dense double-precision kernels behind trial scoring and similarity-matrix
// construction. Every kernel has a scalar reference implementation; on x86-64
// an AVX2+FMA variant is selected at runtime when the CPU supports it. The
// environment variable VPEVAL_KERNELS=scalar|avx2|auto overrides detection.
//
// The vectorized reductions (dot, squared_norm, sum) may differ from the
// scalar lane in the last ulps because they reassociate the accumulation;
// the equivalence tests bound that difference. Elementwise kernels are
// bit-identical across lanes. pairwise_sum always uses one fixed summation
// tree regardless of lane, so deterministic aggregates (similarity-cell
// means) do not depend on the dispatch decision.

namespace vpeval::kernels {

enum class Lane { kScalar = 0, kAvx2 = 1 };

const char* lane_name(Lane lane);
bool lane_available(Lane lane);

// Active lane: resolved once from CPU detection + VPEVAL_KERNELS.
Lane active_lane();
const char* active_lane_name();

// Test hook. Throws ValidationError if the lane is unavailable.
void force_lane(Lane lane);

double dot(std::span<const double> a, std::span<const double> b);
double squared_norm(std::span<const double> a);
double sum(std::span<const double> a);

// acc[i] += x[i]
void add_inplace(std::span<double> acc, std::span<const double> x);
// a[i] -= x[i]
void subtract_inplace(std::span<double> a, std::span<const double> x);
// a[i] *= s
void scale_inplace(std::span<double> a, double s);

// Fixed-tree pairwise summation, lane-independent and bit-stable.
double pairwise_sum(std::span<const double> a);

namespace detail {

double dot_scalar(const double* a, const double* b, std::size_t n);
double squared_norm_scalar(const double* a, std::size_t n);
double sum_scalar(const double* a, std::size_t n);
void add_inplace_scalar(double* acc, const double* x, std::size_t n);
void subtract_inplace_scalar(double* a, const double* x, std::size_t n);
void scale_inplace_scalar(double* a, double s, std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
#define VPEVAL_HAVE_AVX2_LANE 1
double dot_avx2(const double* a, const double* b, std::size_t n);
double squared_norm_avx2(const double* a, std::size_t n);
double sum_avx2(const double* a, std::size_t n);
void add_inplace_avx2(double* acc, const double* x, std::size_t n);
void subtract_inplace_avx2(double* a, const double* x, std::size_t n);
void scale_inplace_avx2(double* a, double s, std::size_t n);
#endif

}  // namespace detail

}  // namespace vpeval::kernels

#endif  // VPEVAL_KERNELS_H_
