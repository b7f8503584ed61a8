// vpeval/kernels.cc

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

#include <cassert>
#include <cstdlib>
#include <string>

#include "vpeval/common.h"
#include "vpeval/version.h"

namespace vpeval::kernels {

// ===========================================================================
// Scalar reference lane
// ===========================================================================

namespace detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double squared_norm_scalar(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[i];
  return acc;
}

double sum_scalar(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

void add_inplace_scalar(double* acc, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += x[i];
}

void subtract_inplace_scalar(double* a, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] -= x[i];
}

void scale_inplace_scalar(double* a, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] *= s;
}

}  // namespace detail

// ===========================================================================
// Dispatch
// ===========================================================================

namespace {

struct Vtable {
  double (*dot)(const double*, const double*, std::size_t);
  double (*squared_norm)(const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  void (*add_inplace)(double*, const double*, std::size_t);
  void (*subtract_inplace)(double*, const double*, std::size_t);
  void (*scale_inplace)(double*, double, std::size_t);
};

constexpr Vtable kScalarVtable = {
    &detail::dot_scalar,          &detail::squared_norm_scalar,
    &detail::sum_scalar,          &detail::add_inplace_scalar,
    &detail::subtract_inplace_scalar, &detail::scale_inplace_scalar,
};

#ifdef VPEVAL_HAVE_AVX2_LANE
constexpr Vtable kAvx2Vtable = {
    &detail::dot_avx2,          &detail::squared_norm_avx2,
    &detail::sum_avx2,          &detail::add_inplace_avx2,
    &detail::subtract_inplace_avx2, &detail::scale_inplace_avx2,
};
#endif

bool cpu_has_avx2_fma() {
#if defined(VPEVAL_HAVE_AVX2_LANE) && defined(__GNUC__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Lane resolve_initial_lane() {
  const char* env = std::getenv("VPEVAL_KERNELS");
  std::string choice = env ? to_lower(env) : "auto";
  if (choice == "scalar") return Lane::kScalar;
  if (choice == "avx2") {
    if (!lane_available(Lane::kAvx2))
      throw ValidationError("VPEVAL_KERNELS=avx2 but this CPU/build has no avx2 lane");
    return Lane::kAvx2;
  }
  if (choice != "auto" && !choice.empty())
    throw ValidationError("VPEVAL_KERNELS must be scalar, avx2 or auto, got '" + choice + "'");
  return lane_available(Lane::kAvx2) ? Lane::kAvx2 : Lane::kScalar;
}

Lane g_lane = resolve_initial_lane();

const Vtable& table() {
#ifdef VPEVAL_HAVE_AVX2_LANE
  if (g_lane == Lane::kAvx2) return kAvx2Vtable;
#endif
  return kScalarVtable;
}

}  // namespace

const char* lane_name(Lane lane) {
  switch (lane) {
    case Lane::kScalar: return "scalar";
    case Lane::kAvx2: return "avx2";
  }
  return "unknown";
}

bool lane_available(Lane lane) {
  if (lane == Lane::kScalar) return true;
#ifdef VPEVAL_HAVE_AVX2_LANE
  static const bool ok = cpu_has_avx2_fma();
  return ok;
#else
  return false;
#endif
}

Lane active_lane() { return g_lane; }

const char* active_lane_name() { return lane_name(g_lane); }

void force_lane(Lane lane) {
  if (!lane_available(lane))
    throw ValidationError(std::string("kernel lane unavailable: ") + lane_name(lane));
  g_lane = lane;
}

// ===========================================================================
// Public entry points
// ===========================================================================

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return table().dot(a.data(), b.data(), a.size());
}

double squared_norm(std::span<const double> a) {
  return table().squared_norm(a.data(), a.size());
}

double sum(std::span<const double> a) { return table().sum(a.data(), a.size()); }

void add_inplace(std::span<double> acc, std::span<const double> x) {
  assert(acc.size() == x.size());
  table().add_inplace(acc.data(), x.data(), acc.size());
}

void subtract_inplace(std::span<double> a, std::span<const double> x) {
  assert(a.size() == x.size());
  table().subtract_inplace(a.data(), x.data(), a.size());
}

void scale_inplace(std::span<double> a, double s) {
  table().scale_inplace(a.data(), s, a.size());
}

namespace {
double pairwise_sum_rec(const double* a, std::size_t n) {
  if (n <= 8) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i];
    return acc;
  }
  std::size_t half = n / 2;
  return pairwise_sum_rec(a, half) + pairwise_sum_rec(a + half, n - half);
}
}  // namespace

double pairwise_sum(std::span<const double> a) {
  return pairwise_sum_rec(a.data(), a.size());
}

}  // namespace vpeval::kernels

namespace vpeval {

std::string engine_fingerprint() {
  return std::string("vpeval-") + kVersion + "+" + kernels::active_lane_name();
}

}  // namespace vpeval
