// Copyright 2026 The lpclt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "kernels_internal.hpp"
#include "lpclt/error.hpp"

namespace lpclt::simd {
namespace {

bool cpu_has_avx2() {
#if defined(LPCLT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() {
  Isa isa = detected_isa();
  if (const char* env = std::getenv("LPCLT_SIMD")) {
    const std::string want(env);
    if (want == "scalar") isa = Isa::kScalar;
    // "avx2" only honoured when the CPU supports it.
  }
  return isa;
}

std::atomic<Isa>& isa_slot() {
  static std::atomic<Isa> slot{initial_isa()};
  return slot;
}

void check_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::kDimensionMismatch,
                "kernel operands differ in length (" + std::to_string(a) +
                    " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

Isa detected_isa() {
  static const Isa isa = cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar;
  return isa;
}

Isa active_isa() { return isa_slot().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (isa == Isa::kAvx2 && detected_isa() != Isa::kAvx2) {
    throw Error(ErrorCode::kUnsupported, "AVX2 kernels unavailable on this build or CPU");
  }
  isa_slot().store(isa, std::memory_order_relaxed);
}

const KernelTable& scalar_kernels() { return detail::scalar_table(); }

const KernelTable* avx2_kernels() {
#if defined(LPCLT_HAVE_AVX2)
  return cpu_has_avx2() ? &detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
#if defined(LPCLT_HAVE_AVX2)
  if (active_isa() == Isa::kAvx2) return detail::avx2_table();
#endif
  return detail::scalar_table();
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_same_size(a.size(), b.size());
  return active_kernels().dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  check_same_size(x.size(), y.size());
  active_kernels().axpy(alpha, x.data(), y.data(), x.size());
}

void sq_axpy(double alpha, std::span<const double> x, std::span<double> y) {
  check_same_size(x.size(), y.size());
  active_kernels().sq_axpy(alpha, x.data(), y.data(), x.size());
}

double compensated_sum(std::span<const double> x) {
  return active_kernels().sum(x.data(), x.size());
}

double weighted_abs_pow_sum(std::span<const double> x, std::span<const double> w,
                            double p) {
  check_same_size(x.size(), w.size());
  const double rounded = std::nearbyint(p);
  if (rounded == p && p >= 1.0 && p <= kMaxIntegerPower) {
    return active_kernels().weighted_ipow_sum(x.data(), w.data(), x.size(),
                                              static_cast<int>(p));
  }
  // Fractional exponent: no vector pow, so the terms are formed here and
  // only the compensated reduction is dispatched.
  std::vector<double> terms(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    terms[j] = w[j] * std::pow(std::fabs(x[j]), p);
  }
  return active_kernels().sum(terms.data(), terms.size());
}

}  // namespace lpclt::simd
