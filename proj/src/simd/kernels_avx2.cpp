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


// Compiled with -mavx2 -mfma. Only reached after the CPUID check in
// dispatch.cpp; keep this file free of inline library templates so no
// AVX2-encoded copy of a shared inline function escapes into the link.

#include <immintrin.h>

#include <cmath>

#include "kernels_internal.hpp"

namespace lpclt::simd::detail {
namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

__m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
    acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3)));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void sq_axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(t, t, _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) {
    const double t = alpha * x[i];
    y[i] += t * t;
  }
}

__m256d ipow_abs_pd(__m256d x, int p) {
  __m256d base = abs_pd(x);
  __m256d result = _mm256_set1_pd(1.0);
  bool first = true;
  while (p > 0) {
    if (p & 1) {
      result = first ? base : _mm256_mul_pd(result, base);
      first = false;
    }
    p >>= 1;
    if (p > 0) base = _mm256_mul_pd(base, base);
  }
  return result;
}

// Four independent Neumaier accumulators, one per lane.
struct LaneNeumaier {
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();

  void add(__m256d v) {
    const __m256d t = _mm256_add_pd(sum, v);
    const __m256d big_sum = _mm256_cmp_pd(abs_pd(sum), abs_pd(v), _CMP_GE_OQ);
    const __m256d c_sum = _mm256_add_pd(_mm256_sub_pd(sum, t), v);
    const __m256d c_v = _mm256_add_pd(_mm256_sub_pd(v, t), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(c_v, c_sum, big_sum));
    sum = t;
  }
};

struct ScalarNeumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
};

double finish(const LaneNeumaier& lanes, ScalarNeumaier tail) {
  alignas(32) double s[4];
  alignas(32) double c[4];
  _mm256_store_pd(s, lanes.sum);
  _mm256_store_pd(c, lanes.comp);
  ScalarNeumaier acc;
  for (int k = 0; k < 4; ++k) acc.add(s[k]);
  acc.add(tail.sum);
  double comp = acc.comp + tail.comp;
  for (int k = 0; k < 4; ++k) comp += c[k];
  return acc.sum + comp;
}

double weighted_ipow_sum_avx2(const double* x, const double* w, std::size_t n,
                              int p) {
  LaneNeumaier lanes;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    lanes.add(_mm256_mul_pd(_mm256_loadu_pd(w + i), ipow_abs_pd(_mm256_loadu_pd(x + i), p)));
  }
  ScalarNeumaier tail;
  for (; i < n; ++i) tail.add(w[i] * ipow_abs(x[i], p));
  return finish(lanes, tail);
}

double sum_avx2(const double* x, std::size_t n) {
  LaneNeumaier lanes;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) lanes.add(_mm256_loadu_pd(x + i));
  ScalarNeumaier tail;
  for (; i < n; ++i) tail.add(x[i]);
  return finish(lanes, tail);
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{dot_avx2, axpy_avx2, sq_axpy_avx2,
                                 weighted_ipow_sum_avx2, sum_avx2};
  return table;
}

}  // namespace lpclt::simd::detail
