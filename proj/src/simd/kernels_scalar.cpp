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


#include <cmath>

#include "kernels_internal.hpp"

namespace lpclt::simd::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void sq_axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double t = alpha * x[i];
    y[i] += t * t;
  }
}

// Neumaier's variant of Kahan summation.
struct Neumaier {
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
  double result() const { return sum + comp; }
};

double weighted_ipow_sum_scalar(const double* x, const double* w, std::size_t n,
                                int p) {
  Neumaier acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(w[i] * ipow_abs(x[i], p));
  return acc.result();
}

double sum_scalar(const double* x, std::size_t n) {
  Neumaier acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(x[i]);
  return acc.result();
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{dot_scalar, axpy_scalar, sq_axpy_scalar,
                                 weighted_ipow_sum_scalar, sum_scalar};
  return table;
}

}  // namespace lpclt::simd::detail
