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


#pragma once

// Data-parallel inner loops used by quadrature, Cholesky, limit-field
// sampling and covariance accumulation.
//
// Every kernel exists as a scalar reference implementation and, on x86-64,
// as an AVX2/FMA variant compiled in its own translation unit. The variant is
// chosen once at startup from CPUID and can be forced with set_isa() or the
// LPCLT_SIMD environment variable ("scalar" or "avx2"). Results of the two
// variants agree to a few ulps of the accumulated magnitude; within one
// variant results are bit-reproducible.

#include <cstddef>
#include <span>
#include <string_view>

namespace lpclt::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

// Best variant supported by both the build and the running CPU.
Isa detected_isa();

Isa active_isa();

// Throws lpclt::Error if the requested variant is unavailable.
void set_isa(Isa isa);

// Raw kernel entry points. Pointers may alias only where noted.
struct KernelTable {
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y[i] += (alpha * x[i])^2
  void (*sq_axpy)(double alpha, const double* x, double* y, std::size_t n);
  // sum_i w[i] * |x[i]|^p for integer p >= 1, compensated accumulation
  double (*weighted_ipow_sum)(const double* x, const double* w, std::size_t n,
                              int p);
  // compensated (Neumaier) sum
  double (*sum)(const double* x, std::size_t n);
};

const KernelTable& scalar_kernels();

// Returns nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_kernels();

const KernelTable& active_kernels();

// Largest integer exponent routed through weighted_ipow_sum; larger or
// fractional exponents use std::pow per element.
inline constexpr int kMaxIntegerPower = 32;

double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void sq_axpy(double alpha, std::span<const double> x, std::span<double> y);
double compensated_sum(std::span<const double> x);

// sum_j w[j] * |x[j]|^p with compensated accumulation, any real p > 0.
double weighted_abs_pow_sum(std::span<const double> x,
                            std::span<const double> w, double p);

}  // namespace lpclt::simd
