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

// Explicit constants and inequality right-hand sides for normed sums of
// mixing sequences: Utev's a_s and K_U, the mixing series Z[alpha](s, v),
// the L^s(T) moment bound, Nachapetyan's K_N[beta](s), and Chebyshev tails.
//
// Divergent series are reported as +infinity, never thrown.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpclt/mixing.hpp"

namespace lpclt::bounds {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kMaxUtevOrder = 64;
inline constexpr double kDefaultTolerance = 1e-10;
// The decimal value printed next to the K_U closed form in the literature.
// It does not agree with the closed form past the fourth digit; see
// ku_constant().
inline constexpr double kKuPrintedValue = 4.760327;

struct UtevConstant {
  int s = 0;
  BigInt value;
  // value^{1/s}
  double root = 0.0;

  std::string decimal() const { return value.str(); }
};

// a_s = 12 (1 + 2s/3) (s-1) 3^s (s!)^2 / ((s/2)!)^2, exact. Even s in [2, 64].
UtevConstant utev_a(int s);

// 2^{-5/12} * 3 * sqrt(7) * exp(2/e - 23/24) evaluated from the closed form
// (4.7596854635...).
double ku_constant();

struct KuCheck {
  int s = 0;
  double lhs = 0.0;  // a_s^{1/s}
  double rhs = 0.0;  // K_U * s
  bool holds = false;
};

// Reports both sides of a_s^{1/s} <= K_U s; does not assert it.
KuCheck ku_check(int s);

// Smallest even s such that ku_check holds for every even order in
// [s, max_s]; nullopt if it fails at max_s.
std::optional<int> ku_crossover_order(int max_s = kMaxUtevOrder);

struct SeriesSum {
  double sum = 0.0;
  // Upper bound on the neglected part (Euler-Maclaurin error bound for the
  // polynomial class, where the tail itself is included in `sum`).
  double remainder = 0.0;
  std::int64_t terms = 0;
  bool converges = true;
};

// sum_{r>=0} alpha^{1-s/v}(r) (r+1)^{s/2-1} with alpha(0) = 1/4.
SeriesSum alpha_series(const MixingProfile& profile, int s, double v,
                       double tol = kDefaultTolerance);

struct ZValue {
  int s = 0;
  double v = 0.0;
  double value = 0.0;  // +infinity when the series diverges
  std::int64_t truncation_terms = 0;
  double truncation_remainder = 0.0;

  bool finite() const;
};

// Z[alpha](s, v) = (a_s * alpha_series)^{1/s}.
ZValue z_value(const MixingProfile& profile, int s, double v,
               double tol = kDefaultTolerance);

// Z from the first `terms` lags (r = 0 .. terms-1) only, no tail estimate.
double z_value_truncated(const MixingProfile& profile, int s, double v,
                         std::int64_t terms);

struct BoundReport {
  int s = 0;
  double v = 0.0;
  double z_value = 0.0;
  double y_value = 0.0;
  double bound = 0.0;
  std::int64_t truncation_terms = 0;
  double truncation_remainder = 0.0;

  bool finite() const;
};

// Z[alpha](s, v) together with y = sup_i ||X_i||_v and the product bound.
BoundReport bound_report(const MixingProfile& profile, int s, double v, double y,
                         double tol = kDefaultTolerance);

// z * sqrt(sum_i ||X_i||_v^2)
double sum_bound(std::span<const double> per_term_v_norms, double z);

// z * y: uniform-in-n bound on ||n^{-1/2} sum X_i||_s.
double normed_sum_bound(double y, double z);

struct VOptimum {
  std::optional<double> v_star;  // empty when every grid point diverges
  double bound = 0.0;
};

// Grid minimiser of Z[alpha](s, v) * ||X||_v over v.
VOptimum optimize_over_v(const MixingProfile& profile, int s,
                         std::span<const double> v_grid,
                         const std::function<double(double)>& x_vnorm,
                         double tol = kDefaultTolerance);

// s+0.5, s+1, ..., 2s, then 3s.
std::vector<double> default_v_grid(int s);

// Z^s * (sup_i E||xi_i||_v^v)^{s/v}: bound on sup_n E||S_n||_s^s.
double lp_moment_bound(const MixingProfile& profile, int s, double v,
                       double sup_v_norm_integral, double tol = kDefaultTolerance);

// sum_{k>=1} beta(k) (k+1)^{(s-2)/2}
SeriesSum beta_series(const MixingProfile& beta_profile, double s,
                      double tol = kDefaultTolerance);

// K_N[beta](s) = 2 s (beta_series)^{1/s}; +infinity on divergence.
double nachapetyan_k(const MixingProfile& beta_profile, double s,
                     double tol = kDefaultTolerance);

double nachapetyan_bound(double k_n, double sup_s_norm);

struct TailReport {
  double s = 0.0;
  double w_value = 0.0;
  std::vector<double> y_grid;
  std::vector<double> q_bound;
};

// q[j] = min(1, w / y[j]^s), an upper bound on sup_n P(||S_n||_s > y[j]).
TailReport chebyshev_tail(double w, double s, std::span<const double> y_grid);

struct EvenOrderLift {
  int order = 0;
  // Non-empty when the caller's measure is not a probability measure.
  std::string warning;
};

// Smallest even integer >= s.
EvenOrderLift effective_even_order(double s, bool unit_mass = true);

}  // namespace lpclt::bounds
