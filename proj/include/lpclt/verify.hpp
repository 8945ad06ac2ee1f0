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

// Empirical checks of the limit theorem and of the moment inequalities:
// two-sample Kolmogorov-Smirnov comparisons of ||S_n||_p against the
// Gaussian limit, bound-versus-estimate verdicts, and one-dimensional
// projection variances.
//
// A finite battery of norm and projection tests can only refute weak
// convergence, never establish it.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpclt/bounds.hpp"
#include "lpclt/discretize.hpp"
#include "lpclt/fieldgen.hpp"
#include "lpclt/mixing.hpp"
#include "lpclt/montecarlo.hpp"
#include "lpclt/parallel.hpp"

namespace lpclt {

struct KsResult {
  double stat = 0.0;
  double p_value = 1.0;
};

// Kolmogorov survival function Q(x) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2).
double kolmogorov_survival(double x);

// Two-sample statistic sup |F_a - F_b| and asymptotic p-value
// Q(sqrt(m n / (m + n)) D).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct CltVerdict {
  std::size_t n = 0;
  double p = 0.0;
  double ks_stat = 0.0;
  double p_value = 1.0;
  std::size_t reps_finite = 0;
  std::size_t reps_limit = 0;
  bool pass = false;
};

struct CltOptions {
  std::size_t limit_factor = 4;
  Parallelism par{};
  // Replaces the analytic long-run matrix (K x K, row-major).
  std::optional<std::vector<double>> lambda_override;
};

struct CltReport {
  std::vector<CltVerdict> verdicts;
  double significance = 0.01;
  // 1 / sqrt(m n / (m + n)): the scale of the KS statistic under the null.
  double noise_scale = 0.0;
  // Largest step-to-step increase of the KS statistic along the schedule.
  double max_increase = 0.0;
  bool pass_at_largest = false;
  // No increase by more than twice the noise scale.
  bool trend_ok = true;
  bool converged = false;
  double limit_relative_jitter = 0.0;
  bool limit_pivoted = false;
};

// Schedule entry n uses finite-sample seed derive_seed(seed, n); the limit
// sample is shared across the schedule.
CltReport verify_clt(const FieldSpec& spec, std::span<const std::size_t> n_schedule, double p,
                     const GridSpace& grid, std::size_t reps, double significance,
                     std::uint64_t seed, const CltOptions& options = {});

enum class BoundStatus { kSatisfied, kViolated, kVacuous };

std::string_view bound_status_name(BoundStatus status);

struct BoundVerdict {
  MomentEstimate empirical;             // largest estimate over the schedule
  std::vector<MomentEstimate> per_n;    // one per schedule entry
  double theoretical = 0.0;             // +infinity when the constant diverges
  bool satisfied = false;               // ci_high <= theoretical
  bool vacuous = false;
  double slack = 0.0;                   // theoretical - ci_high
  double constant = 0.0;                // Z[alpha](s, v) or K_N[beta](s)
  double norm_integral = 0.0;           // sup_i E||xi_i||^v_v (v = s for K_N)

  BoundStatus status() const;
};

// Verdict from estimates and a theoretical value; the sup over n is taken
// as the maximum over the schedule.
BoundVerdict make_bound_verdict(std::vector<MomentEstimate> per_n, double theoretical);

// sup_n E||S_n||_s^s against Z^s (sup_i E||xi_i||_v^v)^{s/v}, with the
// profile certified for the spec's driver.
BoundVerdict verify_moment_bound(const FieldSpec& spec, int s, double v,
                                 std::span<const std::size_t> n_schedule, const GridSpace& grid,
                                 std::size_t reps, std::uint64_t seed, Parallelism par = {},
                                 double tol = bounds::kDefaultTolerance);

// Same with an explicit alpha profile.
BoundVerdict verify_moment_bound(const FieldSpec& spec, const MixingProfile& profile, int s,
                                 double v, std::span<const std::size_t> n_schedule,
                                 const GridSpace& grid, std::size_t reps, std::uint64_t seed,
                                 Parallelism par = {}, double tol = bounds::kDefaultTolerance);

// sup_n E||S_n||_s^s against K_N[beta](s)^s int_T sup_i E|xi_i(t)|^s dmu.
BoundVerdict verify_superstrong(const FieldSpec& spec, const MixingProfile& beta_profile, double s,
                                std::span<const std::size_t> n_schedule, const GridSpace& grid,
                                std::size_t reps, std::uint64_t seed, Parallelism par = {},
                                double tol = bounds::kDefaultTolerance);

// Chebyshev tail bound for sup_n P(||S_n||_s > y) with
// W = Z^s (sup_i E||xi_i||_v^v)^{s/v}.
bounds::TailReport tail_report(const FieldSpec& spec, const MixingProfile& profile, int s, double v,
                               const GridSpace& grid, std::span<const double> y_grid,
                               double tol = bounds::kDefaultTolerance);

struct ProjectionCheck {
  double empirical = 0.0;       // mean of eta^2, eta = int S_n x dmu
  double analytic = 0.0;        // x^T W R_n W x at the same n
  double analytic_limit = 0.0;  // x^T W R W x
  double std_error = 0.0;
  bool within_ci = false;
};

ProjectionCheck projection_variance_check(const FieldSpec& spec, std::span<const double> x,
                                          std::size_t n, const GridSpace& grid, std::size_t reps,
                                          std::uint64_t seed, Parallelism par = {});

}  // namespace lpclt
