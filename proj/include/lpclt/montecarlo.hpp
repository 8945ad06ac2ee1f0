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

// Normed sums S_n = n^{-1/2} sum_{i<=n} xi_i on the grid, Monte Carlo
// moments of their L^p norms and finite-n covariance estimates.
//
// Replication r always reads the driver streams (seed, r, k), and every
// reduction runs serially over the replication index, so results do not
// depend on the thread count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lpclt/discretize.hpp"
#include "lpclt/fieldgen.hpp"
#include "lpclt/parallel.hpp"

namespace lpclt {

inline constexpr std::size_t kMinReps = 100;
// Two-sided 99% standard normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;
inline constexpr double kHeavyTailKurtosis = 100.0;

struct MomentEstimate {
  double value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double std_error = 0.0;
  std::size_t reps = 0;
  std::size_t n = 0;
  double s = 0.0;
  double p = 0.0;
  // Kurtosis of the per-replication ||S_n||_p^s values.
  double kurtosis = 0.0;
  bool heavy_tailed = false;
};

// One realisation of S_n on the grid.
std::vector<double> simulate_sn(const FieldSpec& spec, std::size_t n, const GridSpace& grid,
                                std::uint64_t seed, std::uint64_t replication = 0);

// ||S_n||_p for replications 0..reps-1.
std::vector<double> sample_sn_norms(const FieldSpec& spec, std::size_t n, double p,
                                    const GridSpace& grid, std::size_t reps, std::uint64_t seed,
                                    Parallelism par = {});

// Mean of norms^s with a 99% normal-approximation interval.
MomentEstimate summarize_moment(std::span<const double> norms, double s, double p, std::size_t n);

MomentEstimate estimate_moment(const FieldSpec& spec, std::size_t n, double s, double p,
                               const GridSpace& grid, std::size_t reps, std::uint64_t seed,
                               Parallelism par = {});

// Known-mean estimator of R_n = E[S_n S_n^T] (the field is centred), with
// per-entry standard errors. Row-major grid x grid.
struct CovarianceEstimate {
  std::size_t grid_size = 0;
  std::size_t reps = 0;
  std::vector<double> covariance;
  std::vector<double> std_error;

  double at(std::size_t i, std::size_t j) const { return covariance[i * grid_size + j]; }
  double se(std::size_t i, std::size_t j) const { return std_error[i * grid_size + j]; }
};

CovarianceEstimate empirical_cov(const FieldSpec& spec, std::size_t n, const GridSpace& grid,
                                 std::size_t reps, std::uint64_t seed, Parallelism par = {});

// The replications themselves, row-major reps x grid.
std::vector<double> sample_sn_fields(const FieldSpec& spec, std::size_t n, const GridSpace& grid,
                                     std::size_t reps, std::uint64_t seed, Parallelism par = {});

}  // namespace lpclt
