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

// The Gaussian limit field S with covariance
// R(t1, t2) = sum_{k,l} Lambda_{kl} phi_k(t1) phi_l(t2), discretised on the
// grid and factorised for sampling.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lpclt/discretize.hpp"
#include "lpclt/fieldgen.hpp"
#include "lpclt/parallel.hpp"

namespace lpclt {

// Diagonal jitter tried in order, relative to the largest diagonal entry.
inline constexpr std::array<double, 4> kJitterSchedule{0.0, 1e-12, 1e-10, 1e-8};

struct LimitField {
  std::size_t grid_size = 0;
  std::vector<double> covariance;  // row-major grid x grid
  // Lower-triangular L with (P L)(P L)^T = covariance + jitter I, where row
  // i of L belongs to grid point permutation[i].
  std::vector<double> factor;
  std::vector<std::size_t> permutation;
  double jitter = 0.0;           // absolute amount added to the diagonal
  double relative_jitter = 0.0;  // schedule entry that succeeded
  bool pivoted = false;          // true when the pivoted fallback was needed
};

// Factorises a symmetric PSD matrix with the jitter schedule; throws
// Error(kDegenerateCovariance) when even the pivoted fallback fails.
LimitField factorize_covariance(std::vector<double> covariance, std::size_t grid_size);

// R from an explicit K x K long-run matrix and basis vectors.
LimitField limit_from_lambda(std::span<const double> lambda,
                             const std::vector<std::vector<double>>& basis);

LimitField limit_covariance(const FieldSpec& spec, const GridSpace& grid);

// One draw of S on the grid from stream (seed, limit, replication).
std::vector<double> sample_limit_field(const LimitField& field, std::uint64_t seed,
                                       std::uint64_t replication);

// ||S||_p for replications 0..reps-1.
std::vector<double> sample_limit_norms(const LimitField& field, double p, const GridSpace& grid,
                                       std::size_t reps, std::uint64_t seed, Parallelism par = {});

}  // namespace lpclt
