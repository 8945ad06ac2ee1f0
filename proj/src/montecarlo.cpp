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


#include "lpclt/montecarlo.hpp"

#include <cmath>
#include <string>

#include "lpclt/error.hpp"
#include "lpclt/simd/kernels.hpp"

namespace lpclt {
namespace {

void check_reps(std::size_t reps) {
  if (reps < kMinReps) {
    throw Error(ErrorCode::kInsufficientReps,
                "need at least " + std::to_string(kMinReps) + " replications, got " +
                    std::to_string(reps));
  }
}

void check_grid(const FieldSpec& spec, const GridSpace& grid) {
  if (grid.size() != spec.grid_size()) {
    throw Error(ErrorCode::kDimensionMismatch, "field basis does not match the grid");
  }
}

// S_n for one replication into `out` (size grid).
void fill_sn(const FieldSpec& spec, std::size_t n, std::uint64_t seed, std::uint64_t replication,
             std::span<double> out) {
  const std::vector<double> sums = driver_sums(spec, n, seed, replication);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t k = 0; k < sums.size(); ++k) {
    simd::axpy(norm * sums[k], spec.basis()[k], out);
  }
}

}  // namespace

std::vector<double> simulate_sn(const FieldSpec& spec, std::size_t n, const GridSpace& grid,
                                std::uint64_t seed, std::uint64_t replication) {
  if (n < 1) throw Error(ErrorCode::kInvalidInput, "sequence length must be >= 1");
  check_grid(spec, grid);
  std::vector<double> out(grid.size());
  fill_sn(spec, n, seed, replication, out);
  return out;
}

std::vector<double> sample_sn_norms(const FieldSpec& spec, std::size_t n, double p,
                                    const GridSpace& grid, std::size_t reps, std::uint64_t seed,
                                    Parallelism par) {
  if (n < 1) throw Error(ErrorCode::kInvalidInput, "sequence length must be >= 1");
  check_grid(spec, grid);
  std::vector<double> norms(reps);
  parallel_for(reps, par, [&](std::size_t begin, std::size_t end) {
    std::vector<double> field(grid.size());
    for (std::size_t r = begin; r < end; ++r) {
      fill_sn(spec, n, seed, r, field);
      norms[r] = lp_norm(field, p, grid);
    }
  });
  return norms;
}

MomentEstimate summarize_moment(std::span<const double> norms, double s, double p, std::size_t n) {
  check_reps(norms.size());
  const std::size_t reps = norms.size();
  std::vector<double> powered(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    powered[r] = s == 2.0 ? norms[r] * norms[r] : std::pow(norms[r], s);
  }
  const double count = static_cast<double>(reps);
  const double mean = simd::compensated_sum(powered) / count;
  std::vector<double> dev2(reps);
  std::vector<double> dev4(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const double d = powered[r] - mean;
    dev2[r] = d * d;
    dev4[r] = dev2[r] * dev2[r];
  }
  const double m2 = simd::compensated_sum(dev2) / count;
  const double m4 = simd::compensated_sum(dev4) / count;
  const double sd = std::sqrt(m2 * count / (count - 1.0));
  const double se = sd / std::sqrt(count);
  MomentEstimate est;
  est.value = mean;
  est.std_error = se;
  est.ci_low = mean - kZ99 * se;
  est.ci_high = mean + kZ99 * se;
  est.reps = reps;
  est.n = n;
  est.s = s;
  est.p = p;
  est.kurtosis = m2 > 0.0 ? m4 / (m2 * m2) : 0.0;
  est.heavy_tailed = est.kurtosis > kHeavyTailKurtosis;
  return est;
}

MomentEstimate estimate_moment(const FieldSpec& spec, std::size_t n, double s, double p,
                               const GridSpace& grid, std::size_t reps, std::uint64_t seed,
                               Parallelism par) {
  check_reps(reps);
  if (!(s >= 1.0)) throw Error(ErrorCode::kInvalidOrder, "moment order must be >= 1");
  const std::vector<double> norms = sample_sn_norms(spec, n, p, grid, reps, seed, par);
  return summarize_moment(norms, s, p, n);
}

std::vector<double> sample_sn_fields(const FieldSpec& spec, std::size_t n, const GridSpace& grid,
                                     std::size_t reps, std::uint64_t seed, Parallelism par) {
  if (n < 1) throw Error(ErrorCode::kInvalidInput, "sequence length must be >= 1");
  check_grid(spec, grid);
  const std::size_t g = grid.size();
  std::vector<double> fields(reps * g);
  parallel_for(reps, par, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      fill_sn(spec, n, seed, r, std::span<double>(fields.data() + r * g, g));
    }
  });
  return fields;
}

CovarianceEstimate empirical_cov(const FieldSpec& spec, std::size_t n, const GridSpace& grid,
                                 std::size_t reps, std::uint64_t seed, Parallelism par) {
  check_reps(reps);
  const std::size_t g = grid.size();
  const std::vector<double> fields = sample_sn_fields(spec, n, grid, reps, seed, par);

  // Lower triangle of sum S S^T and sum (S_i S_j)^2, in replication order.
  std::vector<double> sum(g * g, 0.0);
  std::vector<double> sum_sq(g * g, 0.0);
  for (std::size_t r = 0; r < reps; ++r) {
    const double* field = fields.data() + r * g;
    for (std::size_t i = 0; i < g; ++i) {
      const std::span<const double> head(field, i + 1);
      simd::axpy(field[i], head, std::span<double>(sum.data() + i * g, i + 1));
      simd::sq_axpy(field[i], head, std::span<double>(sum_sq.data() + i * g, i + 1));
    }
  }

  CovarianceEstimate est{g, reps, std::vector<double>(g * g), std::vector<double>(g * g)};
  const double count = static_cast<double>(reps);
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double mean = sum[i * g + j] / count;
      const double second = sum_sq[i * g + j] / count;
      const double var = std::max(0.0, second - mean * mean) * count / (count - 1.0);
      const double se = std::sqrt(var / count);
      est.covariance[i * g + j] = est.covariance[j * g + i] = mean;
      est.std_error[i * g + j] = est.std_error[j * g + i] = se;
    }
  }
  return est;
}

}  // namespace lpclt
