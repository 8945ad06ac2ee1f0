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


#include "lpclt/limitlaw.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <optional>

#include "lpclt/error.hpp"
#include "lpclt/montecarlo.hpp"
#include "lpclt/rng.hpp"
#include "lpclt/simd/kernels.hpp"

namespace lpclt {
namespace {

constexpr double kIndefiniteTolerance = 1e-10;

// Plain Cholesky of a + jitter I; nullopt on a nonpositive pivot.
std::optional<std::vector<double>> cholesky(const std::vector<double>& a, std::size_t g,
                                            double jitter) {
  std::vector<double> l(g * g, 0.0);
  for (std::size_t i = 0; i < g; ++i) {
    const std::span<const double> row_i(l.data() + i * g, g);
    for (std::size_t j = 0; j <= i; ++j) {
      const std::span<const double> row_j(l.data() + j * g, g);
      const double partial = simd::dot(row_i.first(j), row_j.first(j));
      double value = a[i * g + j] - partial;
      if (i == j) {
        value += jitter;
        if (!(value > 0.0) || !std::isfinite(value)) return std::nullopt;
        l[i * g + i] = std::sqrt(value);
      } else {
        l[i * g + j] = value / l[j * g + j];
      }
    }
  }
  return l;
}

// Outer-product Cholesky with diagonal pivoting; stops once the remaining
// diagonal is negligible, which handles positive semidefinite input.
LimitField pivoted_cholesky(std::vector<double> a, std::size_t g, double jitter, double max_diag) {
  LimitField out;
  out.grid_size = g;
  out.covariance = a;
  out.factor.assign(g * g, 0.0);
  out.permutation.resize(g);
  std::iota(out.permutation.begin(), out.permutation.end(), std::size_t{0});
  out.jitter = jitter;
  out.pivoted = true;
  for (std::size_t i = 0; i < g; ++i) a[i * g + i] += jitter;

  auto& l = out.factor;
  auto& perm = out.permutation;
  const double negligible = std::numeric_limits<double>::epsilon() * g * std::max(max_diag, 1e-300);
  for (std::size_t k = 0; k < g; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < g; ++i) {
      if (a[i * g + i] > a[pivot * g + pivot]) pivot = i;
    }
    for (std::size_t i = k; i < g; ++i) {
      if (a[i * g + i] < -kIndefiniteTolerance * max_diag) {
        throw Error(ErrorCode::kDegenerateCovariance,
                    "covariance is not positive semidefinite (pivot " +
                        std::to_string(a[i * g + i]) + ")");
      }
    }
    if (pivot != k) {
      for (std::size_t c = 0; c < g; ++c) std::swap(a[k * g + c], a[pivot * g + c]);
      for (std::size_t r = 0; r < g; ++r) std::swap(a[r * g + k], a[r * g + pivot]);
      for (std::size_t c = 0; c < k; ++c) std::swap(l[k * g + c], l[pivot * g + c]);
      std::swap(perm[k], perm[pivot]);
    }
    const double d = a[k * g + k];
    if (d <= negligible) break;  // remaining Schur complement is numerically zero
    const double root = std::sqrt(d);
    l[k * g + k] = root;
    for (std::size_t i = k + 1; i < g; ++i) l[i * g + k] = a[i * g + k] / root;
    for (std::size_t i = k + 1; i < g; ++i) {
      for (std::size_t j = k + 1; j <= i; ++j) {
        a[i * g + j] -= l[i * g + k] * l[j * g + k];
        a[j * g + i] = a[i * g + j];
      }
    }
  }
  for (double value : l) {
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::kDegenerateCovariance, "factorisation produced non-finite entries");
    }
  }
  return out;
}

}  // namespace

LimitField factorize_covariance(std::vector<double> covariance, std::size_t g) {
  if (g == 0 || covariance.size() != g * g) {
    throw Error(ErrorCode::kDimensionMismatch, "covariance must be grid x grid");
  }
  double max_diag = 0.0;
  for (std::size_t i = 0; i < g; ++i) max_diag = std::max(max_diag, covariance[i * g + i]);
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double a = covariance[i * g + j];
      const double b = covariance[j * g + i];
      if (!std::isfinite(a) || std::fabs(a - b) > 1e-12 * std::max(max_diag, 1.0)) {
        throw Error(ErrorCode::kInvalidInput, "covariance must be finite and symmetric");
      }
    }
  }
  for (double relative : kJitterSchedule) {
    const double jitter = relative * max_diag;
    if (auto l = cholesky(covariance, g, jitter)) {
      LimitField out;
      out.grid_size = g;
      out.covariance = std::move(covariance);
      out.factor = std::move(*l);
      out.permutation.resize(g);
      std::iota(out.permutation.begin(), out.permutation.end(), std::size_t{0});
      out.jitter = jitter;
      out.relative_jitter = relative;
      return out;
    }
  }
  const double relative = kJitterSchedule.back();
  LimitField out = pivoted_cholesky(std::move(covariance), g, relative * max_diag, max_diag);
  out.relative_jitter = relative;
  return out;
}

LimitField limit_from_lambda(std::span<const double> lambda,
                             const std::vector<std::vector<double>>& basis) {
  const std::size_t kk = basis.size();
  if (kk == 0 || lambda.size() != kk * kk) {
    throw Error(ErrorCode::kDimensionMismatch, "long-run matrix must be K x K for K basis functions");
  }
  const std::size_t g = basis.front().size();
  std::vector<double> r(g * g, 0.0);
  for (std::size_t k = 0; k < kk; ++k) {
    for (std::size_t l = 0; l < kk; ++l) {
      const double coef = lambda[k * kk + l];
      if (coef == 0.0) continue;
      for (std::size_t i = 0; i < g; ++i) {
        simd::axpy(coef * basis[k][i], basis[l], std::span<double>(r.data() + i * g, g));
      }
    }
  }
  // Symmetrise exactly; asymmetric Lambda input is averaged.
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double mean = 0.5 * (r[i * g + j] + r[j * g + i]);
      r[i * g + j] = r[j * g + i] = mean;
    }
  }
  return factorize_covariance(std::move(r), g);
}

LimitField limit_covariance(const FieldSpec& spec, const GridSpace& grid) {
  if (grid.size() != spec.grid_size()) {
    throw Error(ErrorCode::kDimensionMismatch, "field basis does not match the grid");
  }
  const std::vector<double> lambda = long_run_covariance(spec);
  return limit_from_lambda(lambda, spec.basis());
}

std::vector<double> sample_limit_field(const LimitField& field, std::uint64_t seed,
                                       std::uint64_t replication) {
  const std::size_t g = field.grid_size;
  RandomStream rng(seed, {StreamDomain::kLimitField, replication, 0});
  std::vector<double> z(g);
  for (double& value : z) value = rng.normal();
  std::vector<double> out(g);
  for (std::size_t i = 0; i < g; ++i) {
    const std::span<const double> row(field.factor.data() + i * g, i + 1);
    out[field.permutation[i]] = simd::dot(row, std::span<const double>(z.data(), i + 1));
  }
  return out;
}

std::vector<double> sample_limit_norms(const LimitField& field, double p, const GridSpace& grid,
                                       std::size_t reps, std::uint64_t seed, Parallelism par) {
  if (reps < kMinReps) {
    throw Error(ErrorCode::kInsufficientReps, "limit sampling needs at least 100 replications");
  }
  if (grid.size() != field.grid_size) {
    throw Error(ErrorCode::kDimensionMismatch, "limit field does not match the grid");
  }
  std::vector<double> norms(reps);
  parallel_for(reps, par, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      norms[r] = lp_norm(sample_limit_field(field, seed, r), p, grid);
    }
  });
  return norms;
}

}  // namespace lpclt
