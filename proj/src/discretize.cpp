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


#include "lpclt/discretize.hpp"

#include <cmath>
#include <string>

#include "lpclt/error.hpp"
#include "lpclt/simd/kernels.hpp"

namespace lpclt {

GridSpace::GridSpace(std::vector<double> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty()) throw Error(ErrorCode::kEmptyGrid, "grid has no points");
  if (points_.size() != weights_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "grid points and weights differ in length");
  }
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (!(weights_[j] > 0.0) || !std::isfinite(weights_[j])) {
      throw Error(ErrorCode::kInvalidInput,
                  "quadrature weight " + std::to_string(j) + " is not a positive finite number");
    }
    if (!std::isfinite(points_[j])) {
      throw Error(ErrorCode::kInvalidInput, "grid point " + std::to_string(j) + " is not finite");
    }
  }
  total_mass_ = simd::compensated_sum(weights_);
}

GridSpace GridSpace::uniform(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::kInvalidInput, "uniform grid needs at least 2 points");
  std::vector<double> points(n);
  std::vector<double> weights(n, 1.0 / static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    points[j] = (static_cast<double>(j) + 0.5) / static_cast<double>(n);
  }
  return GridSpace(std::move(points), std::move(weights));
}

GridSpace GridSpace::custom(std::vector<double> points, std::vector<double> weights) {
  return GridSpace(std::move(points), std::move(weights));
}

bool GridSpace::is_unit_mass(double tol) const { return std::fabs(total_mass_ - 1.0) <= tol; }

GridSpace make_grid(const GridKind& kind) {
  return std::visit(
      [](const auto& k) -> GridSpace {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, UniformGrid>) {
          return GridSpace::uniform(k.points);
        } else {
          return GridSpace::custom(k.points, k.weights);
        }
      },
      kind);
}

double lp_norm_pow(std::span<const double> values, double p, const GridSpace& grid) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::kInvalidInput, "norm exponent must be a finite p >= 1");
  }
  if (values.size() != grid.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "function values do not match the grid");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidInput, "non-finite function value");
  }
  return simd::weighted_abs_pow_sum(values, grid.weights(), p);
}

double lp_norm(std::span<const double> values, double p, const GridSpace& grid) {
  const double integral = lp_norm_pow(values, p, grid);
  if (p == 1.0) return integral;
  if (p == 2.0) return std::sqrt(integral);
  return std::pow(integral, 1.0 / p);
}

}  // namespace lpclt
