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

// Finite representation of the parameter space (T, mu) and L^p(T, mu)
// norms by quadrature.

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace lpclt {

struct UniformGrid {
  std::size_t points = 0;
};

struct CustomGrid {
  std::vector<double> points;
  std::vector<double> weights;
};

using GridKind = std::variant<UniformGrid, CustomGrid>;

// Quadrature nodes t_j with strictly positive masses w_j.
class GridSpace {
 public:
  // Midpoint rule on [0, 1]: t_j = (j + 1/2) / N, w_j = 1 / N.
  static GridSpace uniform(std::size_t n);
  static GridSpace custom(std::vector<double> points, std::vector<double> weights);

  std::size_t size() const { return points_.size(); }
  std::span<const double> points() const { return points_; }
  std::span<const double> weights() const { return weights_; }
  double total_mass() const { return total_mass_; }
  bool is_unit_mass(double tol = 1e-12) const;

 private:
  GridSpace(std::vector<double> points, std::vector<double> weights);

  std::vector<double> points_;
  std::vector<double> weights_;
  double total_mass_ = 0.0;
};

GridSpace make_grid(const GridKind& kind);

// (sum_j w_j |f(t_j)|^p)^{1/p}; p >= 1, values finite.
double lp_norm(std::span<const double> values, double p, const GridSpace& grid);

// sum_j w_j |f(t_j)|^p, i.e. lp_norm^p without the final root.
double lp_norm_pow(std::span<const double> values, double p, const GridSpace& grid);

}  // namespace lpclt
