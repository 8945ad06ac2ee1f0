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

// Centered random fields xi_i(t) = sum_k X_{i,k} phi_k(t) built from a
// finite basis on the grid and K independent copies of a driver process.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lpclt/discretize.hpp"
#include "lpclt/driver.hpp"

namespace lpclt {

enum class BasisFamily {
  kConst,      // phi = 1
  kFourier,    // 1, sqrt2 cos(2 pi t), sqrt2 sin(2 pi t), sqrt2 cos(4 pi t), ...
  kIndicator,  // 1{t in [k/K, (k+1)/K)}
  kSine,       // sqrt2 sin(k pi t), k = 1..K
};

struct BasisSpec {
  BasisFamily family = BasisFamily::kConst;
  std::size_t count = 1;
};

// Parses "const", "fourier(K)", "indicator(K)", "sine(K)".
BasisSpec parse_basis(std::string_view name);
std::string basis_name(const BasisSpec& spec);

// One vector per basis function, evaluated at the grid points.
std::vector<std::vector<double>> make_basis(const BasisSpec& spec, const GridSpace& grid);

class FieldSpec {
 public:
  // basis[k] is phi_k on the grid; the driver must have basis.size()
  // components. scale_decay c != 0 multiplies xi_i by (1 + c/i), an
  // experimental non-stationary variant whose scaling tends to 1.
  FieldSpec(std::vector<std::vector<double>> basis, DriverModel driver, std::string label = {},
            double scale_decay = 0.0);

  static FieldSpec named(const BasisSpec& basis, const DriverModel& driver, const GridSpace& grid,
                         double scale_decay = 0.0);

  const std::vector<std::vector<double>>& basis() const { return basis_; }
  const DriverModel& driver() const { return driver_; }
  const std::string& label() const { return label_; }
  std::size_t components() const { return basis_.size(); }
  std::size_t grid_size() const { return grid_size_; }
  double scale_decay() const { return scale_decay_; }
  bool is_stationary() const { return scale_decay_ == 0.0; }

  // Deterministic multiplier of xi_i, i >= 1.
  double scale_at(std::size_t i) const;
  // sup_i |scale_at(i)|
  double sup_scale() const;

 private:
  std::vector<std::vector<double>> basis_;
  DriverModel driver_;
  std::string label_;
  double scale_decay_ = 0.0;
  std::size_t grid_size_ = 0;
};

// Rows i = 1..n of xi_i on the grid, row-major n x grid.size(). Component
// k of replication `replication` reads stream (seed, driver, replication, k).
std::vector<double> sample_sequence(const FieldSpec& spec, std::size_t n, const GridSpace& grid,
                                    std::uint64_t seed, std::uint64_t replication = 0);

// Driver path of one component, same stream contract as sample_sequence.
std::vector<double> sample_driver_path(const DriverModel& driver, std::size_t n,
                                       std::uint64_t seed, std::uint64_t replication,
                                       std::size_t component);

// sum_i scale_at(i) X_{i,k} for every component k; draws exactly what
// sample_sequence would, without materialising the field.
std::vector<double> driver_sums(const FieldSpec& spec, std::size_t n, std::uint64_t seed,
                                std::uint64_t replication);

struct AnalyticNorm {};
struct MonteCarloNorm {
  std::size_t reps = 10000;
  std::uint64_t seed = 0;
};
using NormMode = std::variant<AnalyticNorm, MonteCarloNorm>;

struct NormIntegral {
  double value = 0.0;
  double std_error = 0.0;  // zero in analytic mode
};

// sup_i int_T E|xi_i(t)|^v mu(dt). Analytic mode: Gaussian drivers via
// E|N(0, sigma^2)|^v = sigma^v 2^{v/2} Gamma((v+1)/2) / sqrt(pi), Rademacher
// drivers by enumerating sign patterns (K <= 16).
NormIntegral sup_v_norm(const FieldSpec& spec, const GridSpace& grid, double v,
                        const NormMode& mode = AnalyticNorm{});

// Lambda_{kl} = sum_{j in Z} Cov(X_{0,k}, X_{j,l}), row-major K x K.
std::vector<double> long_run_covariance(const FieldSpec& spec);

// Cov of n^{-1/2} sum_{i<=n} X_{i,.}, row-major K x K. Stationary specs only.
std::vector<double> finite_n_covariance(const FieldSpec& spec, std::size_t n);

// E|N(0, sigma^2)|^v
double gaussian_abs_moment(double sigma, double v);

}  // namespace lpclt
