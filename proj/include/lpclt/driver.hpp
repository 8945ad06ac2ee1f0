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

// Scalar driver processes X_{i,k}. A field carries K independent copies of
// one driver law, one per basis function.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace lpclt {

struct IidNormal {
  double sigma = 1.0;
};

struct IidRademacher {};

// X_i = sum_j w_j eps_{i-j}, weights rescaled so that Var X_i = sigma^2.
struct MovingAverage {
  std::vector<double> weights;
  double sigma = 1.0;
};

// X_i = rho X_{i-1} + sigma_innov eps_i, started from the stationary law.
struct Ar1 {
  double rho = 0.0;
  double sigma_innov = 1.0;
};

using DriverKind = std::variant<IidNormal, IidRademacher, MovingAverage, Ar1>;

class DriverModel {
 public:
  static DriverModel iid_normal(double sigma, std::size_t components = 1);
  static DriverModel iid_rademacher(std::size_t components = 1);
  static DriverModel moving_average(std::vector<double> weights, double sigma = 1.0,
                                    std::size_t components = 1);
  static DriverModel ar1(double rho, double sigma_innov, std::size_t components = 1);
  // AR(1) with sigma_innov = sqrt(1 - rho^2), i.e. unit marginal variance.
  static DriverModel ar1_unit_variance(double rho, std::size_t components = 1);

  const DriverKind& kind() const { return kind_; }
  std::size_t components() const { return components_; }
  DriverModel with_components(std::size_t k) const;

  bool is_gaussian() const;
  std::string describe() const;

  // Moving-average weights after rescaling (empty for other drivers).
  const std::vector<double>& ma_weights() const { return ma_weights_; }

  double marginal_variance() const;
  // Cov(X_0, X_h) of one component.
  double autocovariance(std::size_t lag) const;
  // sum over all integer lags of the autocovariance.
  double long_run_variance() const;
  // Var(sum_{i<=n} X_i) / n.
  double finite_n_variance(std::size_t n) const;

 private:
  DriverModel(DriverKind kind, std::size_t components);

  DriverKind kind_;
  std::size_t components_ = 1;
  std::vector<double> ma_weights_;
};

}  // namespace lpclt
