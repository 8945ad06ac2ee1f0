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


#include "lpclt/driver.hpp"

#include <cmath>
#include <sstream>

#include "lpclt/error.hpp"

namespace lpclt {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidInput, what);
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

DriverModel::DriverModel(DriverKind kind, std::size_t components)
    : kind_(std::move(kind)), components_(components) {
  require(components_ >= 1, "driver needs at least one component");
  std::visit(Overloaded{
                 [](const IidNormal& d) {
                   require(d.sigma >= 0.0 && std::isfinite(d.sigma), "iid_normal sigma must be >= 0");
                 },
                 [](const IidRademacher&) {},
                 [this](const MovingAverage& d) {
                   require(!d.weights.empty(), "moving average needs at least one weight");
                   require(d.sigma >= 0.0 && std::isfinite(d.sigma), "moving average sigma must be >= 0");
                   double norm2 = 0.0;
                   for (double w : d.weights) {
                     require(std::isfinite(w), "moving average weights must be finite");
                     norm2 += w * w;
                   }
                   require(norm2 > 0.0, "moving average weights are all zero");
                   const double scale = d.sigma / std::sqrt(norm2);
                   ma_weights_.reserve(d.weights.size());
                   for (double w : d.weights) ma_weights_.push_back(w * scale);
                 },
                 [](const Ar1& d) {
                   require(std::fabs(d.rho) < 1.0, "AR(1) requires |rho| < 1");
                   require(d.sigma_innov >= 0.0 && std::isfinite(d.sigma_innov),
                           "AR(1) innovation sigma must be >= 0");
                 },
             },
             kind_);
}

DriverModel DriverModel::iid_normal(double sigma, std::size_t components) {
  return DriverModel(IidNormal{sigma}, components);
}

DriverModel DriverModel::iid_rademacher(std::size_t components) {
  return DriverModel(IidRademacher{}, components);
}

DriverModel DriverModel::moving_average(std::vector<double> weights, double sigma,
                                        std::size_t components) {
  return DriverModel(MovingAverage{std::move(weights), sigma}, components);
}

DriverModel DriverModel::ar1(double rho, double sigma_innov, std::size_t components) {
  return DriverModel(Ar1{rho, sigma_innov}, components);
}

DriverModel DriverModel::ar1_unit_variance(double rho, std::size_t components) {
  require(std::fabs(rho) < 1.0, "AR(1) requires |rho| < 1");
  return DriverModel(Ar1{rho, std::sqrt(1.0 - rho * rho)}, components);
}

DriverModel DriverModel::with_components(std::size_t k) const {
  DriverModel copy = *this;
  require(k >= 1, "driver needs at least one component");
  copy.components_ = k;
  return copy;
}

bool DriverModel::is_gaussian() const { return !std::holds_alternative<IidRademacher>(kind_); }

std::string DriverModel::describe() const {
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const IidNormal& d) { out << "iid_normal(sigma=" << d.sigma << ")"; },
                 [&](const IidRademacher&) { out << "iid_rademacher"; },
                 [&](const MovingAverage& d) {
                   out << "ma(q=" << d.weights.size() - 1 << ", sigma=" << d.sigma << ")";
                 },
                 [&](const Ar1& d) {
                   out << "ar1(rho=" << d.rho << ", sigma_innov=" << d.sigma_innov << ")";
                 },
             },
             kind_);
  out << " x" << components_;
  return out.str();
}

double DriverModel::marginal_variance() const { return autocovariance(0); }

double DriverModel::autocovariance(std::size_t lag) const {
  return std::visit(Overloaded{
                        [&](const IidNormal& d) { return lag == 0 ? d.sigma * d.sigma : 0.0; },
                        [&](const IidRademacher&) { return lag == 0 ? 1.0 : 0.0; },
                        [&](const MovingAverage&) {
                          double acc = 0.0;
                          for (std::size_t j = 0; j + lag < ma_weights_.size(); ++j) {
                            acc += ma_weights_[j] * ma_weights_[j + lag];
                          }
                          return acc;
                        },
                        [&](const Ar1& d) {
                          const double var = d.sigma_innov * d.sigma_innov / (1.0 - d.rho * d.rho);
                          return var * std::pow(d.rho, static_cast<double>(lag));
                        },
                    },
                    kind_);
}

double DriverModel::long_run_variance() const {
  return std::visit(Overloaded{
                        [&](const IidNormal& d) { return d.sigma * d.sigma; },
                        [&](const IidRademacher&) { return 1.0; },
                        [&](const MovingAverage&) {
                          double sum = 0.0;
                          for (double w : ma_weights_) sum += w;
                          return sum * sum;
                        },
                        [&](const Ar1& d) {
                          const double one_minus = 1.0 - d.rho;
                          return d.sigma_innov * d.sigma_innov / (one_minus * one_minus);
                        },
                    },
                    kind_);
}

double DriverModel::finite_n_variance(std::size_t n) const {
  require(n >= 1, "sequence length must be >= 1");
  const double nn = static_cast<double>(n);
  if (const auto* ar = std::get_if<Ar1>(&kind_)) {
    const double rho = ar->rho;
    const double var = marginal_variance();
    if (rho == 0.0) return var;
    const double one_minus = 1.0 - rho;
    return var * ((1.0 + rho) / one_minus -
                  2.0 * rho * (1.0 - std::pow(rho, nn)) / (nn * one_minus * one_minus));
  }
  // Finite-range autocovariances: Bartlett-weighted sum.
  double acc = autocovariance(0);
  const std::size_t max_lag = std::holds_alternative<MovingAverage>(kind_)
                                  ? ma_weights_.size() - 1
                                  : 0;
  for (std::size_t h = 1; h <= max_lag && h < n; ++h) {
    acc += 2.0 * (1.0 - static_cast<double>(h) / nn) * autocovariance(h);
  }
  return acc;
}

}  // namespace lpclt
