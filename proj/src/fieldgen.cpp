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


#include "lpclt/fieldgen.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "lpclt/error.hpp"
#include "lpclt/rng.hpp"

namespace lpclt {
namespace {

constexpr std::size_t kMaxRademacherEnumeration = 16;

// Feeds X_1..X_n of one driver component to sink(i, x), i starting at 1.
template <class Sink>
void generate_driver(const DriverModel& driver, RandomStream& rng, std::size_t n, Sink&& sink) {
  const DriverKind& kind = driver.kind();
  if (const auto* d = std::get_if<IidNormal>(&kind)) {
    for (std::size_t i = 1; i <= n; ++i) sink(i, d->sigma * rng.normal());
  } else if (std::holds_alternative<IidRademacher>(kind)) {
    for (std::size_t i = 1; i <= n; ++i) sink(i, rng.rademacher());
  } else if (std::holds_alternative<MovingAverage>(kind)) {
    const std::vector<double>& w = driver.ma_weights();
    const std::size_t width = w.size();
    // Circular window: window[(head + j) % width] holds eps_{i-j}.
    // Pre-sample eps_{1-q}, ..., eps_0 in that order.
    std::vector<double> window(width);
    for (std::size_t j = width - 1; j >= 1; --j) window[j - 1] = rng.normal();
    std::size_t head = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      head = (head + width - 1) % width;
      window[head] = rng.normal();
      double x = 0.0;
      for (std::size_t j = 0; j < width; ++j) x += w[j] * window[(head + j) % width];
      sink(i, x);
    }
  } else if (const auto* d = std::get_if<Ar1>(&kind)) {
    double x = d->sigma_innov / std::sqrt(1.0 - d->rho * d->rho) * rng.normal();
    if (n >= 1) sink(1, x);
    for (std::size_t i = 2; i <= n; ++i) {
      x = d->rho * x + d->sigma_innov * rng.normal();
      sink(i, x);
    }
  }
}

std::size_t parse_count(std::string_view text, std::string_view whole) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    throw Error(ErrorCode::kInvalidInput, "bad basis size in '" + std::string(whole) + "'");
  }
  return value;
}

void check_v(double v) {
  if (!(v >= 2.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidInput, "v-norm exponent must be finite and >= 2");
  }
}

}  // namespace

BasisSpec parse_basis(std::string_view name) {
  if (name == "const") return {BasisFamily::kConst, 1};
  const auto open = name.find('(');
  if (open == std::string_view::npos || name.back() != ')') {
    throw Error(ErrorCode::kInvalidInput, "unknown basis '" + std::string(name) + "'");
  }
  const std::string_view family = name.substr(0, open);
  const std::size_t count = parse_count(name.substr(open + 1, name.size() - open - 2), name);
  if (family == "fourier") return {BasisFamily::kFourier, count};
  if (family == "indicator") return {BasisFamily::kIndicator, count};
  if (family == "sine") return {BasisFamily::kSine, count};
  throw Error(ErrorCode::kInvalidInput, "unknown basis '" + std::string(name) + "'");
}

std::string basis_name(const BasisSpec& spec) {
  const std::string k = std::to_string(spec.count);
  switch (spec.family) {
    case BasisFamily::kConst: return "const";
    case BasisFamily::kFourier: return "fourier(" + k + ")";
    case BasisFamily::kIndicator: return "indicator(" + k + ")";
    case BasisFamily::kSine: return "sine(" + k + ")";
  }
  return "unknown";
}

std::vector<std::vector<double>> make_basis(const BasisSpec& spec, const GridSpace& grid) {
  const std::size_t count = spec.family == BasisFamily::kConst ? 1 : spec.count;
  if (count == 0) throw Error(ErrorCode::kInvalidInput, "basis needs at least one function");
  const auto t = grid.points();
  std::vector<std::vector<double>> basis(count, std::vector<double>(grid.size()));
  constexpr double kPi = std::numbers::pi;
  const double root2 = std::numbers::sqrt2;
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      double value = 0.0;
      switch (spec.family) {
        case BasisFamily::kConst:
          value = 1.0;
          break;
        case BasisFamily::kFourier: {
          if (k == 0) {
            value = 1.0;
          } else {
            const double freq = static_cast<double>((k + 1) / 2);
            value = k % 2 == 1 ? root2 * std::cos(2.0 * kPi * freq * t[j])
                               : root2 * std::sin(2.0 * kPi * freq * t[j]);
          }
          break;
        }
        case BasisFamily::kIndicator: {
          const double lo = static_cast<double>(k) / static_cast<double>(count);
          const double hi = static_cast<double>(k + 1) / static_cast<double>(count);
          value = (t[j] >= lo && (t[j] < hi || (k + 1 == count && t[j] <= hi))) ? 1.0 : 0.0;
          break;
        }
        case BasisFamily::kSine:
          value = root2 * std::sin(kPi * static_cast<double>(k + 1) * t[j]);
          break;
      }
      basis[k][j] = value;
    }
  }
  return basis;
}

FieldSpec::FieldSpec(std::vector<std::vector<double>> basis, DriverModel driver, std::string label,
                     double scale_decay)
    : basis_(std::move(basis)),
      driver_(std::move(driver)),
      label_(std::move(label)),
      scale_decay_(scale_decay) {
  if (basis_.empty()) throw Error(ErrorCode::kInvalidInput, "field needs at least one basis function");
  if (driver_.components() != basis_.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "basis has " + std::to_string(basis_.size()) + " functions but the driver has " +
                    std::to_string(driver_.components()) + " components");
  }
  grid_size_ = basis_.front().size();
  for (const auto& phi : basis_) {
    if (phi.size() != grid_size_) {
      throw Error(ErrorCode::kDimensionMismatch, "basis vectors differ in length");
    }
    for (double value : phi) {
      if (!std::isfinite(value)) throw Error(ErrorCode::kInvalidInput, "basis value is not finite");
    }
  }
  if (!(scale_decay_ > -1.0) || !std::isfinite(scale_decay_)) {
    throw Error(ErrorCode::kInvalidInput, "scale_decay must be > -1");
  }
  if (label_.empty()) label_ = driver_.describe();
}

FieldSpec FieldSpec::named(const BasisSpec& basis, const DriverModel& driver, const GridSpace& grid,
                           double scale_decay) {
  auto vectors = make_basis(basis, grid);
  const std::size_t k = vectors.size();
  return FieldSpec(std::move(vectors), driver.with_components(k),
                   basis_name(basis) + " / " + driver.with_components(k).describe(), scale_decay);
}

double FieldSpec::scale_at(std::size_t i) const {
  return scale_decay_ == 0.0 ? 1.0 : 1.0 + scale_decay_ / static_cast<double>(i);
}

double FieldSpec::sup_scale() const { return std::max(1.0, 1.0 + scale_decay_); }

std::vector<double> sample_driver_path(const DriverModel& driver, std::size_t n, std::uint64_t seed,
                                       std::uint64_t replication, std::size_t component) {
  if (n < 1) throw Error(ErrorCode::kInvalidInput, "sequence length must be >= 1");
  RandomStream rng(seed, {StreamDomain::kDriver, replication, component});
  std::vector<double> path(n);
  generate_driver(driver, rng, n, [&](std::size_t i, double x) { path[i - 1] = x; });
  return path;
}

std::vector<double> sample_sequence(const FieldSpec& spec, std::size_t n, const GridSpace& grid,
                                    std::uint64_t seed, std::uint64_t replication) {
  if (n < 1) throw Error(ErrorCode::kInvalidInput, "sequence length must be >= 1");
  if (grid.size() != spec.grid_size()) {
    throw Error(ErrorCode::kDimensionMismatch, "field basis does not match the grid");
  }
  const std::size_t g = grid.size();
  std::vector<double> rows(n * g, 0.0);
  for (std::size_t k = 0; k < spec.components(); ++k) {
    const std::vector<double> path = sample_driver_path(spec.driver(), n, seed, replication, k);
    const std::vector<double>& phi = spec.basis()[k];
    for (std::size_t i = 0; i < n; ++i) {
      const double x = spec.scale_at(i + 1) * path[i];
      double* row = rows.data() + i * g;
      for (std::size_t j = 0; j < g; ++j) row[j] += x * phi[j];
    }
  }
  return rows;
}

std::vector<double> driver_sums(const FieldSpec& spec, std::size_t n, std::uint64_t seed,
                                 std::uint64_t replication) {
  if (n < 1) throw Error(ErrorCode::kInvalidInput, "sequence length must be >= 1");
  std::vector<double> sums(spec.components(), 0.0);
  for (std::size_t k = 0; k < spec.components(); ++k) {
    RandomStream rng(seed, {StreamDomain::kDriver, replication, k});
    double acc = 0.0;
    if (spec.is_stationary()) {
      generate_driver(spec.driver(), rng, n, [&](std::size_t, double x) { acc += x; });
    } else {
      generate_driver(spec.driver(), rng, n,
                      [&](std::size_t i, double x) { acc += spec.scale_at(i) * x; });
    }
    sums[k] = acc;
  }
  return sums;
}

double gaussian_abs_moment(double sigma, double v) {
  if (sigma == 0.0) return 0.0;
  return std::pow(sigma, v) * std::exp(0.5 * v * std::numbers::ln2 + std::lgamma(0.5 * (v + 1.0))) /
         std::sqrt(std::numbers::pi);
}

NormIntegral sup_v_norm(const FieldSpec& spec, const GridSpace& grid, double v, const NormMode& mode) {
  check_v(v);
  if (grid.size() != spec.grid_size()) {
    throw Error(ErrorCode::kDimensionMismatch, "field basis does not match the grid");
  }
  const double scale_v = std::pow(spec.sup_scale(), v);
  const std::size_t g = grid.size();
  const auto& basis = spec.basis();
  const std::size_t kk = spec.components();

  if (const auto* mc = std::get_if<MonteCarloNorm>(&mode)) {
    if (mc->reps < 2) throw Error(ErrorCode::kInsufficientReps, "Monte Carlo norm needs >= 2 reps");
    std::vector<double> values(mc->reps);
    std::vector<double> field(g);
    for (std::size_t r = 0; r < mc->reps; ++r) {
      std::fill(field.begin(), field.end(), 0.0);
      for (std::size_t k = 0; k < kk; ++k) {
        RandomStream rng(mc->seed, {StreamDomain::kNormIntegral, r, k});
        double x = 0.0;
        generate_driver(spec.driver(), rng, 1, [&](std::size_t, double value) { x = value; });
        for (std::size_t j = 0; j < g; ++j) field[j] += x * basis[k][j];
      }
      values[r] = lp_norm_pow(field, v, grid);
    }
    double mean = 0.0;
    for (double value : values) mean += value;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double value : values) ss += (value - mean) * (value - mean);
    const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    return {scale_v * mean, scale_v * sd / std::sqrt(static_cast<double>(values.size()))};
  }

  std::vector<double> pointwise(g, 0.0);
  if (spec.driver().is_gaussian()) {
    const double var = spec.driver().marginal_variance();
    for (std::size_t j = 0; j < g; ++j) {
      double sum_sq = 0.0;
      for (std::size_t k = 0; k < kk; ++k) sum_sq += basis[k][j] * basis[k][j];
      pointwise[j] = gaussian_abs_moment(std::sqrt(var * sum_sq), v);
    }
  } else {
    if (kk > kMaxRademacherEnumeration) {
      throw Error(ErrorCode::kUnsupported,
                  "analytic v-norm for a non-Gaussian driver needs K <= 16 components");
    }
    const std::size_t patterns = std::size_t{1} << kk;
    for (std::size_t j = 0; j < g; ++j) {
      double acc = 0.0;
      for (std::size_t mask = 0; mask < patterns; ++mask) {
        double x = 0.0;
        for (std::size_t k = 0; k < kk; ++k) x += ((mask >> k) & 1u ? 1.0 : -1.0) * basis[k][j];
        acc += std::pow(std::fabs(x), v);
      }
      pointwise[j] = acc / static_cast<double>(patterns);
    }
  }
  double integral = 0.0;
  const auto w = grid.weights();
  for (std::size_t j = 0; j < g; ++j) integral += w[j] * pointwise[j];
  return {scale_v * integral, 0.0};
}

std::vector<double> long_run_covariance(const FieldSpec& spec) {
  const std::size_t kk = spec.components();
  std::vector<double> lambda(kk * kk, 0.0);
  const double lrv = spec.driver().long_run_variance();
  for (std::size_t k = 0; k < kk; ++k) lambda[k * kk + k] = lrv;
  return lambda;
}

std::vector<double> finite_n_covariance(const FieldSpec& spec, std::size_t n) {
  if (!spec.is_stationary()) {
    throw Error(ErrorCode::kUnsupported, "finite-n covariance is only available for stationary fields");
  }
  const std::size_t kk = spec.components();
  std::vector<double> lambda(kk * kk, 0.0);
  const double var = spec.driver().finite_n_variance(n);
  for (std::size_t k = 0; k < kk; ++k) lambda[k * kk + k] = var;
  return lambda;
}

}  // namespace lpclt
