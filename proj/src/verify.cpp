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


#include "lpclt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lpclt/error.hpp"
#include "lpclt/limitlaw.hpp"
#include "lpclt/rng.hpp"
#include "lpclt/simd/kernels.hpp"

namespace lpclt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kLimitSalt = 0x4C494D4954ULL;

void check_schedule(std::span<const std::size_t> n_schedule) {
  if (n_schedule.empty()) throw Error(ErrorCode::kInvalidInput, "n schedule is empty");
  for (std::size_t n : n_schedule) {
    if (n < 1) throw Error(ErrorCode::kInvalidInput, "schedule entries must be >= 1");
  }
}

std::vector<MomentEstimate> estimate_schedule(const FieldSpec& spec, double s,
                                              std::span<const std::size_t> n_schedule,
                                              const GridSpace& grid, std::size_t reps,
                                              std::uint64_t seed, Parallelism par) {
  check_schedule(n_schedule);
  std::vector<MomentEstimate> per_n;
  per_n.reserve(n_schedule.size());
  for (std::size_t n : n_schedule) {
    per_n.push_back(estimate_moment(spec, n, s, s, grid, reps, derive_seed(seed, n), par));
  }
  return per_n;
}

}  // namespace

double kolmogorov_survival(double x) {
  if (!(x > 0.0)) return 1.0;
  if (x < 1.18) {
    // Jacobi theta form, accurate for small arguments.
    const double y = std::numbers::pi * std::numbers::pi / (8.0 * x * x);
    double sum = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double odd = 2.0 * k - 1.0;
      sum += std::exp(-odd * odd * y);
    }
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / x * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-300) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::kInvalidInput, "KS test needs two nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double m = static_cast<double>(x.size());
  const double n = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= t) ++i;
    while (j < y.size() && y[j] <= t) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / m - static_cast<double>(j) / n));
  }
  const double effective = m * n / (m + n);
  return {d, kolmogorov_survival(std::sqrt(effective) * d)};
}

CltReport verify_clt(const FieldSpec& spec, std::span<const std::size_t> n_schedule, double p,
                     const GridSpace& grid, std::size_t reps, double significance,
                     std::uint64_t seed, const CltOptions& options) {
  check_schedule(n_schedule);
  if (!(significance > 0.0 && significance <= 0.1)) {
    throw Error(ErrorCode::kInvalidInput, "significance must lie in (0, 0.1]");
  }
  if (options.limit_factor < 1) throw Error(ErrorCode::kInvalidInput, "limit factor must be >= 1");
  const LimitField limit = options.lambda_override
                               ? limit_from_lambda(*options.lambda_override, spec.basis())
                               : limit_covariance(spec, grid);
  const std::size_t limit_reps = reps * options.limit_factor;
  const std::vector<double> limit_norms =
      sample_limit_norms(limit, p, grid, limit_reps, derive_seed(seed, kLimitSalt), options.par);

  CltReport report;
  report.significance = significance;
  report.limit_relative_jitter = limit.relative_jitter;
  report.limit_pivoted = limit.pivoted;
  const double m = static_cast<double>(reps);
  const double l = static_cast<double>(limit_reps);
  report.noise_scale = std::sqrt((m + l) / (m * l));
  for (std::size_t n : n_schedule) {
    const std::vector<double> norms =
        sample_sn_norms(spec, n, p, grid, reps, derive_seed(seed, n), options.par);
    const KsResult ks = ks_two_sample(norms, limit_norms);
    report.verdicts.push_back({n, p, ks.stat, ks.p_value, reps, limit_reps, ks.p_value >= significance});
  }
  for (std::size_t k = 1; k < report.verdicts.size(); ++k) {
    report.max_increase = std::max(report.max_increase,
                                   report.verdicts[k].ks_stat - report.verdicts[k - 1].ks_stat);
  }
  report.trend_ok = report.max_increase <= 2.0 * report.noise_scale;
  report.pass_at_largest = report.verdicts.back().pass;
  report.converged = report.pass_at_largest && report.trend_ok;
  return report;
}

std::string_view bound_status_name(BoundStatus status) {
  switch (status) {
    case BoundStatus::kSatisfied: return "satisfied";
    case BoundStatus::kViolated: return "violated";
    case BoundStatus::kVacuous: return "vacuous";
  }
  return "unknown";
}

BoundStatus BoundVerdict::status() const {
  if (vacuous) return BoundStatus::kVacuous;
  return satisfied ? BoundStatus::kSatisfied : BoundStatus::kViolated;
}

BoundVerdict make_bound_verdict(std::vector<MomentEstimate> per_n, double theoretical) {
  if (per_n.empty()) throw Error(ErrorCode::kInvalidInput, "no estimates to compare");
  BoundVerdict verdict;
  verdict.empirical = *std::max_element(
      per_n.begin(), per_n.end(),
      [](const MomentEstimate& a, const MomentEstimate& b) { return a.value < b.value; });
  verdict.per_n = std::move(per_n);
  verdict.theoretical = theoretical;
  verdict.vacuous = std::isinf(theoretical);
  verdict.satisfied = verdict.vacuous || verdict.empirical.ci_high <= theoretical;
  verdict.slack = verdict.vacuous ? kInf : theoretical - verdict.empirical.ci_high;
  return verdict;
}

BoundVerdict verify_moment_bound(const FieldSpec& spec, int s, double v,
                                 std::span<const std::size_t> n_schedule, const GridSpace& grid,
                                 std::size_t reps, std::uint64_t seed, Parallelism par, double tol) {
  return verify_moment_bound(spec, profile_for_driver(spec.driver()), s, v, n_schedule, grid, reps,
                             seed, par, tol);
}

BoundVerdict verify_moment_bound(const FieldSpec& spec, const MixingProfile& profile, int s,
                                 double v, std::span<const std::size_t> n_schedule,
                                 const GridSpace& grid, std::size_t reps, std::uint64_t seed,
                                 Parallelism par, double tol) {
  const bounds::ZValue z = bounds::z_value(profile, s, v, tol);
  const double integral = sup_v_norm(spec, grid, v).value;
  const double theoretical = bounds::lp_moment_bound(profile, s, v, integral, tol);
  BoundVerdict verdict =
      make_bound_verdict(estimate_schedule(spec, s, n_schedule, grid, reps, seed, par), theoretical);
  verdict.constant = z.value;
  verdict.norm_integral = integral;
  return verdict;
}

BoundVerdict verify_superstrong(const FieldSpec& spec, const MixingProfile& beta_profile, double s,
                                std::span<const std::size_t> n_schedule, const GridSpace& grid,
                                std::size_t reps, std::uint64_t seed, Parallelism par, double tol) {
  const double k_n = bounds::nachapetyan_k(beta_profile, s, tol);
  const double integral = sup_v_norm(spec, grid, s).value;
  const double theoretical = std::isinf(k_n) ? kInf : std::pow(k_n, s) * integral;
  BoundVerdict verdict =
      make_bound_verdict(estimate_schedule(spec, s, n_schedule, grid, reps, seed, par), theoretical);
  verdict.constant = k_n;
  verdict.norm_integral = integral;
  return verdict;
}

bounds::TailReport tail_report(const FieldSpec& spec, const MixingProfile& profile, int s, double v,
                               const GridSpace& grid, std::span<const double> y_grid, double tol) {
  const double integral = sup_v_norm(spec, grid, v).value;
  return bounds::chebyshev_tail(bounds::lp_moment_bound(profile, s, v, integral, tol), s, y_grid);
}

ProjectionCheck projection_variance_check(const FieldSpec& spec, std::span<const double> x,
                                          std::size_t n, const GridSpace& grid, std::size_t reps,
                                          std::uint64_t seed, Parallelism par) {
  if (reps < kMinReps) throw Error(ErrorCode::kInsufficientReps, "projection check needs >= 100 reps");
  if (x.size() != grid.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "functional does not match the grid");
  }
  const std::size_t g = grid.size();
  std::vector<double> wx(g);
  for (std::size_t j = 0; j < g; ++j) wx[j] = grid.weights()[j] * x[j];

  const std::vector<double> fields = sample_sn_fields(spec, n, grid, reps, seed, par);
  std::vector<double> eta2(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const double eta = simd::dot(std::span<const double>(fields.data() + r * g, g), wx);
    eta2[r] = eta * eta;
  }
  const double count = static_cast<double>(reps);
  const double mean = simd::compensated_sum(eta2) / count;
  double ss = 0.0;
  for (double value : eta2) ss += (value - mean) * (value - mean);
  const double se = std::sqrt(ss / (count - 1.0) / count);

  // c_k = int phi_k x dmu, analytic = c^T Lambda c.
  const std::size_t kk = spec.components();
  std::vector<double> c(kk);
  for (std::size_t k = 0; k < kk; ++k) c[k] = simd::dot(spec.basis()[k], wx);
  auto quadratic = [&](const std::vector<double>& lambda) {
    double acc = 0.0;
    for (std::size_t k = 0; k < kk; ++k) {
      for (std::size_t l = 0; l < kk; ++l) acc += c[k] * lambda[k * kk + l] * c[l];
    }
    return acc;
  };

  ProjectionCheck check;
  check.empirical = mean;
  check.analytic = quadratic(finite_n_covariance(spec, n));
  check.analytic_limit = quadratic(long_run_covariance(spec));
  check.std_error = se;
  const double half_width = kZ99 * se;
  check.within_ci = std::fabs(check.empirical - check.analytic) <=
                    std::max(half_width, 1e-12 * std::max(1.0, std::fabs(check.analytic)));
  return check;
}

}  // namespace lpclt
