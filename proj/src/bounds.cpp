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


#include "lpclt/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lpclt/error.hpp"

namespace lpclt::bounds {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Geometric sums continue until the tail is below this fraction of the
// partial sum, i.e. until further terms no longer change the double result.
constexpr double kGeometricFloor = 0x1.0p-60;
constexpr std::int64_t kMaxExplicitTerms = 200'000'000;

void check_even_order(int s) {
  if (s < 2 || s % 2 != 0 || s > kMaxUtevOrder) {
    throw Error(ErrorCode::kInvalidOrder,
                "order must be even in [2, " + std::to_string(kMaxUtevOrder) +
                    "], got " + std::to_string(s));
  }
}

void check_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorCode::kInvalidTolerance, "tolerance must be a positive finite number");
  }
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

struct Compensated {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    comp += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// Series sum_{r>=1} value(r)^e (r+1)^m over a validated profile.
class WeightedSeries {
 public:
  WeightedSeries(const MixingProfile& profile, double e, double m)
      : profile_(profile), e_(e), m_(m) {}

  double term(std::int64_t r) const {
    const double value = profile_.value_at(r);
    if (value == 0.0) return 0.0;
    const double weighted = e_ == 1.0 ? value : std::pow(value, e_);
    return m_ == 0.0 ? weighted : weighted * std::pow(static_cast<double>(r + 1), m_);
  }

  SeriesSum partial(std::int64_t last) const {
    Compensated acc;
    for (std::int64_t r = 1; r <= last; ++r) acc.add(term(r));
    return {acc.value(), 0.0, last, true};
  }

  SeriesSum evaluate(bool converges, double tol) const {
    if (!converges) return {kInf, kInf, 0, false};
    const std::int64_t end = profile_.support_end();
    if (end >= 0) return partial(end);
    if (const auto* geo = std::get_if<GeometricDecay>(&profile_.decay())) {
      return geometric(*geo, tol);
    }
    if (const auto* poly = std::get_if<PolynomialDecay>(&profile_.decay())) {
      return polynomial(*poly, tol);
    }
    throw Error(ErrorCode::kUnsupported, "decay class without a truncation rule");
  }

 private:
  double cap() const {
    return profile_.kind() == MixingKind::kAlpha ? kAlphaCap : kInf;
  }

  // Unclipped term c^e rho^{e r} (r+1)^m.
  double raw_geometric(const GeometricDecay& g, std::int64_t r) const {
    return std::pow(g.c * std::pow(g.rho, static_cast<double>(r)), e_) *
           std::pow(static_cast<double>(r + 1), m_);
  }

  SeriesSum geometric(const GeometricDecay& g, double tol) const {
    const double rho_e = std::pow(g.rho, e_);
    Compensated acc;
    for (std::int64_t r = 1; r <= kMaxExplicitTerms; ++r) {
      acc.add(term(r));
      // Tail bound only valid once terms are no longer clipped.
      if (g.c * std::pow(g.rho, static_cast<double>(r + 1)) > cap()) continue;
      // For j >= r+1 the term ratio is at most rho^e ((r+3)/(r+2))^max(m,0).
      const double growth =
          m_ > 0.0 ? std::pow((static_cast<double>(r) + 3.0) / (static_cast<double>(r) + 2.0), m_)
                   : 1.0;
      const double ratio = rho_e * growth;
      if (ratio >= 1.0) continue;
      const double remainder = raw_geometric(g, r + 1) / (1.0 - ratio);
      const double partial = acc.value();
      if (remainder <= kGeometricFloor * partial || remainder == 0.0) {
        return {partial, remainder, r, true};
      }
      if (r == kMaxExplicitTerms) return {partial, remainder, r, remainder <= tol * partial};
    }
    return {acc.value(), kInf, kMaxExplicitTerms, false};
  }

  // Terms C (r+1)^{-a} once unclipped; tail from r = N by Euler-Maclaurin.
  SeriesSum polynomial(const PolynomialDecay& p, double tol) const {
    const double a = p.theta * e_ - m_;
    const double scale = std::pow(p.c, e_);
    // Lags where c (r+1)^{-theta} exceeds the cap are summed explicitly.
    std::int64_t clip_end = 0;
    if (p.c > cap()) {
      clip_end = static_cast<std::int64_t>(std::ceil(std::pow(p.c / cap(), 1.0 / p.theta)));
    }
    std::int64_t n = std::max<std::int64_t>(64, clip_end + 2);
    while (true) {
      const SeriesSum head = partial(n - 1);
      const double j = static_cast<double>(n + 1);  // tail starts at r = n, i.e. j = r + 1
      const double jp = std::pow(j, -a);
      const double tail = j * jp / (a - 1.0) + 0.5 * jp + a * jp / (12.0 * j) -
                          a * (a + 1.0) * (a + 2.0) * jp / (720.0 * j * j * j);
      const double remainder =
          std::fabs(a * (a + 1.0) * (a + 2.0) * (a + 3.0) * (a + 4.0)) * jp /
          (30240.0 * std::pow(j, 5.0));
      const double total = head.sum + scale * tail;
      if (scale * remainder <= tol * total || n >= kMaxExplicitTerms / 2) {
        return {total, scale * remainder, n, scale * remainder <= tol * total};
      }
      n *= 2;
    }
  }

  const MixingProfile& profile_;
  double e_;
  double m_;
};

void check_alpha(const MixingProfile& profile) {
  if (profile.kind() != MixingKind::kAlpha) {
    throw Error(ErrorCode::kInvalidInput, "expected an alpha (strong mixing) profile");
  }
}

}  // namespace

UtevConstant utev_a(int s) {
  check_even_order(s);
  // 12 (1 + 2s/3) = 4 (3 + 2s), so every factor is an integer.
  BigInt ratio = factorial(s) / factorial(s / 2);
  BigInt value = BigInt(4 * (3 + 2 * s)) * (s - 1) * boost::multiprecision::pow(BigInt(3), s) *
                 ratio * ratio;
  const long double as_ld = value.convert_to<long double>();
  const double root = static_cast<double>(std::exp(std::log(as_ld) / static_cast<long double>(s)));
  return {s, std::move(value), root};
}

double ku_constant() {
  const long double e = std::numbers::e_v<long double>;
  return static_cast<double>(std::pow(2.0L, -5.0L / 12.0L) * 3.0L * std::sqrt(7.0L) *
                             std::exp(2.0L / e - 23.0L / 24.0L));
}

KuCheck ku_check(int s) {
  const UtevConstant a = utev_a(s);
  const double rhs = ku_constant() * s;
  return {s, a.root, rhs, a.root <= rhs};
}

std::optional<int> ku_crossover_order(int max_s) {
  check_even_order(max_s);
  std::optional<int> crossover;
  for (int s = max_s; s >= 2; s -= 2) {
    if (!ku_check(s).holds) break;
    crossover = s;
  }
  return crossover;
}

bool ZValue::finite() const { return std::isfinite(value); }
bool BoundReport::finite() const { return std::isfinite(bound); }

SeriesSum alpha_series(const MixingProfile& profile, int s, double v, double tol) {
  check_even_order(s);
  check_tolerance(tol);
  check_alpha(profile);
  const double e = 1.0 - s / v;
  const WeightedSeries series(profile, e, s / 2.0 - 1.0);
  SeriesSum result = series.evaluate(series_converges(profile, s, v), tol);
  if (result.converges) {
    // r = 0 term with alpha(0) = 1/4, (0+1)^{s/2-1} = 1.
    result.sum += std::pow(kAlphaCap, e);
    result.terms += 1;
  }
  return result;
}

ZValue z_value(const MixingProfile& profile, int s, double v, double tol) {
  const SeriesSum series = alpha_series(profile, s, v, tol);
  if (!series.converges) return {s, v, kInf, 0, kInf};
  const double a_s = utev_a(s).value.convert_to<double>();
  return {s, v, std::pow(a_s * series.sum, 1.0 / s), series.terms, series.remainder};
}

double z_value_truncated(const MixingProfile& profile, int s, double v, std::int64_t terms) {
  check_even_order(s);
  check_alpha(profile);
  if (!(v > s)) throw Error(ErrorCode::kInvalidOrder, "Z requires v > s");
  if (terms < 1) throw Error(ErrorCode::kInvalidInput, "need at least the r = 0 term");
  const double e = 1.0 - s / v;
  const WeightedSeries series(profile, e, s / 2.0 - 1.0);
  const double sum = std::pow(kAlphaCap, e) + series.partial(terms - 1).sum;
  const double a_s = utev_a(s).value.convert_to<double>();
  return std::pow(a_s * sum, 1.0 / s);
}

BoundReport bound_report(const MixingProfile& profile, int s, double v, double y, double tol) {
  if (!(y >= 0.0)) throw Error(ErrorCode::kInvalidInput, "y must be >= 0");
  const ZValue z = z_value(profile, s, v, tol);
  const double bound = z.finite() ? normed_sum_bound(y, z.value) : kInf;
  return {s, v, z.value, y, bound, z.truncation_terms, z.truncation_remainder};
}

double sum_bound(std::span<const double> per_term_v_norms, double z) {
  if (!(z >= 0.0)) throw Error(ErrorCode::kInvalidInput, "z must be >= 0");
  Compensated acc;
  for (double norm : per_term_v_norms) {
    if (!(norm >= 0.0)) throw Error(ErrorCode::kInvalidInput, "v-norms must be >= 0");
    acc.add(norm * norm);
  }
  return z * std::sqrt(acc.value());
}

double normed_sum_bound(double y, double z) {
  if (!(y >= 0.0) || !(z >= 0.0)) throw Error(ErrorCode::kInvalidInput, "y and z must be >= 0");
  return z * y;
}

VOptimum optimize_over_v(const MixingProfile& profile, int s, std::span<const double> v_grid,
                         const std::function<double(double)>& x_vnorm, double tol) {
  if (v_grid.empty()) throw Error(ErrorCode::kEmptyGrid, "v grid is empty");
  VOptimum best{std::nullopt, kInf};
  for (double v : v_grid) {
    if (!(v > s)) throw Error(ErrorCode::kInvalidOrder, "every v in the grid must exceed s");
    const ZValue z = z_value(profile, s, v, tol);
    if (!z.finite()) continue;
    const double candidate = z.value * x_vnorm(v);
    if (!best.v_star || candidate < best.bound) best = {v, candidate};
  }
  return best;
}

std::vector<double> default_v_grid(int s) {
  std::vector<double> grid;
  for (double v = s + 0.5; v <= 2.0 * s + 1e-12; v += 0.5) grid.push_back(v);
  grid.push_back(3.0 * s);
  return grid;
}

double lp_moment_bound(const MixingProfile& profile, int s, double v, double sup_v_norm_integral,
                       double tol) {
  if (!(sup_v_norm_integral >= 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "v-norm integral must be >= 0");
  }
  const ZValue z = z_value(profile, s, v, tol);
  if (!z.finite()) return kInf;
  if (sup_v_norm_integral == 0.0) return 0.0;
  return std::pow(z.value, s) * std::pow(sup_v_norm_integral, s / v);
}

SeriesSum beta_series(const MixingProfile& beta_profile, double s, double tol) {
  if (beta_profile.kind() != MixingKind::kBeta) {
    throw Error(ErrorCode::kInvalidInput, "expected a beta (superstrong mixing) profile");
  }
  if (!(s >= 2.0) || !std::isfinite(s)) throw Error(ErrorCode::kInvalidOrder, "K_N requires s >= 2");
  check_tolerance(tol);
  const WeightedSeries series(beta_profile, 1.0, (s - 2.0) / 2.0);
  return series.evaluate(series_converges_beta(beta_profile, s), tol);
}

double nachapetyan_k(const MixingProfile& beta_profile, double s, double tol) {
  const SeriesSum series = beta_series(beta_profile, s, tol);
  if (!series.converges) return kInf;
  return 2.0 * s * std::pow(series.sum, 1.0 / s);
}

double nachapetyan_bound(double k_n, double sup_s_norm) {
  if (!(k_n >= 0.0) || !(sup_s_norm >= 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "K_N and the s-norm must be >= 0");
  }
  if (std::isinf(k_n)) return kInf;
  return k_n * sup_s_norm;
}

TailReport chebyshev_tail(double w, double s, std::span<const double> y_grid) {
  if (!(w >= 0.0)) throw Error(ErrorCode::kInvalidInput, "W must be >= 0");
  if (!(s >= 2.0)) throw Error(ErrorCode::kInvalidOrder, "tail bound requires s >= 2");
  TailReport report{s, w, {}, {}};
  report.y_grid.assign(y_grid.begin(), y_grid.end());
  report.q_bound.reserve(y_grid.size());
  for (double y : y_grid) {
    if (!(y >= 1.0)) throw Error(ErrorCode::kInvalidInput, "tail thresholds must be >= 1");
    report.q_bound.push_back(std::min(1.0, w / std::pow(y, s)));
  }
  return report;
}

EvenOrderLift effective_even_order(double s, bool unit_mass) {
  if (!(s >= 2.0) || !std::isfinite(s)) {
    throw Error(ErrorCode::kInvalidOrder, "order lifting requires finite s >= 2");
  }
  const double half = std::ceil(s / 2.0);
  EvenOrderLift lift{static_cast<int>(2.0 * half), {}};
  if (!unit_mass) {
    lift.warning =
        "measure of T is not 1: the Lyapunov step ||f||_s <= ||f||_s~ does not apply as stated";
  }
  return lift;
}

}  // namespace lpclt::bounds
