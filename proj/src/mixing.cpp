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


#include "lpclt/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "lpclt/error.hpp"

namespace lpclt {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidInput, what);
}

// Decides sum_{r>=1} value(r)^e (r+1)^m < infinity for e > 0.
bool weighted_series_converges(const Decay& decay, double e, double m) {
  if (const auto* poly = std::get_if<PolynomialDecay>(&decay)) {
    if (poly->c == 0.0) return true;
    // Terms ~ (r+1)^{m - theta*e}; p-series test.
    return m - poly->theta * e < -1.0;
  }
  if (const auto* geo = std::get_if<GeometricDecay>(&decay)) {
    return geo->rho < 1.0 || geo->c == 0.0;
  }
  return true;  // explicit lists and m-dependent profiles have finite support
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string default_description(MixingKind kind, const Decay& decay) {
  std::string body;
  if (const auto* ex = std::get_if<ExplicitDecay>(&decay)) {
    body = "explicit(" + std::to_string(ex->values.size()) + " lags)";
  } else if (const auto* geo = std::get_if<GeometricDecay>(&decay)) {
    body = "geometric(c=" + num(geo->c) + ", rho=" + num(geo->rho) + ")";
  } else if (const auto* poly = std::get_if<PolynomialDecay>(&decay)) {
    body = "polynomial(c=" + num(poly->c) + ", theta=" + num(poly->theta) + ")";
  } else {
    body = "m_dependent(m=" + std::to_string(std::get<MDependentDecay>(decay).m) + ")";
  }
  return (kind == MixingKind::kAlpha ? "alpha " : "beta ") + body;
}

}  // namespace

MixingProfile::MixingProfile(MixingKind kind, Decay decay, std::string description)
    : kind_(kind), decay_(std::move(decay)), description_(std::move(description)) {
  if (const auto* ex = std::get_if<ExplicitDecay>(&decay_)) {
    for (std::size_t i = 0; i < ex->values.size(); ++i) {
      require(std::isfinite(ex->values[i]) && ex->values[i] >= 0.0,
              "explicit mixing values must be finite and >= 0");
      if (i > 0) {
        require(ex->values[i] <= ex->values[i - 1], "explicit mixing values must be nonincreasing");
      }
    }
  } else if (const auto* geo = std::get_if<GeometricDecay>(&decay_)) {
    require(std::isfinite(geo->c) && geo->c >= 0.0, "geometric profile needs c >= 0");
    require(geo->rho >= 0.0 && geo->rho < 1.0, "geometric profile needs 0 <= rho < 1");
  } else if (const auto* poly = std::get_if<PolynomialDecay>(&decay_)) {
    require(std::isfinite(poly->c) && poly->c >= 0.0, "polynomial profile needs c >= 0");
    require(std::isfinite(poly->theta) && poly->theta > 0.0, "polynomial profile needs theta > 0");
  } else if (const auto* md = std::get_if<MDependentDecay>(&decay_)) {
    require(md->m >= 0, "m-dependent profile needs m >= 0");
    require(kind_ == MixingKind::kAlpha,
            "m-dependent profiles are alpha-only; give beta values explicitly");
  }
  if (description_.empty()) description_ = default_description(kind_, decay_);
}

double MixingProfile::value_at(std::int64_t i) const {
  if (i < 1) throw Error(ErrorCode::kInvalidInput, "mixing lag must be >= 1");
  double raw = 0.0;
  if (const auto* ex = std::get_if<ExplicitDecay>(&decay_)) {
    raw = static_cast<std::size_t>(i) <= ex->values.size() ? ex->values[i - 1] : 0.0;
  } else if (const auto* geo = std::get_if<GeometricDecay>(&decay_)) {
    raw = geo->rho == 0.0 ? 0.0 : geo->c * std::pow(geo->rho, static_cast<double>(i));
  } else if (const auto* poly = std::get_if<PolynomialDecay>(&decay_)) {
    raw = poly->c * std::pow(static_cast<double>(i + 1), -poly->theta);
  } else if (const auto* md = std::get_if<MDependentDecay>(&decay_)) {
    raw = i <= md->m ? kAlphaCap : 0.0;
  }
  return kind_ == MixingKind::kAlpha ? std::min(kAlphaCap, raw) : raw;
}

std::int64_t MixingProfile::support_end() const {
  if (const auto* ex = std::get_if<ExplicitDecay>(&decay_)) {
    return static_cast<std::int64_t>(ex->values.size());
  }
  if (const auto* md = std::get_if<MDependentDecay>(&decay_)) return md->m;
  if (const auto* geo = std::get_if<GeometricDecay>(&decay_)) {
    if (geo->rho == 0.0 || geo->c == 0.0) return 0;
  }
  if (const auto* poly = std::get_if<PolynomialDecay>(&decay_)) {
    if (poly->c == 0.0) return 0;
  }
  return -1;
}

bool series_converges(const MixingProfile& profile, double s, double v) {
  if (!(v > s)) throw Error(ErrorCode::kInvalidOrder, "series requires v > s");
  return weighted_series_converges(profile.decay(), 1.0 - s / v, s / 2.0 - 1.0);
}

bool series_converges_beta(const MixingProfile& profile, double s) {
  return weighted_series_converges(profile.decay(), 1.0, (s - 2.0) / 2.0);
}

MixingProfile profile_for_driver(const DriverModel& driver) {
  const auto& kind = driver.kind();
  if (std::holds_alternative<IidNormal>(kind) || std::holds_alternative<IidRademacher>(kind)) {
    return {MixingKind::kAlpha, MDependentDecay{0}, "independent driver"};
  }
  if (const auto* ma = std::get_if<MovingAverage>(&kind)) {
    const auto q = static_cast<std::int64_t>(ma->weights.size()) - 1;
    return {MixingKind::kAlpha, MDependentDecay{q}, "MA(" + std::to_string(q) + ") driver, m-dependent"};
  }
  if (const auto* ar = std::get_if<Ar1>(&kind)) {
    return {MixingKind::kAlpha, GeometricDecay{1.0, std::fabs(ar->rho)},
            "Gaussian AR(1): alpha(i) <= maximal correlation |rho|^i"};
  }
  throw Error(ErrorCode::kUnsupported, "no certified mixing profile for driver " + driver.describe());
}

}  // namespace lpclt
