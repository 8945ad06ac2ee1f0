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

// Certified upper-bound sequences for the strong (alpha) and superstrong
// (beta) mixing coefficients, and convergence of the series built on them.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "lpclt/driver.hpp"

namespace lpclt {

enum class MixingKind { kAlpha, kBeta };

// Universal bound on the Rosenblatt coefficient.
inline constexpr double kAlphaCap = 0.25;

// values[0] is the bound at lag 1; zero beyond the list.
struct ExplicitDecay {
  std::vector<double> values;
};

// c * rho^i
struct GeometricDecay {
  double c = 1.0;
  double rho = 0.0;
};

// c * (i + 1)^(-theta)
struct PolynomialDecay {
  double c = 1.0;
  double theta = 1.0;
};

// Zero beyond lag m, the alpha cap at lags 1..m.
struct MDependentDecay {
  std::int64_t m = 0;
};

using Decay = std::variant<ExplicitDecay, GeometricDecay, PolynomialDecay, MDependentDecay>;

class MixingProfile {
 public:
  // Validates parameters; throws lpclt::Error(kInvalidInput) otherwise.
  MixingProfile(MixingKind kind, Decay decay, std::string description = {});

  static MixingProfile iid() { return {MixingKind::kAlpha, MDependentDecay{0}, "iid"}; }

  MixingKind kind() const { return kind_; }
  const Decay& decay() const { return decay_; }
  const std::string& description() const { return description_; }

  // Certified bound at lag i >= 1. Alpha values are clipped to 1/4.
  double value_at(std::int64_t i) const;

  // Last lag with a possibly nonzero value, or -1 if the support is infinite.
  std::int64_t support_end() const;

 private:
  MixingKind kind_;
  Decay decay_;
  std::string description_;
};

// sum_{r>=1} alpha(r)^{1-s/v} (r+1)^{s/2-1} < infinity, decided per decay
// class. Requires v > s.
bool series_converges(const MixingProfile& profile, double s, double v);

// sum_{k>=1} beta(k) (k+1)^{(s-2)/2} < infinity.
bool series_converges_beta(const MixingProfile& profile, double s);

// iid and MA(q) drivers are m-dependent; Gaussian AR(1) gets the
// maximal-correlation bound min(1/4, |rho|^i).
MixingProfile profile_for_driver(const DriverModel& driver);

}  // namespace lpclt
