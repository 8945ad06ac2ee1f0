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


#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "lpclt/error.hpp"
#include "lpclt/montecarlo.hpp"

namespace {

using lpclt::BasisFamily;
using lpclt::DriverModel;
using lpclt::FieldSpec;
using lpclt::GridSpace;

TEST(SimulateSn, SingleTermEqualsFirstField) {
  const auto g = GridSpace::uniform(16);
  const auto spec = FieldSpec::named({BasisFamily::kFourier, 3}, DriverModel::ar1_unit_variance(0.3), g);
  const auto s1 = lpclt::simulate_sn(spec, 1, g, 4, 9);
  const auto xi = lpclt::sample_sequence(spec, 1, g, 4, 9);
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(s1[j], xi[j], 1e-15);
}

TEST(SimulateSn, MatchesScaledColumnSums) {
  const auto g = GridSpace::uniform(12);
  const auto spec = FieldSpec::named({BasisFamily::kSine, 2}, DriverModel::moving_average({1.0, -0.4}), g, 0.3);
  const std::size_t n = 37;
  const auto sn = lpclt::simulate_sn(spec, n, g, 8, 1);
  const auto rows = lpclt::sample_sequence(spec, n, g, 8, 1);
  for (std::size_t j = 0; j < g.size(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += rows[i * g.size() + j];
    EXPECT_NEAR(sn[j], col / std::sqrt(double(n)), 1e-13);
  }
}

TEST(SimulateSn, ZeroBasisGivesZero) {
  const auto g = GridSpace::uniform(8);
  FieldSpec zero({std::vector<double>(8, 0.0)}, DriverModel::iid_normal(1.0));
  for (double x : lpclt::simulate_sn(zero, 100, g, 1, 0)) EXPECT_EQ(x, 0.0);
}

TEST(SimulateSn, ConstantFieldNormIsAbsoluteValue) {
  const auto g = GridSpace::uniform(64);
  const auto spec = FieldSpec::named({BasisFamily::kConst, 1}, DriverModel::iid_normal(1.0), g);
  for (double p : {1.0, 2.0, 3.5}) {
    const auto norms = lpclt::sample_sn_norms(spec, 50, p, g, 20, 5);
    for (std::size_t r = 0; r < norms.size(); ++r) {
      const auto sn = lpclt::simulate_sn(spec, 50, g, 5, r);
      EXPECT_NEAR(norms[r], std::fabs(sn[0]), 1e-13);
    }
  }
}

TEST(EstimateMoment, GaussianMoments) {
  const auto g = GridSpace::uniform(16);
  const auto spec = FieldSpec::named({BasisFamily::kConst, 1}, DriverModel::iid_normal(1.0), g);
  for (std::size_t n : {1u, 64u}) {
    const auto m2 = lpclt::estimate_moment(spec, n, 2.0, 2.0, g, 4000, 1);
    EXPECT_LE(m2.ci_low, 1.0);
    EXPECT_GE(m2.ci_high, 1.0);
    EXPECT_LE(m2.ci_low, m2.value);
    EXPECT_LE(m2.value, m2.ci_high);
    const auto m4 = lpclt::estimate_moment(spec, n, 4.0, 2.0, g, 4000, 1);
    EXPECT_LE(m4.ci_low, 3.0);
    EXPECT_GE(m4.ci_high, 3.0);
  }
}

TEST(EstimateMoment, Ar1LongRunVariance) {
  const auto g = GridSpace::uniform(8);
  const auto spec = FieldSpec::named({BasisFamily::kConst, 1}, DriverModel::ar1_unit_variance(0.5), g);
  const auto m = lpclt::estimate_moment(spec, 1024, 2.0, 2.0, g, 3000, 2);
  const double exact_n = DriverModel::ar1_unit_variance(0.5).finite_n_variance(1024);
  EXPECT_LE(m.ci_low, exact_n);
  EXPECT_GE(m.ci_high, exact_n);
  EXPECT_NEAR(m.value, 3.0, 0.3);
}

TEST(EstimateMoment, IntervalFormula) {
  std::vector<double> norms;
  for (int i = 0; i < 200; ++i) norms.push_back(i % 2 ? 1.0 : 2.0);
  const auto e = lpclt::summarize_moment(norms, 2.0, 2.0, 10);
  EXPECT_DOUBLE_EQ(e.value, 2.5);
  // values 1 and 4: population sd 1.5, sample sd 1.5 sqrt(200/199)
  const double se = 1.5 * std::sqrt(200.0 / 199.0) / std::sqrt(200.0);
  EXPECT_NEAR(e.std_error, se, 1e-14);
  EXPECT_NEAR(e.ci_high - e.value, lpclt::kZ99 * se, 1e-13);
  EXPECT_FALSE(e.heavy_tailed);
}

TEST(EstimateMoment, HeavyTailFlag) {
  std::vector<double> norms(1000, 1.0);
  norms[0] = 1000.0;
  EXPECT_TRUE(lpclt::summarize_moment(norms, 2.0, 2.0, 1).heavy_tailed);
}

TEST(EstimateMoment, InsufficientReps) {
  const auto g = GridSpace::uniform(8);
  const auto spec = FieldSpec::named({BasisFamily::kConst, 1}, DriverModel::iid_normal(1.0), g);
  try {
    lpclt::estimate_moment(spec, 10, 2.0, 2.0, g, 99, 1);
    FAIL();
  } catch (const lpclt::Error& e) {
    EXPECT_EQ(e.code(), lpclt::ErrorCode::kInsufficientReps);
  }
}

TEST(EstimateMoment, ThreadCountDoesNotChangeResults) {
  const auto g = GridSpace::uniform(32);
  const auto spec = FieldSpec::named({BasisFamily::kFourier, 3}, DriverModel::ar1_unit_variance(0.6), g);
  const auto serial = lpclt::estimate_moment(spec, 128, 4.0, 4.0, g, 300, 6, {1});
  for (unsigned t : {2u, 4u, 7u, 0u}) {
    const auto par = lpclt::estimate_moment(spec, 128, 4.0, 4.0, g, 300, 6, {t});
    EXPECT_EQ(serial.value, par.value);
    EXPECT_EQ(serial.ci_high, par.ci_high);
  }
}

TEST(EmpiricalCov, TraceIdentityWithMomentEstimate) {
  const auto g = GridSpace::uniform(24);
  const auto spec = FieldSpec::named({BasisFamily::kFourier, 3}, DriverModel::moving_average({1.0, 1.0}), g);
  const auto cov = lpclt::empirical_cov(spec, 64, g, 500, 13);
  const auto m = lpclt::estimate_moment(spec, 64, 2.0, 2.0, g, 500, 13);
  double trace = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) trace += g.weights()[j] * cov.at(j, j);
  EXPECT_NEAR(trace, m.value, 1e-10 * m.value);
}

TEST(EmpiricalCov, IidFourierMatchesKernel) {
  const auto g = GridSpace::uniform(8);
  const auto spec = FieldSpec::named({BasisFamily::kFourier, 3}, DriverModel::iid_normal(1.0), g);
  const auto cov = lpclt::empirical_cov(spec, 16, g, 20000, 21);
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = 0; b < g.size(); ++b) {
      double expected = 0.0;
      for (const auto& phi : spec.basis()) expected += phi[a] * phi[b];
      EXPECT_NEAR(cov.at(a, b), expected, 4.0 * cov.se(a, b)) << a << "," << b;
      EXPECT_EQ(cov.at(a, b), cov.at(b, a));
    }
  }
}

TEST(EmpiricalCov, ZeroFieldGivesZeroMatrix) {
  const auto g = GridSpace::uniform(4);
  FieldSpec zero({std::vector<double>(4, 0.0)}, DriverModel::iid_normal(1.0));
  const auto cov = lpclt::empirical_cov(zero, 10, g, 100, 1);
  for (double c : cov.covariance) EXPECT_EQ(c, 0.0);
}

TEST(Lyapunov, MomentsAtLiftedOrderDominate) {
  const auto g = GridSpace::uniform(32);
  const auto spec = FieldSpec::named({BasisFamily::kFourier, 5}, DriverModel::ar1_unit_variance(0.4), g);
  const auto fields = lpclt::sample_sn_fields(spec, 50, g, 200, 3);
  for (std::size_t r = 0; r < 200; ++r) {
    std::span<const double> f(fields.data() + r * g.size(), g.size());
    EXPECT_LE(lpclt::lp_norm(f, 3.0, g), lpclt::lp_norm(f, 4.0, g) * (1 + 1e-13));
    EXPECT_LE(lpclt::lp_norm(f, 5.5, g), lpclt::lp_norm(f, 6.0, g) * (1 + 1e-13));
  }
}

}  // namespace
