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

#include <algorithm>
#include <cmath>
#include <vector>

#include "lpclt/error.hpp"
#include "lpclt/rng.hpp"
#include "lpclt/verify.hpp"

namespace {

using lpclt::BasisFamily;
using lpclt::BoundStatus;
using lpclt::DriverModel;
using lpclt::FieldSpec;
using lpclt::GridSpace;
using lpclt::MixingKind;
using lpclt::MixingProfile;

std::vector<double> normals(std::size_t n, std::uint64_t seed) {
  lpclt::RandomStream rng(seed, {lpclt::StreamDomain::kScratch, 0, 0});
  std::vector<double> out(n);
  for (auto& x : out) x = rng.normal();
  return out;
}

TEST(KolmogorovSmirnov, Examples) {
  std::vector<double> a{0.3, 1.2, -0.7, 2.2};
  const auto same = lpclt::ks_two_sample(a, a);
  EXPECT_EQ(same.stat, 0.0);
  EXPECT_EQ(same.p_value, 1.0);
  std::vector<double> lo{1, 2, 3}, hi{10, 11, 12, 13};
  EXPECT_EQ(lpclt::ks_two_sample(lo, hi).stat, 1.0);
  EXPECT_THROW(lpclt::ks_two_sample(std::vector<double>{}, a), lpclt::Error);
}

TEST(KolmogorovSmirnov, HandCheckedStatistic) {
  // F_a jumps at 1,2,3; F_b at 1.5,2.5: max gap 1/3 at t in [1, 1.5)
  std::vector<double> a{1, 2, 3}, b{1.5, 2.5};
  EXPECT_NEAR(lpclt::ks_two_sample(a, b).stat, 1.0 / 3.0, 1e-15);
  // ties across samples
  std::vector<double> c{1, 1, 2}, d{1, 2, 2};
  EXPECT_NEAR(lpclt::ks_two_sample(c, d).stat, 1.0 / 3.0, 1e-15);
}

TEST(KolmogorovSmirnov, SurvivalFunction) {
  EXPECT_NEAR(lpclt::kolmogorov_survival(1.3581), 0.05, 1e-4);
  EXPECT_NEAR(lpclt::kolmogorov_survival(1.6276), 0.01, 1e-4);
  EXPECT_EQ(lpclt::kolmogorov_survival(0.0), 1.0);
  for (double x = 0.05; x < 3.0; x += 0.05) {
    EXPECT_GE(lpclt::kolmogorov_survival(x), 0.0);
    EXPECT_LE(lpclt::kolmogorov_survival(x), 1.0);
    EXPECT_LE(lpclt::kolmogorov_survival(x + 0.05), lpclt::kolmogorov_survival(x));
  }
  // both series branches agree near the switch point
  EXPECT_NEAR(lpclt::kolmogorov_survival(1.18 - 1e-9), lpclt::kolmogorov_survival(1.18 + 1e-9), 1e-8);
}

TEST(KolmogorovSmirnov, InvariantUnderMonotoneTransform) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto a = normals(300, seed), b = normals(500, seed + 1000);
    for (auto& x : b) x += 0.1;
    const auto r = lpclt::ks_two_sample(a, b);
    std::transform(a.begin(), a.end(), a.begin(), [](double x) { return std::exp(x); });
    std::transform(b.begin(), b.end(), b.begin(), [](double x) { return std::exp(x); });
    const auto t = lpclt::ks_two_sample(a, b);
    EXPECT_EQ(r.stat, t.stat);
    EXPECT_EQ(r.p_value, t.p_value);
  }
}

TEST(KolmogorovSmirnov, NullCalibration) {
  int rejections = 0;
  for (std::uint64_t pair = 0; pair < 200; ++pair) {
    const auto a = normals(2000, 2 * pair + 1), b = normals(2000, 2 * pair + 2);
    const auto r = lpclt::ks_two_sample(a, b);
    ASSERT_GE(r.p_value, 0.0);
    ASSERT_LE(r.p_value, 1.0);
    if (r.p_value < 0.01) ++rejections;
  }
  EXPECT_LE(rejections / 200.0, 0.04);
}

TEST(VerifyClt, GaussianClosedCasePasses) {
  const auto g = GridSpace::uniform(16);
  const auto spec = FieldSpec::named({BasisFamily::kConst, 1}, DriverModel::iid_normal(1.0), g);
  std::vector<std::size_t> schedule{1024};
  const auto r = lpclt::verify_clt(spec, schedule, 2.0, g, 2000, 0.01, 0);
  ASSERT_EQ(r.verdicts.size(), 1u);
  EXPECT_TRUE(r.verdicts[0].pass);
  EXPECT_EQ(r.verdicts[0].reps_finite, 2000u);
  EXPECT_EQ(r.verdicts[0].reps_limit, 8000u);
  EXPECT_TRUE(r.pass_at_largest);
  EXPECT_TRUE(r.converged);
}

TEST(VerifyClt, RademacherStatisticShrinks) {
  const auto g = GridSpace::uniform(16);
  const auto spec = FieldSpec::named({BasisFamily::kConst, 1}, DriverModel::iid_rademacher(), g);
  std::vector<std::size_t> schedule{16, 1024};
  const auto r = lpclt::verify_clt(spec, schedule, 2.0, g, 2000, 0.01, 0);
  EXPECT_LT(r.verdicts[1].ks_stat, r.verdicts[0].ks_stat);
  for (const auto& v : r.verdicts) {
    EXPECT_GE(v.ks_stat, 0.0);
    EXPECT_LE(v.ks_stat, 1.0);
  }
}

TEST(VerifyClt, WrongLimitIsRejected) {
  const auto g = GridSpace::uniform(16);
  const auto spec = FieldSpec::named({BasisFamily::kConst, 1}, DriverModel::iid_normal(1.0), g);
  std::vector<std::size_t> schedule{256};
  lpclt::CltOptions options;
  options.lambda_override = std::vector<double>{2.0};
  const auto r = lpclt::verify_clt(spec, schedule, 2.0, g, 1000, 0.01, 0, options);
  EXPECT_FALSE(r.pass_at_largest);
}

TEST(VerifyClt, Validation) {
  const auto g = GridSpace::uniform(8);
  const auto spec = FieldSpec::named({BasisFamily::kConst, 1}, DriverModel::iid_normal(1.0), g);
  std::vector<std::size_t> schedule{16};
  EXPECT_THROW(lpclt::verify_clt(spec, schedule, 2.0, g, 500, 0.2, 0), lpclt::Error);
  EXPECT_THROW(lpclt::verify_clt(spec, schedule, 2.0, g, 500, 0.0, 0), lpclt::Error);
  EXPECT_THROW(lpclt::verify_clt(spec, std::vector<std::size_t>{}, 2.0, g, 500, 0.01, 0), lpclt::Error);
}

TEST(VerifyMomentBound, IidExample) {
  const auto g = GridSpace::uniform(8);
  const auto spec = FieldSpec::named({BasisFamily::kConst, 1}, DriverModel::iid_normal(1.0), g);
  std::vector<std::size_t> schedule{16, 64};
  const auto v = lpclt::verify_moment_bound(spec, 2, 4.0, schedule, g, 2000, 1);
  EXPECT_NEAR(v.theoretical, 504.0 * std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(v.empirical.value, 1.0, 0.15);
  EXPECT_EQ(v.status(), BoundStatus::kSatisfied);
  EXPECT_GE(v.slack, 0.0);
  EXPECT_EQ(v.per_n.size(), 2u);
  EXPECT_EQ(v.empirical.value, std::max(v.per_n[0].value, v.per_n[1].value));
}

TEST(VerifyMomentBound, MovingAverageOrderFour) {
  const auto g = GridSpace::uniform(16);
  const auto spec = FieldSpec::named({BasisFamily::kFourier, 3}, DriverModel::moving_average({1.0, 1.0, 1.0}), g);
  std::vector<std::size_t> schedule{16, 128, 1024};
  const auto v = lpclt::verify_moment_bound(spec, 4, 8.0, schedule, g, 500, 2);
  EXPECT_EQ(v.status(), BoundStatus::kSatisfied);
  EXPECT_TRUE(std::isfinite(v.theoretical));
}

TEST(VerifyMomentBound, ZeroField) {
  const auto g = GridSpace::uniform(4);
  FieldSpec zero({std::vector<double>(4, 0.0)}, DriverModel::iid_normal(1.0));
  std::vector<std::size_t> schedule{8};
  const auto v = lpclt::verify_moment_bound(zero, 2, 4.0, schedule, g, 100, 1);
  EXPECT_EQ(v.theoretical, 0.0);
  EXPECT_EQ(v.empirical.ci_high, 0.0);
  EXPECT_TRUE(v.satisfied);
}

TEST(VerifyMomentBound, DivergentProfileIsVacuous) {
  const auto g = GridSpace::uniform(4);
  const auto spec = FieldSpec::named({BasisFamily::kConst, 1}, DriverModel::iid_normal(1.0), g);
  MixingProfile slow(MixingKind::kAlpha, lpclt::PolynomialDecay{1.0, 1.0});
  std::vector<std::size_t> schedule{8};
  const auto v = lpclt::verify_moment_bound(spec, slow, 2, 4.0, schedule, g, 100, 1);
  EXPECT_EQ(v.status(), BoundStatus::kVacuous);
  EXPECT_TRUE(v.satisfied);
  EXPECT_EQ(lpclt::bound_status_name(v.status()), "vacuous");
}

TEST(VerifyMomentBound, SlackNondecreasingInProfile) {
  const auto g = GridSpace::uniform(8);
  const auto spec = FieldSpec::named({BasisFamily::kConst, 1}, DriverModel::iid_normal(1.0), g);
  std::vector<std::size_t> schedule{32};
  double prev = -1.0;
  for (double rho : {0.0, 0.2, 0.5, 0.8}) {
    MixingProfile p(MixingKind::kAlpha, lpclt::GeometricDecay{1.0, rho});
    const auto v = lpclt::verify_moment_bound(spec, p, 2, 4.0, schedule, g, 200, 4);
    EXPECT_GE(v.slack, prev);
    prev = v.slack;
  }
}

TEST(MakeBoundVerdict, SatisfiedImpliesNonnegativeSlack) {
  lpclt::MomentEstimate e;
  e.value = 1.0;
  e.ci_low = 0.5;
  e.ci_high = 2.0;
  for (double theo : {0.0, 1.0, 2.0, 3.0, 1e9}) {
    const auto v = lpclt::make_bound_verdict({e}, theo);
    EXPECT_EQ(v.satisfied, 2.0 <= theo);
    if (v.satisfied) EXPECT_GE(v.slack, 0.0);
    EXPECT_EQ(v.status(), v.satisfied ? BoundStatus::kSatisfied : BoundStatus::kViolated);
  }
}

TEST(VerifySuperstrong, Examples) {
  const auto g = GridSpace::uniform(16);
  std::vector<std::size_t> schedule{16, 256};
  const auto iid = FieldSpec::named({BasisFamily::kConst, 1}, DriverModel::iid_normal(1.0), g);
  MixingProfile half(MixingKind::kBeta, lpclt::GeometricDecay{1.0, 0.5});
  const auto v = lpclt::verify_superstrong(iid, half, 2.0, schedule, g, 500, 3);
  EXPECT_EQ(v.constant, 4.0);
  EXPECT_NEAR(v.theoretical, 16.0, 1e-12);
  EXPECT_EQ(v.status(), BoundStatus::kSatisfied);

  const auto ma = FieldSpec::named({BasisFamily::kFourier, 3}, DriverModel::moving_average({1.0, 1.0}), g);
  MixingProfile one_dep(MixingKind::kBeta, lpclt::ExplicitDecay{{1.0}});
  const auto w = lpclt::verify_superstrong(ma, one_dep, 2.0, schedule, g, 500, 3);
  EXPECT_TRUE(std::isfinite(w.constant));
  EXPECT_EQ(w.status(), BoundStatus::kSatisfied);

  MixingProfile harmonic(MixingKind::kBeta, lpclt::PolynomialDecay{1.0, 1.0});
  const auto x = lpclt::verify_superstrong(iid, harmonic, 4.0, schedule, g, 200, 3);
  EXPECT_EQ(x.status(), BoundStatus::kVacuous);
}

TEST(TailReport, ComposesMomentBound) {
  const auto g = GridSpace::uniform(8);
  const auto spec = FieldSpec::named({BasisFamily::kConst, 1}, DriverModel::iid_normal(1.0), g);
  std::vector<double> ys{1.0, 100.0};
  const auto t = lpclt::tail_report(spec, MixingProfile::iid(), 2, 4.0, g, ys);
  EXPECT_NEAR(t.w_value, 504.0 * std::sqrt(3.0), 1e-9);
  EXPECT_EQ(t.q_bound[0], 1.0);
  EXPECT_NEAR(t.q_bound[1], 0.0873, 5e-5);
}

TEST(ProjectionCheck, Examples) {
  const auto g = GridSpace::uniform(16);
  const auto iid = FieldSpec::named({BasisFamily::kConst, 1}, DriverModel::iid_normal(1.0), g);
  std::vector<double> ones(16, 1.0), zeros(16, 0.0);
  const auto c1 = lpclt::projection_variance_check(iid, ones, 64, g, 4000, 5);
  EXPECT_NEAR(c1.analytic, 1.0, 1e-14);
  EXPECT_TRUE(c1.within_ci);
  const auto c0 = lpclt::projection_variance_check(iid, zeros, 64, g, 200, 5);
  EXPECT_EQ(c0.analytic, 0.0);
  EXPECT_EQ(c0.empirical, 0.0);

  const auto fourier = FieldSpec::named({BasisFamily::kFourier, 3}, DriverModel::iid_normal(1.0), g);
  const auto& phi1 = fourier.basis()[1];
  const auto c2 = lpclt::projection_variance_check(fourier, phi1, 64, g, 4000, 6);
  EXPECT_NEAR(c2.analytic, 1.0, 1e-12);
  EXPECT_TRUE(c2.within_ci);
}

TEST(ProjectionCheck, Ar1UsesFiniteNCovariance) {
  const auto g = GridSpace::uniform(8);
  const auto ar = FieldSpec::named({BasisFamily::kConst, 1}, DriverModel::ar1_unit_variance(0.5), g);
  std::vector<double> ones(8, 1.0);
  const auto c = lpclt::projection_variance_check(ar, ones, 32, g, 4000, 7);
  EXPECT_NEAR(c.analytic, DriverModel::ar1_unit_variance(0.5).finite_n_variance(32), 1e-12);
  EXPECT_NEAR(c.analytic_limit, 3.0, 1e-12);
  EXPECT_TRUE(c.within_ci);
}

}  // namespace
