// Copyright 2026 The dpbandit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpbandit/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace dpbandit {
namespace {

// 40-digit evaluations of the closed forms.
constexpr double kSqrt2C0 = 2.87497177520840817678903122457;
constexpr double kEtaAlpha0T1e6 = 651.491553790813886104129226633;
constexpr double kEtaAlphaHalfT1e6 = 43.2783991031930424817427835873;
constexpr double kMatchCAlpha0 = 1.17801935200623763531982123209;
constexpr double kMatchCAlpha1 = 60.4624499048334207390880042318;

TEST(GdpParam, RejectsNegativeAndNonFinite) {
  EXPECT_THROW(GdpParam(-1.0), std::domain_error);
  EXPECT_THROW(GdpParam(std::nan("")), std::domain_error);
  EXPECT_THROW(GdpParam{std::numeric_limits<double>::infinity()}, std::domain_error);
  EXPECT_EQ(GdpParam(0.0).eta(), 0.0);
}

TEST(Tradeoff, ZeroEtaIsIdentityComplement) {
  for (double x = 0.0; x <= 1.0; x += 0.0625) {
    EXPECT_NEAR(tradeoff_g(GdpParam(0.0), x), 1.0 - x, 1e-12);
  }
}

TEST(Tradeoff, EndpointsAndKnownValue) {
  EXPECT_EQ(tradeoff_g(GdpParam(3.0), 0.0), 1.0);
  EXPECT_EQ(tradeoff_g(GdpParam(3.0), 1.0), 0.0);
  EXPECT_NEAR(tradeoff_g(GdpParam(1.0), 0.5), 0.15865525393145705, 1e-12);
  EXPECT_THROW(tradeoff_g(GdpParam(1.0), 1.5), std::domain_error);
}

TEST(Tradeoff, NonincreasingConvexAndOrderedInEta) {
  const std::vector<double> etas{0.1, 0.5, 1.0, 2.0, 5.0};
  constexpr double kH = 1.0 / 512;
  for (double eta : etas) {
    double prev = 2.0;
    for (int i = 1; i < 512; ++i) {
      const double x = i * kH;
      const double g = tradeoff_g(GdpParam(eta), x);
      EXPECT_LE(g, prev + 1e-15);
      prev = g;
      if (i + 1 < 512) {
        const double left = tradeoff_g(GdpParam(eta), x - kH);
        const double right = tradeoff_g(GdpParam(eta), x + kH);
        EXPECT_GE(left + right - 2.0 * g, -1e-12) << "eta=" << eta << " x=" << x;
      }
      EXPECT_LE(tradeoff_g(GdpParam(eta * 1.5), x), g + 1e-15);
    }
  }
}

TEST(Compose, Examples) {
  const std::vector<GdpParam> pythagorean{GdpParam(3.0), GdpParam(4.0)};
  EXPECT_DOUBLE_EQ(compose(pythagorean).eta(), 5.0);
  EXPECT_EQ(compose({}).eta(), 0.0);
  const std::vector<GdpParam> twice{GdpParam(1.7), GdpParam(1.7)};
  EXPECT_NEAR(compose(twice).eta(), 1.7 * std::numbers::sqrt2, 1e-14);
  const std::vector<GdpParam> single{GdpParam(2.5)};
  EXPECT_EQ(compose(single).eta(), 2.5);
}

TEST(Compose, PermutationInvariant) {
  std::vector<GdpParam> etas{GdpParam(0.3), GdpParam(2.0), GdpParam(1.1),
                             GdpParam(7.5)};
  const double base = compose(etas).eta();
  std::sort(etas.begin(), etas.end());
  do {
    EXPECT_NEAR(compose(etas).eta(), base, 1e-14);
  } while (std::next_permutation(etas.begin(), etas.end()));
}

TEST(GdpToDp, KnownValues) {
  EXPECT_NEAR(gdp_to_dp(GdpParam(1.0), 0.0).delta, 0.382924922548026, 1e-12);
  EXPECT_NEAR(gdp_to_dp(GdpParam(1.0), 1.0).delta, 0.126936737506644, 1e-12);
  EXPECT_NEAR(gdp_to_dp(GdpParam(4.0), 2.0).delta, 0.887309233283398, 1e-12);
  EXPECT_NEAR(gdp_to_dp(GdpParam(0.25), 2.0).delta / 5.09213089386359e-17, 1.0, 1e-6);
}

TEST(GdpToDp, LimitsAndErrors) {
  EXPECT_EQ(gdp_to_dp(GdpParam(0.0), 0.7).delta, 0.0);
  EXPECT_LT(gdp_to_dp(GdpParam(1e-6), 0.0).delta, 1e-6);
  EXPECT_LT(gdp_to_dp(GdpParam(1e-3), 0.1).delta, 1e-300);
  EXPECT_THROW(gdp_to_dp(GdpParam(1.0), -0.1), std::domain_error);
}

TEST(GdpToDp, LargeEpsilonDoesNotOverflow) {
  // e^eps overflows a double at eps ~ 710; the log-domain form must not.
  const DpPoint p = gdp_to_dp(GdpParam(40.0), 1000.0);
  EXPECT_NEAR(p.delta / 2.53629651495655e-7, 1.0, 1e-6);
  const DpPoint q = gdp_to_dp(GdpParam(1.0), 50.0);
  EXPECT_GE(q.delta, 0.0);
  EXPECT_LT(q.delta, 1e-300);
}

TEST(GdpToDp, MonotoneInEtaAndEpsilon) {
  const std::vector<double> eps_grid{0.0, 0.5, 1.0, 2.0};
  for (double eps : eps_grid) {
    double prev = -1.0;
    for (double eta = 0.1; eta <= 10.0 + 1e-9; eta += 0.1) {
      const double d = gdp_to_dp(GdpParam(eta), eps).delta;
      EXPECT_GE(d, prev);
      EXPECT_GE(d, 0.0);
      EXPECT_LE(d, 1.0);
      prev = d;
    }
  }
  for (double eta : {0.3, 1.0, 3.0}) {
    double prev = 2.0;
    for (double eps = 0.0; eps <= 10.0; eps += 0.25) {
      const double d = gdp_to_dp(GdpParam(eta), eps).delta;
      EXPECT_LE(d, prev);
      prev = d;
    }
  }
}

TEST(GdpToDp, AgreesWithDenseGridDual) {
  for (double eta : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    for (double eps : {0.0, 0.5, 1.0, 2.0}) {
      EXPECT_NEAR(gdp_to_dp(GdpParam(eta), eps).delta,
                  testing::dual_delta_oracle(eta, eps), 1e-6)
          << "eta=" << eta << " eps=" << eps;
    }
  }
}

TEST(EtaDpTsUcb, ConstantAtAlphaOne) {
  for (std::int64_t t : {21, 1000, 10000, 100000, 1000000}) {
    EXPECT_NEAR(eta_dp_ts_ucb(1.0, t).eta(), kSqrt2C0, 1e-12);
  }
}

TEST(EtaDpTsUcb, DirectEvaluation) {
  EXPECT_NEAR(eta_dp_ts_ucb(0.0, 1000000).eta(), kEtaAlpha0T1e6, 1e-9);
  EXPECT_NEAR(eta_dp_ts_ucb(0.5, 1000000).eta(), kEtaAlphaHalfT1e6, 1e-10);
}

TEST(EtaDpTsUcb, EqualsBudgetIdentity) {
  for (double a : {0.0, 0.3, 0.75, 1.0}) {
    for (std::int64_t t : {21, 5000, 1000000}) {
      const double phi = sampling_budget_real(a, t);
      const double expected = std::sqrt(2.0 * phi / std::pow(std::log(double(t)), a));
      EXPECT_NEAR(eta_dp_ts_ucb(a, t).eta() / expected, 1.0, 1e-13);
    }
  }
}

TEST(EtaDpTsUcb, DomainErrors) {
  EXPECT_THROW(eta_dp_ts_ucb(0.5, 20), std::domain_error);
  EXPECT_THROW(eta_dp_ts_ucb(1.5, 1000), std::domain_error);
  EXPECT_THROW(eta_dp_ts_ucb(-0.1, 1000), std::domain_error);
}

TEST(EtaTsGaussian, Examples) {
  EXPECT_DOUBLE_EQ(eta_ts_gaussian(2).eta(), 1.0);
  EXPECT_DOUBLE_EQ(eta_ts_gaussian(8).eta(), 2.0);
  EXPECT_NEAR(eta_ts_gaussian(1000000).eta(), 707.10678118654752, 1e-9);
}

TEST(EtaMTsGaussian, Examples) {
  EXPECT_NEAR(eta_m_ts_gaussian(5000, 0, 1.0).eta(),
              std::numbers::sqrt2 * eta_ts_gaussian(5000).eta(), 1e-12);
  EXPECT_NEAR(eta_m_ts_gaussian(1000000, 1, 1.18).eta(), 650.94455490411933, 1e-9);
  EXPECT_NEAR(eta_m_ts_gaussian(1000000, 2000, 60.462).eta(), 2.8749824716895981,
              1e-12);
  EXPECT_THROW(eta_m_ts_gaussian(100, 0, 0.0), std::domain_error);
  EXPECT_THROW(eta_m_ts_gaussian(100, 0, -1.0), std::domain_error);
}

TEST(MatchC, ReproducesTunedValues) {
  EXPECT_NEAR(match_c(0.0, 1000000, 1), kMatchCAlpha0, 1e-12);
  EXPECT_NEAR(match_c(1.0, 1000000, 2000), kMatchCAlpha1, 1e-10);
  EXPECT_NEAR(match_c(0.0, 1000000, 1), 1.18, 0.005);
  EXPECT_NEAR(match_c(1.0, 1000000, 2000), 60.46, 0.05);
}

TEST(MatchC, EqualizesGdpParameters) {
  for (double a : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (std::int64_t t : {21, 1000, 100000, 1000000}) {
      for (std::int64_t b : {0, 1, 500, 2000}) {
        const double c = match_c(a, t, b);
        EXPECT_NEAR(eta_m_ts_gaussian(t, b, c).eta() / eta_dp_ts_ucb(a, t).eta(), 1.0,
                    1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace dpbandit
