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

#include "dpbandit/normal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gtest/gtest.h"

namespace dpbandit {
namespace {

// Reference values from a 40-digit evaluation of Phi.
constexpr double kPhi196 = 0.97500210485177956379;
constexpr double kPhiMinus1 = 0.15865525393145705141;
constexpr double kPhiMinus8 = 6.2209605742717841235e-16;
constexpr double kLogPhiMinus40 = -804.60844201375378817;
constexpr double kLogPhiMinus1000 = -500007.82669481218431;

// Independent evaluation in extended precision.
long double reference_cdf(long double x) {
  return 0.5L * std::erfc(-x / std::sqrt(2.0L));
}

TEST(StdNormalCdf, KnownValues) {
  EXPECT_EQ(std_normal_cdf(0.0), 0.5);
  EXPECT_NEAR(std_normal_cdf(1.96), kPhi196, 1e-15);
  EXPECT_NEAR(std_normal_cdf(-1.0), kPhiMinus1, 1e-15);
  EXPECT_NEAR(std_normal_cdf(-8.0) / kPhiMinus8, 1.0, 1e-12);
  EXPECT_EQ(std_normal_cdf(-std::numeric_limits<double>::infinity()), 0.0);
  EXPECT_EQ(std_normal_cdf(std::numeric_limits<double>::infinity()), 1.0);
}

TEST(StdNormalCdf, AbsoluteErrorOnGrid) {
  for (double x = -8.0; x <= 8.0; x += 0.01) {
    ASSERT_NEAR(std_normal_cdf(x), static_cast<double>(reference_cdf(x)), 1e-12)
        << "x = " << x;
  }
}

TEST(StdNormalCdf, Symmetry) {
  for (double x = 0.0; x <= 8.0; x += 0.137) {
    EXPECT_NEAR(std_normal_cdf(-x), 1.0 - std_normal_cdf(x), 1e-15);
  }
}

TEST(StdNormalCdf, NanIsDomainError) {
  EXPECT_THROW(std_normal_cdf(std::nan("")), std::domain_error);
  EXPECT_THROW(log_std_normal_cdf(std::nan("")), std::domain_error);
}

TEST(LogStdNormalCdf, DeepTail) {
  EXPECT_NEAR(log_std_normal_cdf(-40.0), kLogPhiMinus40, 1e-10);
  EXPECT_NEAR(log_std_normal_cdf(-1000.0) / kLogPhiMinus1000, 1.0, 1e-14);
  // Continuous across the switch between erfc and the asymptotic series.
  EXPECT_NEAR(log_std_normal_cdf(-30.0 + 1e-9), log_std_normal_cdf(-30.0 - 1e-9),
              1e-6);
  EXPECT_NEAR(log_std_normal_cdf(-2.0), std::log(std_normal_cdf(-2.0)), 1e-15);
}

TEST(StdNormalQuantile, KnownValues) {
  EXPECT_EQ(std_normal_quantile(0.5), 0.0);
  EXPECT_NEAR(std_normal_quantile(0.9750021), 1.96, 1e-6);
  EXPECT_NEAR(std_normal_quantile(0.975), 1.9599639845400542355, 1e-14);
}

TEST(StdNormalQuantile, CdfResidual) {
  for (double p = 1e-6; p < 1.0; p += 0.000731) {
    ASSERT_NEAR(std_normal_cdf(std_normal_quantile(p)), p, 1e-10) << "p = " << p;
  }
  for (double p : {1e-300, 1e-100, 1e-20, 1e-10}) {
    const double x = std_normal_quantile(p);
    EXPECT_NEAR(std_normal_cdf(x) / p, 1.0, 1e-10) << "p = " << p;
  }
}

TEST(StdNormalQuantile, RoundTrip) {
  for (double x = -6.0; x <= 6.0; x += 0.01) {
    ASSERT_NEAR(std_normal_quantile(std_normal_cdf(x)), x, 1e-8) << "x = " << x;
  }
}

TEST(StdNormalQuantile, DomainErrors) {
  EXPECT_THROW(std_normal_quantile(0.0), std::domain_error);
  EXPECT_THROW(std_normal_quantile(1.0), std::domain_error);
  EXPECT_THROW(std_normal_quantile(-0.5), std::domain_error);
  EXPECT_THROW(std_normal_quantile(std::nan("")), std::domain_error);
}

}  // namespace
}  // namespace dpbandit
