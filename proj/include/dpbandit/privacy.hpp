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

// Gaussian differential privacy (GDP) accounting for the bandit policies:
// trade-off functions, composition, conversion to (epsilon, delta)-DP and the
// closed-form GDP parameters of each policy.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

#include "dpbandit/normal.hpp"

namespace dpbandit {

/// sqrt(2 * pi * e), the constant in the DP-TS-UCB sampling budget.
inline const double kBudgetConstant =
    std::sqrt(2.0 * std::numbers::pi * std::numbers::e);

/// Smallest horizon for which the DP-TS-UCB analysis applies (T > e^3).
inline constexpr std::int64_t kMinDpTsUcbHorizon = 21;

/// A GDP parameter eta >= 0. Smaller is more private.
class GdpParam {
 public:
  constexpr GdpParam() = default;
  explicit GdpParam(double eta) : eta_(eta) {
    if (!(eta >= 0.0) || !std::isfinite(eta)) {
      throw std::domain_error("GDP parameter must be finite and >= 0, got " +
                              std::to_string(eta));
    }
  }
  constexpr double eta() const { return eta_; }
  constexpr auto operator<=>(const GdpParam&) const = default;

 private:
  double eta_ = 0.0;
};

struct DpPoint {
  double epsilon = 0.0;
  double delta = 0.0;
};

namespace detail {

inline void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::domain_error("trade-off parameter alpha must lie in [0, 1], got " +
                            std::to_string(alpha));
  }
}

inline void check_dp_ts_ucb_horizon(std::int64_t horizon) {
  if (horizon < kMinDpTsUcbHorizon) {
    throw std::domain_error("DP-TS-UCB needs horizon T >= 21 (T > e^3), got " +
                            std::to_string(horizon));
  }
}

}  // namespace detail

/// G_eta(x) = Phi(Phi^{-1}(1 - x) - eta), the trade-off function between
/// N(0, 1) and N(eta, 1).
inline double tradeoff_g(GdpParam eta, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("trade-off function argument must lie in [0, 1]");
  }
  if (x == 0.0) return 1.0;
  if (x == 1.0) return 0.0;
  // Phi^{-1}(1 - x) == -Phi^{-1}(x), which avoids rounding 1 - x.
  return std_normal_cdf(-std_normal_quantile(x) - eta.eta());
}

/// Composition: sqrt(sum eta_j^2).
inline GdpParam compose(std::span<const GdpParam> etas) {
  double sum_sq = 0.0;
  for (const GdpParam& e : etas) sum_sq += e.eta() * e.eta();
  return GdpParam(std::sqrt(sum_sq));
}

/// The (epsilon, delta(epsilon)) point implied by eta-GDP:
///   delta = Phi(-eps/eta + eta/2) - e^eps * Phi(-eps/eta - eta/2).
/// Both terms are evaluated in log space, so large epsilon or eta neither
/// overflows e^eps nor cancels to garbage.
inline DpPoint gdp_to_dp(GdpParam eta, double epsilon) {
  if (!(epsilon >= 0.0)) {
    throw std::domain_error("epsilon must be >= 0");
  }
  const double h = eta.eta();
  if (h == 0.0) return {epsilon, 0.0};
  const double log_first = log_std_normal_cdf(-epsilon / h + 0.5 * h);
  const double log_second = epsilon + log_std_normal_cdf(-epsilon / h - 0.5 * h);
  double delta = std::exp(log_first) * -std::expm1(log_second - log_first);
  if (delta < 0.0) delta = 0.0;
  if (delta > 1.0) delta = 1.0;
  return {epsilon, delta};
}

/// Real-valued DP-TS-UCB sampling budget c0 T^{(1-a)/2} ln^{(3-a)/2}(T).
inline double sampling_budget_real(double alpha, std::int64_t horizon) {
  detail::check_alpha(alpha);
  detail::check_dp_ts_ucb_horizon(horizon);
  const double t = static_cast<double>(horizon);
  return kBudgetConstant * std::pow(t, 0.5 * (1.0 - alpha)) *
         std::pow(std::log(t), 0.5 * (3.0 - alpha));
}

/// GDP parameter of DP-TS-UCB: sqrt(2 c0 T^{(1-a)/2} ln^{1.5(1-a)}(T)).
/// Equal to sqrt(2 phi / ln^a(T)) with the un-rounded budget phi; constant
/// sqrt(2 c0) at alpha = 1.
inline GdpParam eta_dp_ts_ucb(double alpha, std::int64_t horizon) {
  detail::check_alpha(alpha);
  detail::check_dp_ts_ucb_horizon(horizon);
  const double t = static_cast<double>(horizon);
  return GdpParam(std::sqrt(2.0 * kBudgetConstant *
                            std::pow(t, 0.5 * (1.0 - alpha)) *
                            std::pow(std::log(t), 1.5 * (1.0 - alpha))));
}

inline GdpParam eta_ts_gaussian(std::int64_t horizon) {
  if (horizon < 1) throw std::domain_error("horizon must be positive");
  return GdpParam(std::sqrt(0.5 * static_cast<double>(horizon)));
}

/// GDP parameter of M-TS-Gaussian with b pre-pulls and variance scale c:
/// sqrt(T / (c (b + 1))).
inline GdpParam eta_m_ts_gaussian(std::int64_t horizon, std::int64_t pre_pulls,
                                  double scale) {
  if (horizon < 1) throw std::domain_error("horizon must be positive");
  if (pre_pulls < 0) throw std::domain_error("pre-pull count must be >= 0");
  if (!(scale > 0.0)) {
    throw std::domain_error("M-TS-Gaussian variance scale c must be > 0");
  }
  return GdpParam(std::sqrt(static_cast<double>(horizon) /
                            (scale * static_cast<double>(pre_pulls + 1))));
}

/// The variance scale c at which M-TS-Gaussian(b, c) has the same GDP
/// parameter as DP-TS-UCB(alpha) over horizon T:
///   c = T^{(1+a)/2} / (2 c0 (b + 1) ln^{1.5(1-a)}(T)).
inline double match_c(double alpha, std::int64_t horizon,
                      std::int64_t pre_pulls) {
  detail::check_alpha(alpha);
  detail::check_dp_ts_ucb_horizon(horizon);
  if (pre_pulls < 0) throw std::domain_error("pre-pull count must be >= 0");
  const double t = static_cast<double>(horizon);
  return std::pow(t, 0.5 * (1.0 + alpha)) /
         (2.0 * kBudgetConstant * static_cast<double>(pre_pulls + 1) *
          std::pow(std::log(t), 1.5 * (1.0 - alpha)));
}

}  // namespace dpbandit
