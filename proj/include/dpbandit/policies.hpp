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

// Bandit policies sharing one contract:
//
//   std::size_t select(std::int64_t round, RngStream& noise);
//   void update(std::size_t arm, double reward);
//
// Rounds are 1-based. Every policy starts with a deterministic round-robin
// initialization phase, and all argmaxes break ties toward the lowest arm.

#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dpbandit/privacy.hpp"
#include "dpbandit/rng.hpp"

namespace dpbandit {

template <typename P>
concept BanditPolicy = requires(P p, std::int64_t round, RngStream& noise,
                                std::size_t arm, double reward) {
  { p.select(round, noise) } -> std::convertible_to<std::size_t>;
  p.update(arm, reward);
};

namespace detail {

inline std::size_t argmax_lowest(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

}  // namespace detail

/// DP-TS-UCB sampling budget: ceil(c0 T^{(1-a)/2} ln^{(3-a)/2}(T)).
inline std::int64_t phi_budget(double alpha, std::int64_t horizon) {
  return static_cast<std::int64_t>(
      std::ceil(sampling_budget_real(alpha, horizon)));
}

/// Value MAX_i takes at the start of every epoch.
enum class MaxReset {
  kNegativeInfinity,  // MAX_i is exactly the max of the epoch's draws
  kZero,              // literal pseudocode: MAX_i floors at 0
};

struct ArmState {
  std::int64_t n = 0;           // observations behind mu_hat
  double mu_hat = 0.0;
  std::int64_t epoch = 1;       // r_i
  std::int64_t unprocessed = 0; // O_i, always < 2^epoch between updates
  std::int64_t budget = 0;      // h_i, fresh draws left this epoch
  double max_model = -std::numeric_limits<double>::infinity();
  double pending_sum = 0.0;     // sum of the unprocessed rewards
};

/// DP-TS-UCB: per-arm epochs of doubling length. Within an epoch each arm
/// draws at most phi Gaussian models from a distribution fixed at the start
/// of the epoch; once the budget is spent it reuses the largest of them.
class DpTsUcb {
 public:
  DpTsUcb(std::size_t num_arms, double alpha, std::int64_t horizon,
          MaxReset reset = MaxReset::kNegativeInfinity)
      : alpha_(alpha),
        horizon_(horizon),
        phi_(phi_budget(alpha, horizon)),
        variance_scale_(std::pow(std::log(static_cast<double>(horizon)), alpha)),
        reset_(reset),
        arms_(num_arms),
        models_(num_arms, 0.0) {
    if (num_arms == 0) throw std::invalid_argument("need at least one arm");
    for (ArmState& a : arms_) {
      a.budget = phi_;
      a.max_model = reset_value();
    }
  }

  std::size_t select(std::int64_t round, RngStream& noise) {
    const std::size_t k = arms_.size();
    if (round <= static_cast<std::int64_t>(k)) {
      return static_cast<std::size_t>(round - 1);
    }
    std::normal_distribution<double> gauss;
    for (std::size_t i = 0; i < k; ++i) {
      ArmState& a = arms_[i];
      if (a.budget >= 1) {
        const double sd = std::sqrt(variance_scale_ / static_cast<double>(a.n));
        const double theta = a.mu_hat + sd * gauss(noise);
        --a.budget;
        if (theta > a.max_model) a.max_model = theta;
        models_[i] = theta;
      } else {
        models_[i] = a.max_model;
      }
    }
    return detail::argmax_lowest(models_);
  }

  void update(std::size_t arm, double reward) {
    ArmState& a = arms_.at(arm);
    if (a.n == 0) {
      // Initialization pull.
      a.n = 1;
      a.mu_hat = reward;
      return;
    }
    ++a.unprocessed;
    a.pending_sum += reward;
    const std::int64_t epoch_length = std::int64_t{1} << a.epoch;
    if (a.unprocessed == epoch_length) {
      a.mu_hat = a.pending_sum / static_cast<double>(epoch_length);
      a.n = epoch_length;
      a.budget = phi_;
      a.max_model = reset_value();
      a.pending_sum = 0.0;
      a.unprocessed = 0;
      ++a.epoch;
    }
  }

  std::int64_t phi() const { return phi_; }
  double alpha() const { return alpha_; }
  std::int64_t horizon() const { return horizon_; }
  std::size_t num_arms() const { return arms_.size(); }
  const ArmState& arm(std::size_t i) const { return arms_.at(i); }
  /// theta_i(t) from the most recent sampling round.
  std::span<const double> models() const { return models_; }

 private:
  double reset_value() const {
    return reset_ == MaxReset::kZero ? 0.0
                                     : -std::numeric_limits<double>::infinity();
  }

  double alpha_;
  std::int64_t horizon_;
  std::int64_t phi_;
  double variance_scale_;  // ln^alpha(T)
  MaxReset reset_;
  std::vector<ArmState> arms_;
  std::vector<double> models_;
};

/// Gaussian Thompson sampling with b extra round-robin pre-pulls per arm and
/// model variance c / n_i. b = 0, c = 1 is plain TS-Gaussian.
class GaussianThompson {
 public:
  GaussianThompson(std::size_t num_arms, std::int64_t pre_pulls = 0,
                   double scale = 1.0)
      : pre_pulls_(pre_pulls),
        scale_(scale),
        counts_(num_arms, 0),
        sums_(num_arms, 0.0),
        models_(num_arms, 0.0) {
    if (num_arms == 0) throw std::invalid_argument("need at least one arm");
    if (pre_pulls < 0) throw std::invalid_argument("pre-pull count must be >= 0");
    if (!(scale > 0.0)) throw std::invalid_argument("variance scale must be > 0");
  }

  std::size_t select(std::int64_t round, RngStream& noise) {
    const auto k = static_cast<std::int64_t>(counts_.size());
    if (round <= (pre_pulls_ + 1) * k) {
      return static_cast<std::size_t>((round - 1) % k);
    }
    std::normal_distribution<double> gauss;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      const double n = static_cast<double>(counts_[i]);
      models_[i] = sums_[i] / n + std::sqrt(scale_ / n) * gauss(noise);
    }
    return detail::argmax_lowest(models_);
  }

  void update(std::size_t arm, double reward) {
    ++counts_.at(arm);
    sums_[arm] += reward;
  }

  std::int64_t count(std::size_t i) const { return counts_.at(i); }
  double mean(std::size_t i) const {
    return sums_.at(i) / static_cast<double>(counts_[i]);
  }
  std::span<const double> models() const { return models_; }

 private:
  std::int64_t pre_pulls_;
  double scale_;
  std::vector<std::int64_t> counts_;
  std::vector<double> sums_;
  std::vector<double> models_;
};

class Ucb1 {
 public:
  explicit Ucb1(std::size_t num_arms)
      : counts_(num_arms, 0), sums_(num_arms, 0.0), indices_(num_arms, 0.0) {
    if (num_arms == 0) throw std::invalid_argument("need at least one arm");
  }

  /// mu_hat + sqrt(2 ln t / n).
  static double index(double mean, std::int64_t n, double t) {
    return mean + std::sqrt(2.0 * std::log(t) / static_cast<double>(n));
  }

  std::size_t select(std::int64_t round, RngStream& /*noise*/) {
    const auto k = static_cast<std::int64_t>(counts_.size());
    if (round <= k) return static_cast<std::size_t>(round - 1);
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      indices_[i] = index(sums_[i] / static_cast<double>(counts_[i]),
                          counts_[i], static_cast<double>(round));
    }
    return detail::argmax_lowest(indices_);
  }

  void update(std::size_t arm, double reward) {
    ++counts_.at(arm);
    sums_[arm] += reward;
  }

  std::int64_t count(std::size_t i) const { return counts_.at(i); }

 private:
  std::vector<std::int64_t> counts_;
  std::vector<double> sums_;
  std::vector<double> indices_;
};

// ---------------------------------------------------------------------------
// Configuration

struct DpTsUcbParams {
  double alpha = 1.0;
  MaxReset max_reset = MaxReset::kNegativeInfinity;
};
struct TsGaussianParams {};
struct MTsGaussianParams {
  std::int64_t pre_pulls = 0;  // b
  double scale = 1.0;          // c
};
struct Ucb1Params {};

using PolicyVariant =
    std::variant<DpTsUcbParams, TsGaussianParams, MTsGaussianParams, Ucb1Params>;

struct PolicyConfig {
  PolicyVariant variant;
  std::int64_t horizon = 0;

  /// Throws std::invalid_argument / std::domain_error when the policy cannot
  /// run for `num_arms` arms over the horizon.
  void validate(std::size_t num_arms) const {
    const auto k = static_cast<std::int64_t>(num_arms);
    if (horizon < 1) throw std::invalid_argument("horizon must be positive");
    if (k < 1) throw std::invalid_argument("need at least one arm");
    if (horizon < k) {
      throw std::invalid_argument("horizon " + std::to_string(horizon) +
                                  " is shorter than the initialization phase");
    }
    if (const auto* p = std::get_if<DpTsUcbParams>(&variant)) {
      detail::check_alpha(p->alpha);
      detail::check_dp_ts_ucb_horizon(horizon);
    } else if (const auto* m = std::get_if<MTsGaussianParams>(&variant)) {
      if (m->pre_pulls < 0) {
        throw std::invalid_argument("pre-pull count b must be >= 0");
      }
      if (!(m->scale > 0.0)) {
        throw std::invalid_argument("variance scale c must be > 0");
      }
      if ((m->pre_pulls + 1) * k > horizon) {
        throw std::invalid_argument(
            "M-TS-Gaussian pre-pulls (b+1)*K = " +
            std::to_string((m->pre_pulls + 1) * k) + " exceed horizon " +
            std::to_string(horizon));
      }
    }
  }

  /// Human-readable label without commas, so it can sit in a CSV cell.
  std::string id() const {
    char buf[96];
    if (const auto* p = std::get_if<DpTsUcbParams>(&variant)) {
      std::snprintf(buf, sizeof buf, "dp-ts-ucb(alpha=%g%s)", p->alpha,
                    p->max_reset == MaxReset::kZero ? ";max0" : "");
    } else if (std::holds_alternative<TsGaussianParams>(variant)) {
      std::snprintf(buf, sizeof buf, "ts-gaussian");
    } else if (const auto* m = std::get_if<MTsGaussianParams>(&variant)) {
      std::snprintf(buf, sizeof buf, "m-ts-gaussian(b=%lld;c=%g)",
                    static_cast<long long>(m->pre_pulls), m->scale);
    } else {
      std::snprintf(buf, sizeof buf, "ucb1");
    }
    return buf;
  }

  /// alpha for DP-TS-UCB, empty otherwise.
  std::optional<double> alpha() const {
    if (const auto* p = std::get_if<DpTsUcbParams>(&variant)) return p->alpha;
    return std::nullopt;
  }

  /// Worst-case GDP parameter over the horizon. UCB1 is deterministic given
  /// the data and carries no GDP guarantee, reported as nullopt.
  std::optional<GdpParam> eta() const {
    if (const auto* p = std::get_if<DpTsUcbParams>(&variant)) {
      return eta_dp_ts_ucb(p->alpha, horizon);
    }
    if (std::holds_alternative<TsGaussianParams>(variant)) {
      return eta_ts_gaussian(horizon);
    }
    if (const auto* m = std::get_if<MTsGaussianParams>(&variant)) {
      return eta_m_ts_gaussian(horizon, m->pre_pulls, m->scale);
    }
    return std::nullopt;
  }
};

/// Runtime-selected policy built from a PolicyConfig.
class Policy {
 public:
  Policy(const PolicyConfig& config, std::size_t num_arms)
      : impl_(build(config, num_arms)) {}

  std::size_t select(std::int64_t round, RngStream& noise) {
    return std::visit([&](auto& p) -> std::size_t { return p.select(round, noise); },
                      impl_);
  }
  void update(std::size_t arm, double reward) {
    std::visit([&](auto& p) { p.update(arm, reward); }, impl_);
  }

 private:
  using Impl = std::variant<DpTsUcb, GaussianThompson, Ucb1>;

  static Impl build(const PolicyConfig& config, std::size_t num_arms) {
    config.validate(num_arms);
    if (const auto* p = std::get_if<DpTsUcbParams>(&config.variant)) {
      return DpTsUcb(num_arms, p->alpha, config.horizon, p->max_reset);
    }
    if (std::holds_alternative<TsGaussianParams>(config.variant)) {
      return GaussianThompson(num_arms);
    }
    if (const auto* m = std::get_if<MTsGaussianParams>(&config.variant)) {
      return GaussianThompson(num_arms, m->pre_pulls, m->scale);
    }
    return Ucb1(num_arms);
  }

  Impl impl_;
};

}  // namespace dpbandit
