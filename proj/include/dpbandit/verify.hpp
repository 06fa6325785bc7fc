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

// Monte-Carlo and numerical checks of the probabilistic facts behind
// DP-TS-UCB: optimism of the max of phi Gaussian models, the inverse
// anti-concentration expectation of Gaussian TS, Gaussian tail bounds,
// the log inequality for T > e^3 and Hoeffding's inequality.
//
// Every Monte-Carlo trial draws from its own substream keyed by
// (seed, check, trial), and trials are reduced in fixed-size blocks in block
// order, so reports are identical for any worker count.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpbandit/normal.hpp"
#include "dpbandit/parallel.hpp"
#include "dpbandit/policies.hpp"
#include "dpbandit/privacy.hpp"
#include "dpbandit/rng.hpp"

namespace dpbandit {

inline constexpr std::int64_t kMinMonteCarloTrials = 10'000;

enum class BoundDirection { kAtMost, kAtLeast };

struct McReport {
  std::string name;
  double estimate = 0.0;
  std::int64_t trials = 0;  // 0 for purely numerical checks
  double mc_std_err = 0.0;
  double bound = 0.0;
  BoundDirection direction = BoundDirection::kAtMost;
  bool passed = false;
};

namespace detail {

inline bool within_bound(double estimate, double std_err, double bound,
                         BoundDirection dir) {
  return dir == BoundDirection::kAtMost ? estimate <= bound + 3.0 * std_err
                                        : estimate >= bound - 3.0 * std_err;
}

inline void check_trials(std::int64_t trials) {
  if (trials < kMinMonteCarloTrials) {
    throw std::invalid_argument("Monte-Carlo checks need at least 10^4 trials, got " +
                                std::to_string(trials));
  }
}

struct SampleMoments {
  double mean = 0.0;
  double std_err = 0.0;
};

/// Mean and standard error of sample(stream) over `trials` independent
/// substreams.
template <typename Sample>
SampleMoments monte_carlo(std::int64_t trials, std::uint64_t key,
                          unsigned workers, Sample&& sample) {
  constexpr std::int64_t kBlock = 4096;
  const auto blocks = static_cast<std::size_t>((trials + kBlock - 1) / kBlock);
  std::vector<double> sums(blocks, 0.0);
  std::vector<double> squares(blocks, 0.0);
  parallel_for(blocks, workers, [&](std::size_t b) {
    const std::int64_t begin = static_cast<std::int64_t>(b) * kBlock;
    const std::int64_t end = std::min(trials, begin + kBlock);
    double s = 0.0;
    double sq = 0.0;
    for (std::int64_t i = begin; i < end; ++i) {
      RngStream stream(key, static_cast<std::uint64_t>(i), StreamPurpose::kVerify);
      const double v = sample(stream);
      s += v;
      sq += v * v;
    }
    sums[b] = s;
    squares[b] = sq;
  });
  double s = 0.0;
  double sq = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    s += sums[b];
    sq += squares[b];
  }
  const double n = static_cast<double>(trials);
  const double mean = s / n;
  const double var = std::max(0.0, (sq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

inline double bernoulli_mean(std::int64_t s, double mu, RngStream& stream) {
  std::binomial_distribution<std::int64_t> binom(s, mu);
  return static_cast<double>(binom(stream)) / static_cast<double>(s);
}

enum CheckSalt : std::uint64_t {
  kSaltBoost = 11,
  kSaltInverse = 12,
  kSaltHoeffding = 13,
};

inline std::string fmt_params(const char* fmt, auto... args) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

}  // namespace detail

/// A draw of max_{h <= count} N(mean, sd^2) by inverting the CDF of the
/// maximum, Phi((x - mean)/sd)^count. Costs one uniform regardless of count.
inline double sample_gaussian_max(double mean, double sd, std::int64_t count,
                                  RngStream& stream) {
  // P{max <= x} = u  <=>  Phi(z) = u^{1/count}; the upper-tail mass
  // 1 - u^{1/count} is formed with expm1 so it stays accurate for large count.
  const double u = stream.open_uniform();
  const double upper_tail = -std::expm1(std::log(u) / static_cast<double>(count));
  return mean - sd * std_normal_quantile(upper_tail);
}

/// Frequency of max_{h <= phi} theta^(h) < mu, where each trial draws
/// mu_hat from s Bernoulli(mu) observations and phi = phi_budget(alpha, T)
/// models from N(mu_hat, ln^alpha(T) / s). Passes when the frequency is at
/// most 3/T plus three standard errors.
inline McReport mc_boost_lemma(double alpha, std::int64_t horizon, std::int64_t s,
                               double mu, std::int64_t trials,
                               std::uint64_t seed = 0,
                               unsigned workers = default_workers()) {
  detail::check_trials(trials);
  if (s < 1) throw std::invalid_argument("observation count s must be >= 1");
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::domain_error("mu must lie in [0, 1]");
  const std::int64_t phi = phi_budget(alpha, horizon);
  const double sd = std::sqrt(std::pow(std::log(static_cast<double>(horizon)), alpha) /
                              static_cast<double>(s));
  const std::uint64_t key =
      derive_key(seed, detail::kSaltBoost,
                 static_cast<std::uint64_t>(horizon) * 1000003u +
                     static_cast<std::uint64_t>(s) * 7919u +
                     static_cast<std::uint64_t>(alpha * 1e6));
  const auto m = detail::monte_carlo(trials, key, workers, [&](RngStream& rng) {
    const double mu_hat = detail::bernoulli_mean(s, mu, rng);
    return sample_gaussian_max(mu_hat, sd, phi, rng) < mu ? 1.0 : 0.0;
  });
  McReport r;
  r.name = detail::fmt_params("boost-lemma alpha=%g T=%lld s=%lld mu=%g", alpha,
                              static_cast<long long>(horizon),
                              static_cast<long long>(s), mu);
  r.estimate = m.mean;
  r.trials = trials;
  r.mc_std_err = m.std_err;
  r.bound = 3.0 / static_cast<double>(horizon);
  r.direction = BoundDirection::kAtMost;
  r.passed = detail::within_bound(r.estimate, r.mc_std_err, r.bound, r.direction);
  return r;
}

/// Smallest integer s with s >= 4 (1 + sqrt 2)^2 ln(T gap^2) ln^alpha(T) / gap^2.
inline std::int64_t inverse_prob_shift_threshold(double alpha, std::int64_t horizon,
                                                 double gap) {
  const double t = static_cast<double>(horizon);
  const double c = (1.0 + std::numbers::sqrt2) * (1.0 + std::numbers::sqrt2);
  return static_cast<std::int64_t>(std::ceil(
      4.0 * c * std::log(t * gap * gap) * std::pow(std::log(t), alpha) /
      (gap * gap)));
}

/// P{theta > target | mu_hat} for theta ~ N(mu_hat, sd^2), in closed form.
inline double gaussian_exceed_prob(double mu_hat, double sd, double target) {
  return std_normal_cdf((mu_hat - target) / sd);
}

/// Sample mean of 1/P - 1 with P = P{theta_{1,s} > target | mu_hat}, where
/// mu_hat is the mean of s Bernoulli(mu1) draws, theta ~ N(mu_hat,
/// ln^alpha(T)/s) and target is mu1 (bound 12.34) or mu1 - gap/2 when
/// `shifted` (bound 72 / (T gap^2)). P is evaluated analytically; an
/// empirical inner estimate would make 1/P unusable.
inline McReport mc_inverse_prob(double alpha, std::int64_t horizon, std::int64_t s,
                                double mu1, double gap, std::int64_t trials,
                                bool shifted, std::uint64_t seed = 0,
                                unsigned workers = default_workers()) {
  detail::check_trials(trials);
  detail::check_alpha(alpha);
  if (s < 1) throw std::invalid_argument("observation count s must be >= 1");
  if (!(mu1 >= 0.0 && mu1 <= 1.0)) throw std::domain_error("mu1 must lie in [0, 1]");
  const double t = static_cast<double>(horizon);
  if (!(gap > 0.0) || !(t * gap * gap > std::numbers::e)) {
    throw std::domain_error("inverse-probability check needs T * gap^2 > e");
  }
  const double sd = std::sqrt(std::pow(std::log(t), alpha) / static_cast<double>(s));
  const double target = shifted ? mu1 - 0.5 * gap : mu1;
  const std::uint64_t key = derive_key(
      seed, detail::kSaltInverse,
      static_cast<std::uint64_t>(horizon) * 1000003u +
          static_cast<std::uint64_t>(s) * 7919u +
          static_cast<std::uint64_t>(alpha * 1e6) + (shifted ? 1u : 0u));
  const auto m = detail::monte_carlo(trials, key, workers, [&](RngStream& rng) {
    const double mu_hat = detail::bernoulli_mean(s, mu1, rng);
    return 1.0 / gaussian_exceed_prob(mu_hat, sd, target) - 1.0;
  });
  McReport r;
  r.name = detail::fmt_params(
      "inverse-prob%s alpha=%g T=%lld s=%lld mu1=%g gap=%g",
      shifted ? "-shifted" : "", alpha, static_cast<long long>(horizon),
      static_cast<long long>(s), mu1, gap);
  r.estimate = m.mean;
  r.trials = trials;
  r.mc_std_err = m.std_err;
  r.bound = shifted ? 72.0 / (t * gap * gap) : 12.34;
  r.direction = BoundDirection::kAtMost;
  r.passed = detail::within_bound(r.estimate, r.mc_std_err, r.bound, r.direction);
  return r;
}

/// For each z > 0, checks
///   z / (z^2 + 1) e^{-z^2/2} / sqrt(2 pi) <= 1 - Phi(z) <= e^{-z^2/2} / 2
/// exactly (no sampling). Emits a lower-bound and an upper-bound report per z.
inline std::vector<McReport> check_gaussian_tail_facts(std::span<const double> z_grid) {
  std::vector<McReport> out;
  for (double z : z_grid) {
    if (!(z > 0.0)) throw std::domain_error("tail bounds need z > 0");
    const double tail = std_normal_cdf(-z);
    const double envelope = std::exp(-0.5 * z * z);
    const double lower = z / (z * z + 1.0) * envelope / std::sqrt(2.0 * std::numbers::pi);
    const double upper = 0.5 * envelope;
    McReport lo{detail::fmt_params("gaussian-anti-concentration z=%g", z), tail, 0,
                0.0, lower, BoundDirection::kAtLeast, tail >= lower};
    McReport hi{detail::fmt_params("gaussian-concentration z=%g", z), tail, 0, 0.0,
                upper, BoundDirection::kAtMost, tail <= upper};
    out.push_back(lo);
    out.push_back(hi);
  }
  return out;
}

/// ln^{1-alpha}(T) <= (1 - alpha) ln(T) + 1 at every grid point; needs T > e^3.
inline bool check_log_inequality(std::span<const double> horizons,
                                 std::span<const double> alphas) {
  for (double t : horizons) {
    if (!(t > std::exp(3.0))) {
      throw std::domain_error("log inequality requires T > e^3");
    }
  }
  bool ok = true;
  for (double t : horizons) {
    const double l = std::log(t);
    for (double a : alphas) {
      detail::check_alpha(a);
      ok = ok && std::pow(l, 1.0 - a) <= (1.0 - a) * l + 1.0;
    }
  }
  return ok;
}

/// Frequency of |mean of n Bernoulli(mu) - mu| >= a against 2 e^{-2 n a^2}.
inline McReport mc_hoeffding(std::int64_t n, double mu, double a,
                             std::int64_t trials, std::uint64_t seed = 0,
                             unsigned workers = default_workers()) {
  detail::check_trials(trials);
  if (n < 1 || !(a > 0.0)) throw std::domain_error("Hoeffding check needs n >= 1, a > 0");
  const std::uint64_t key = derive_key(
      seed, detail::kSaltHoeffding,
      static_cast<std::uint64_t>(n) * 1000003u + static_cast<std::uint64_t>(mu * 1e6) +
          static_cast<std::uint64_t>(a * 1e9));
  const auto m = detail::monte_carlo(trials, key, workers, [&](RngStream& rng) {
    return std::fabs(detail::bernoulli_mean(n, mu, rng) - mu) >= a ? 1.0 : 0.0;
  });
  McReport r;
  r.name = detail::fmt_params("hoeffding n=%lld mu=%g a=%g",
                              static_cast<long long>(n), mu, a);
  r.estimate = m.mean;
  r.trials = trials;
  r.mc_std_err = m.std_err;
  r.bound = 2.0 * std::exp(-2.0 * static_cast<double>(n) * a * a);
  r.direction = BoundDirection::kAtMost;
  r.passed = detail::within_bound(r.estimate, r.mc_std_err, r.bound, r.direction);
  return r;
}

// ---------------------------------------------------------------------------
// Default battery

enum class CheckGroup { kBoostLemma, kInverseProb, kGaussianFacts, kLogInequality, kHoeffding };

inline const std::vector<CheckGroup>& all_check_groups() {
  static const std::vector<CheckGroup> groups{
      CheckGroup::kBoostLemma, CheckGroup::kInverseProb, CheckGroup::kGaussianFacts,
      CheckGroup::kLogInequality, CheckGroup::kHoeffding};
  return groups;
}

inline const char* check_group_name(CheckGroup g) {
  switch (g) {
    case CheckGroup::kBoostLemma: return "boost-lemma";
    case CheckGroup::kInverseProb: return "inverse-prob";
    case CheckGroup::kGaussianFacts: return "gaussian-facts";
    case CheckGroup::kLogInequality: return "log-inequality";
    case CheckGroup::kHoeffding: return "hoeffding";
  }
  return "";
}

inline bool uses_randomness(CheckGroup g) {
  return g == CheckGroup::kBoostLemma || g == CheckGroup::kInverseProb ||
         g == CheckGroup::kHoeffding;
}

/// Default grids:
///   boost-lemma     alpha in {0,1} x T in {1e3,1e4} x s in {1,4,16}, mu = 0.95
///   inverse-prob    alpha = 0, T = 100, gap = 0.4, s in {1,2,8}, target mu1;
///                   T = 1e4, gap = 0.4 at the shift threshold, alpha in {0,1}
///   gaussian-facts  z in {0.1, 0.5, 1, 2, 3, 5}
///   log-inequality  T in {25, 1e3, 1e6} x alpha in {0, .25, .5, .75, 1}
///   hoeffding       n in {10, 100} x mu in {0.5, 0.95} x a in {0.1, 0.2}
inline std::vector<McReport> run_battery(std::span<const CheckGroup> groups,
                                         std::int64_t trials, std::uint64_t seed,
                                         unsigned workers = default_workers()) {
  std::vector<McReport> out;
  for (CheckGroup g : groups) {
    switch (g) {
      case CheckGroup::kBoostLemma:
        for (double alpha : {0.0, 1.0}) {
          for (std::int64_t t : {1000, 10000}) {
            for (std::int64_t s : {1, 4, 16}) {
              out.push_back(mc_boost_lemma(alpha, t, s, 0.95, trials, seed, workers));
            }
          }
        }
        break;
      case CheckGroup::kInverseProb:
        for (std::int64_t s : {1, 2, 8}) {
          out.push_back(mc_inverse_prob(0.0, 100, s, 0.95, 0.4, trials, false, seed,
                                        workers));
        }
        for (double alpha : {0.0, 1.0}) {
          const std::int64_t s = inverse_prob_shift_threshold(alpha, 10000, 0.4);
          out.push_back(mc_inverse_prob(alpha, 10000, s, 0.95, 0.4, trials, true,
                                        seed, workers));
        }
        break;
      case CheckGroup::kGaussianFacts: {
        const std::vector<double> z{0.1, 0.5, 1.0, 2.0, 3.0, 5.0};
        for (McReport& r : check_gaussian_tail_facts(z)) out.push_back(std::move(r));
        break;
      }
      case CheckGroup::kLogInequality: {
        const std::vector<double> ts{25.0, 1e3, 1e6};
        const std::vector<double> alphas{0.0, 0.25, 0.5, 0.75, 1.0};
        McReport r;
        r.name = "log-inequality T in {25,1e3,1e6} x alpha in {0..1}";
        r.passed = check_log_inequality(ts, alphas);
        r.estimate = r.passed ? 1.0 : 0.0;
        r.bound = 1.0;
        r.direction = BoundDirection::kAtLeast;
        out.push_back(r);
        break;
      }
      case CheckGroup::kHoeffding:
        for (std::int64_t n : {10, 100}) {
          for (double mu : {0.5, 0.95}) {
            for (double a : {0.1, 0.2}) {
              out.push_back(mc_hoeffding(n, mu, a, trials, seed, workers));
            }
          }
        }
        break;
    }
  }
  return out;
}

}  // namespace dpbandit
