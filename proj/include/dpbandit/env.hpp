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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dpbandit/rng.hpp"

namespace dpbandit {

enum class RewardFamily { kBernoulli };

/// A stochastic bandit with fixed reward distributions supported on [0,1].
/// Ties for the best mean are allowed.
class BanditInstance {
 public:
  explicit BanditInstance(std::vector<double> means,
                          RewardFamily family = RewardFamily::kBernoulli)
      : means_(std::move(means)), family_(family) {
    if (means_.empty()) {
      throw std::invalid_argument("bandit instance needs at least one arm");
    }
    for (double m : means_) {
      if (!(m >= 0.0 && m <= 1.0)) {
        throw std::invalid_argument("arm mean " + std::to_string(m) +
                                    " is outside [0, 1]");
      }
    }
  }

  std::size_t num_arms() const { return means_.size(); }
  const std::vector<double>& means() const { return means_; }
  RewardFamily family() const { return family_; }

  double optimal_mean() const {
    return *std::max_element(means_.begin(), means_.end());
  }

  /// Sub-optimality gaps max_j mu_j - mu_i.
  std::vector<double> gaps() const {
    const double best = optimal_mean();
    std::vector<double> out;
    out.reserve(means_.size());
    for (double m : means_) out.push_back(best - m);
    return out;
  }

  bool operator==(const BanditInstance&) const = default;

 private:
  std::vector<double> means_;
  RewardFamily family_;
};

/// Draws the reward of `arm` from the instance using the given stream.
inline double sample_reward(const BanditInstance& instance, std::size_t arm,
                            RngStream& stream) {
  if (arm >= instance.num_arms()) {
    throw std::out_of_range("arm index " + std::to_string(arm) +
                            " out of range for " +
                            std::to_string(instance.num_arms()) + " arms");
  }
  switch (instance.family()) {
    case RewardFamily::kBernoulli:
      return stream.open_uniform() < instance.means()[arm] ? 1.0 : 0.0;
  }
  return 0.0;
}

inline std::vector<double> gaps(const BanditInstance& instance) {
  return instance.gaps();
}

/// The five-arm Bernoulli instance used throughout the experiments.
inline BanditInstance reference_instance() {
  return BanditInstance({0.95, 0.75, 0.55, 0.35, 0.15});
}

}  // namespace dpbandit
