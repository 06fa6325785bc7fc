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

// Replays DP-TS-UCB against a bandit while keeping its own bookkeeping of
// every reward and model draw, and counts violations of the epoch rules.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dpbandit/env.hpp"
#include "dpbandit/policies.hpp"
#include "dpbandit/rng.hpp"

namespace dpbandit::testing {

struct EpochAudit {
  std::int64_t epochs_completed = 0;
  std::int64_t budget_rounds = 0;  // rounds where an arm reused its max
  std::int64_t reuse_violations = 0;
  std::int64_t mean_violations = 0;
  std::int64_t length_violations = 0;
  std::int64_t draw_violations = 0;
  std::int64_t reward_reuse_violations = 0;
  std::int64_t pull_total = 0;
  std::string first_failure;

  std::int64_t violations() const {
    return reuse_violations + mean_violations + length_violations + draw_violations +
           reward_reuse_violations;
  }
};

inline EpochAudit audit_dp_ts_ucb(const BanditInstance& instance, double alpha,
                                  std::int64_t horizon, std::uint64_t key) {
  const std::size_t k = instance.num_arms();
  DpTsUcb policy(k, alpha, horizon);
  EpochAudit audit;
  auto fail = [&](std::int64_t& counter, const std::string& what) {
    ++counter;
    if (audit.first_failure.empty()) audit.first_failure = what;
  };

  struct ArmLog {
    std::vector<double> rewards;        // post-initialization rewards, in order
    std::vector<int> uses;              // times each reward entered a mean
    std::size_t epoch_start = 0;        // index of the first reward of the epoch
    std::vector<double> epoch_draws;    // fresh models drawn this epoch
    std::int64_t epoch_rounds = 0;      // sampling rounds since the epoch began
  };
  std::vector<ArmLog> logs(k);
  std::vector<std::int64_t> pulls(k, 0);

  for (std::int64_t t = 1; t <= horizon; ++t) {
    std::vector<std::int64_t> budget_before(k);
    for (std::size_t i = 0; i < k; ++i) budget_before[i] = policy.arm(i).budget;

    RngStream noise(key, static_cast<std::uint64_t>(t), StreamPurpose::kPolicyNoise);
    const std::size_t arm = policy.select(t, noise);

    if (t > static_cast<std::int64_t>(k)) {
      for (std::size_t i = 0; i < k; ++i) {
        ArmLog& log = logs[i];
        ++log.epoch_rounds;
        const double theta = policy.models()[i];
        if (budget_before[i] >= 1) {
          if (policy.arm(i).budget != budget_before[i] - 1) {
            fail(audit.draw_violations, "budget not decremented by a fresh draw");
          }
          log.epoch_draws.push_back(theta);
        } else {
          ++audit.budget_rounds;
          const double expected =
              *std::max_element(log.epoch_draws.begin(), log.epoch_draws.end());
          if (theta != expected) {
            fail(audit.reuse_violations, "reused model differs from epoch max");
          }
        }
        const auto fresh = static_cast<std::int64_t>(log.epoch_draws.size());
        if (fresh > policy.phi() ||
            fresh != std::min<std::int64_t>(policy.phi(), log.epoch_rounds)) {
          fail(audit.draw_violations, "fresh draw count differs from min(phi, rounds)");
        }
      }
    }

    RngStream reward_stream(key, static_cast<std::uint64_t>(t), StreamPurpose::kReward);
    const double reward = sample_reward(instance, arm, reward_stream);
    const std::int64_t epoch_before = policy.arm(arm).epoch;
    const bool initial = policy.arm(arm).n == 0;
    policy.update(arm, reward);
    ++pulls[arm];

    ArmLog& log = logs[arm];
    if (initial) continue;
    log.rewards.push_back(reward);
    log.uses.push_back(0);
    const ArmState& st = policy.arm(arm);
    if (st.epoch == epoch_before + 1) {
      ++audit.epochs_completed;
      const std::size_t length = log.rewards.size() - log.epoch_start;
      const std::size_t expected_length = std::size_t{1} << epoch_before;
      if (length != expected_length || st.n != static_cast<std::int64_t>(length)) {
        fail(audit.length_violations, "epoch length is not 2^k");
      }
      double sum = 0.0;
      for (std::size_t j = log.epoch_start; j < log.rewards.size(); ++j) {
        sum += log.rewards[j];
        if (++log.uses[j] > 1) fail(audit.reward_reuse_violations, "reward reused");
      }
      if (std::fabs(sum / static_cast<double>(length) - st.mu_hat) > 1e-12) {
        fail(audit.mean_violations, "empirical mean is not the epoch average");
      }
      if (st.budget != policy.phi() || st.unprocessed != 0) {
        fail(audit.draw_violations, "budget/unprocessed not reset at epoch end");
      }
      log.epoch_start = log.rewards.size();
      log.epoch_draws.clear();
      log.epoch_rounds = 0;
    } else if (st.epoch != epoch_before) {
      fail(audit.length_violations, "epoch index jumped");
    }
    if (st.unprocessed >= (std::int64_t{1} << st.epoch)) {
      fail(audit.length_violations, "unprocessed count reached 2^r");
    }
  }
  for (std::int64_t p : pulls) audit.pull_total += p;
  return audit;
}

}  // namespace dpbandit::testing
