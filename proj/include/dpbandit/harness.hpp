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

// Simulation driver: select -> observe -> update loop with pseudo-regret
// checkpoints, and multi-run experiments whose results do not depend on how
// runs are scheduled across worker threads.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpbandit/env.hpp"
#include "dpbandit/parallel.hpp"
#include "dpbandit/policies.hpp"
#include "dpbandit/privacy.hpp"
#include "dpbandit/rng.hpp"

namespace dpbandit {

/// Checkpoint grid {K} U {ceil(T / 2^k) : k >= 0} U {T}, sorted, restricted
/// to [K, T].
inline std::vector<std::int64_t> default_checkpoints(std::int64_t horizon,
                                                     std::size_t num_arms) {
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  const std::int64_t k =
      std::min<std::int64_t>(static_cast<std::int64_t>(num_arms), horizon);
  std::vector<std::int64_t> points{k, horizon};
  for (std::int64_t div = 1; div <= horizon; div *= 2) {
    const std::int64_t c = (horizon + div - 1) / div;
    if (c <= k) break;
    points.push_back(c);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

struct ExperimentSpec {
  BanditInstance instance;
  std::vector<PolicyConfig> policies;
  std::int64_t horizon = 0;
  std::int64_t n_runs = 1;
  std::uint64_t base_seed = 0;
  std::vector<std::int64_t> checkpoints;

  void validate() const {
    if (horizon < 1) throw std::invalid_argument("horizon must be positive");
    if (n_runs < 1) throw std::invalid_argument("run count must be positive");
    if (checkpoints.empty()) throw std::invalid_argument("no checkpoints");
    if (checkpoints.front() < 1) {
      throw std::invalid_argument("checkpoints must be >= 1");
    }
    for (std::size_t i = 1; i < checkpoints.size(); ++i) {
      if (checkpoints[i] <= checkpoints[i - 1]) {
        throw std::invalid_argument("checkpoints must be strictly increasing");
      }
    }
    if (checkpoints.back() != horizon) {
      throw std::invalid_argument("last checkpoint must equal the horizon");
    }
    for (const PolicyConfig& p : policies) {
      if (p.horizon != horizon) {
        throw std::invalid_argument("policy " + p.id() +
                                    " configured for a different horizon");
      }
      p.validate(instance.num_arms());
    }
  }
};

struct RegretPoint {
  std::int64_t checkpoint = 0;
  double regret = 0.0;
  bool operator==(const RegretPoint&) const = default;
};

struct RunResult {
  std::string policy_id;
  std::size_t policy_index = 0;
  std::int64_t run_index = 0;
  std::uint64_t seed = 0;  // root key of this run's streams
  std::vector<RegretPoint> regret_trace;
  std::vector<std::int64_t> pull_counts;
  std::optional<GdpParam> eta;

  bool operator==(const RunResult&) const = default;
};

struct AggregatePoint {
  std::int64_t checkpoint = 0;
  double mean = 0.0;
  double std_dev = 0.0;
};

struct AggregateResult {
  std::string policy_id;
  std::size_t policy_index = 0;
  std::vector<AggregatePoint> points;
  std::int64_t n_runs = 0;
};

struct ExperimentResult {
  std::vector<RunResult> runs;  // policy-major, then run index
  std::vector<AggregateResult> aggregates;
};

/// Plays `policy` for `horizon` rounds. Round t draws its reward from stream
/// (run_key, t, kReward) and hands the policy stream (run_key, t,
/// kPolicyNoise). Pseudo-regret is accumulated from the instance's true gaps.
template <BanditPolicy P>
RunResult simulate(const BanditInstance& instance, P& policy,
                   std::int64_t horizon,
                   const std::vector<std::int64_t>& checkpoints,
                   std::uint64_t run_key) {
  const std::vector<double> gap = instance.gaps();
  RunResult result;
  result.seed = run_key;
  result.pull_counts.assign(instance.num_arms(), 0);
  result.regret_trace.reserve(checkpoints.size());
  double regret = 0.0;
  auto next_checkpoint = checkpoints.begin();
  for (std::int64_t t = 1; t <= horizon; ++t) {
    RngStream noise(run_key, static_cast<std::uint64_t>(t),
                    StreamPurpose::kPolicyNoise);
    const std::size_t arm = policy.select(t, noise);
    RngStream reward_stream(run_key, static_cast<std::uint64_t>(t),
                            StreamPurpose::kReward);
    const double reward = sample_reward(instance, arm, reward_stream);
    policy.update(arm, reward);
    ++result.pull_counts[arm];
    regret += gap[arm];
    while (next_checkpoint != checkpoints.end() && *next_checkpoint == t) {
      result.regret_trace.push_back({t, regret});
      ++next_checkpoint;
    }
  }
  return result;
}

inline std::uint64_t run_key(std::uint64_t base_seed, std::size_t policy_index,
                             std::int64_t run_index) {
  return derive_key(base_seed, policy_index,
                    static_cast<std::uint64_t>(run_index));
}

/// One run of the policy at position `policy_index` of the spec.
inline RunResult run_single(const ExperimentSpec& spec,
                            std::size_t policy_index, std::int64_t run_index) {
  const PolicyConfig& config = spec.policies.at(policy_index);
  Policy policy(config, spec.instance.num_arms());
  RunResult result =
      simulate(spec.instance, policy, spec.horizon, spec.checkpoints,
               run_key(spec.base_seed, policy_index, run_index));
  result.policy_id = config.id();
  result.policy_index = policy_index;
  result.run_index = run_index;
  result.eta = config.eta();
  return result;
}

/// Mean and sample (n - 1) standard deviation per checkpoint. All runs must
/// share the checkpoint grid.
inline AggregateResult aggregate(const std::vector<const RunResult*>& runs) {
  AggregateResult out;
  if (runs.empty()) return out;
  out.policy_id = runs.front()->policy_id;
  out.policy_index = runs.front()->policy_index;
  out.n_runs = static_cast<std::int64_t>(runs.size());
  const std::size_t points = runs.front()->regret_trace.size();
  const double n = static_cast<double>(runs.size());
  for (std::size_t c = 0; c < points; ++c) {
    double sum = 0.0;
    for (const RunResult* r : runs) sum += r->regret_trace.at(c).regret;
    const double mean = sum / n;
    double sq = 0.0;
    for (const RunResult* r : runs) {
      const double d = r->regret_trace[c].regret - mean;
      sq += d * d;
    }
    const double sd = runs.size() > 1 ? std::sqrt(sq / (n - 1.0)) : 0.0;
    out.points.push_back({runs.front()->regret_trace[c].checkpoint, mean, sd});
  }
  return out;
}

/// Runs n_runs x |policies| independent simulations on up to `workers`
/// threads. Results are stored by (policy, run) position, so the output is
/// identical for any worker count.
inline ExperimentResult run_experiment(const ExperimentSpec& spec,
                                       unsigned workers = default_workers()) {
  spec.validate();
  const std::size_t total =
      spec.policies.size() * static_cast<std::size_t>(spec.n_runs);
  ExperimentResult out;
  out.runs.resize(total);

  parallel_for(total, workers, [&](std::size_t job) {
    const std::size_t p = job / static_cast<std::size_t>(spec.n_runs);
    const auto r =
        static_cast<std::int64_t>(job % static_cast<std::size_t>(spec.n_runs));
    out.runs[job] = run_single(spec, p, r);
  });

  for (std::size_t p = 0; p < spec.policies.size(); ++p) {
    std::vector<const RunResult*> group;
    for (std::int64_t r = 0; r < spec.n_runs; ++r) {
      group.push_back(&out.runs[p * static_cast<std::size_t>(spec.n_runs) +
                                static_cast<std::size_t>(r)]);
    }
    out.aggregates.push_back(aggregate(group));
  }
  return out;
}

}  // namespace dpbandit
