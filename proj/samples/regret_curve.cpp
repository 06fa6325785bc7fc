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


// Runs DP-TS-UCB, TS-Gaussian and UCB1 on the five-arm Bernoulli instance and
// prints mean cumulative regret at each checkpoint.
//
//   regret_curve [T] [runs]

#include <cstdio>
#include <cstdlib>
#include <vector>

#include "dpbandit/harness.hpp"

int main(int argc, char** argv) {
  using namespace dpbandit;
  const std::int64_t horizon = argc > 1 ? std::atoll(argv[1]) : 20000;
  const std::int64_t runs = argc > 2 ? std::atoll(argv[2]) : 10;

  ExperimentSpec spec{reference_instance(),
                      {PolicyConfig{DpTsUcbParams{1.0}, horizon},
                       PolicyConfig{DpTsUcbParams{0.0}, horizon},
                       PolicyConfig{TsGaussianParams{}, horizon},
                       PolicyConfig{Ucb1Params{}, horizon}},
                      horizon,
                      runs,
                      2026,
                      default_checkpoints(horizon, 5)};
  ExperimentResult res;
  try {
    res = run_experiment(spec);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }

  std::printf("%10s", "t");
  for (const AggregateResult& a : res.aggregates) std::printf(" %22s", a.policy_id.c_str());
  std::printf("\n");
  for (std::size_t c = 0; c < spec.checkpoints.size(); ++c) {
    std::printf("%10lld", static_cast<long long>(spec.checkpoints[c]));
    for (const AggregateResult& a : res.aggregates) {
      std::printf(" %13.1f +- %6.1f", a.points[c].mean, a.points[c].std_dev);
    }
    std::printf("\n");
  }
  return 0;
}
