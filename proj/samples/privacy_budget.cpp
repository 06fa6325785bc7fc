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


// Prints the GDP parameter of DP-TS-UCB across alpha together with the
// (epsilon, delta) pairs it implies, next to plain Gaussian Thompson sampling.
//
//   privacy_budget [T]

#include <cstdio>
#include <cstdlib>

#include "dpbandit/policies.hpp"
#include "dpbandit/privacy.hpp"

int main(int argc, char** argv) {
  const std::int64_t horizon = argc > 1 ? std::atoll(argv[1]) : 1000000;
  if (horizon < dpbandit::kMinDpTsUcbHorizon) {
    std::fprintf(stderr, "T must be at least %lld\n",
                 static_cast<long long>(dpbandit::kMinDpTsUcbHorizon));
    return 2;
  }
  std::printf("T = %lld\n\n", static_cast<long long>(horizon));
  std::printf("%-8s %10s %12s %12s %12s\n", "alpha", "phi", "eta", "delta(1)",
              "delta(2)");
  for (double alpha = 0.0; alpha <= 1.0; alpha += 0.25) {
    const dpbandit::GdpParam eta = dpbandit::eta_dp_ts_ucb(alpha, horizon);
    std::printf("%-8.2f %10lld %12.5f %12.4e %12.4e\n", alpha,
                static_cast<long long>(dpbandit::phi_budget(alpha, horizon)), eta.eta(),
                dpbandit::gdp_to_dp(eta, 1.0).delta, dpbandit::gdp_to_dp(eta, 2.0).delta);
  }
  const dpbandit::GdpParam ts = dpbandit::eta_ts_gaussian(horizon);
  std::printf("\nts-gaussian: eta = %.3f, delta(2) = %.6f\n", ts.eta(),
              dpbandit::gdp_to_dp(ts, 2.0).delta);
  const double c = dpbandit::match_c(1.0, horizon, 2000);
  std::printf("m-ts-gaussian with b = 2000 needs c = %.3f to match alpha = 1\n", c);
  return 0;
}
