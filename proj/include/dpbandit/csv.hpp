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

// CSV persistence. Floating-point cells use 17 significant digits so every
// value round-trips exactly.
//
//   per_run.csv    policy,seed,checkpoint,regret
//   aggregate.csv  policy,checkpoint,mean_regret,std_regret,n_runs
//   privacy.csv    policy,alpha,T,eta,epsilon,delta

#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpbandit/harness.hpp"
#include "dpbandit/policies.hpp"
#include "dpbandit/privacy.hpp"

namespace dpbandit {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr char kPerRunHeader[] = "policy,seed,checkpoint,regret";
inline constexpr char kAggregateHeader[] =
    "policy,checkpoint,mean_regret,std_regret,n_runs";
inline constexpr char kPrivacyHeader[] = "policy,alpha,T,eta,epsilon,delta";

inline std::string format_double(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

struct PrivacyRow {
  std::string policy;
  std::optional<double> alpha;
  std::int64_t horizon = 0;
  double eta = 0.0;  // +inf when the policy has no GDP guarantee
  double epsilon = 0.0;
  double delta = 0.0;
};

/// One row per (policy, epsilon). Policies without a GDP guarantee report
/// eta = inf and delta = 1.
inline std::vector<PrivacyRow> privacy_rows(std::span<const PolicyConfig> policies,
                                            std::span<const double> eps_grid) {
  std::vector<PrivacyRow> rows;
  for (const PolicyConfig& p : policies) {
    const std::optional<GdpParam> eta = p.eta();
    for (double eps : eps_grid) {
      PrivacyRow row{p.id(), p.alpha(), p.horizon, 0.0, eps, 1.0};
      if (eta) {
        row.eta = eta->eta();
        row.delta = gdp_to_dp(*eta, eps).delta;
      } else {
        row.eta = std::numeric_limits<double>::infinity();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline void write_per_run(std::ostream& os, std::span<const RunResult> runs) {
  os << kPerRunHeader << '\n';
  for (const RunResult& r : runs) {
    for (const RegretPoint& pt : r.regret_trace) {
      os << r.policy_id << ',' << r.seed << ',' << pt.checkpoint << ','
         << format_double(pt.regret) << '\n';
    }
  }
}

inline void write_aggregate(std::ostream& os,
                            std::span<const AggregateResult> aggregates) {
  os << kAggregateHeader << '\n';
  for (const AggregateResult& a : aggregates) {
    for (const AggregatePoint& pt : a.points) {
      os << a.policy_id << ',' << pt.checkpoint << ',' << format_double(pt.mean)
         << ',' << format_double(pt.std_dev) << ',' << a.n_runs << '\n';
    }
  }
}

inline void write_privacy(std::ostream& os, std::span<const PrivacyRow> rows) {
  os << kPrivacyHeader << '\n';
  for (const PrivacyRow& r : rows) {
    os << r.policy << ',' << (r.alpha ? format_double(*r.alpha) : "") << ','
       << r.horizon << ',' << format_double(r.eta) << ','
       << format_double(r.epsilon) << ',' << format_double(r.delta) << '\n';
  }
}

namespace detail {

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  writer(os);
  os.flush();
  if (!os) throw IoError("write failed for " + path.string());
}

}  // namespace detail

inline void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string() +
                  (ec ? ": " + ec.message() : ""));
  }
}

inline void write_privacy_csv(std::span<const PrivacyRow> rows,
                              const std::filesystem::path& out_dir) {
  ensure_directory(out_dir);
  detail::write_file(out_dir / "privacy.csv",
                     [&](std::ostream& os) { write_privacy(os, rows); });
}

/// Writes <out>/per_run.csv, <out>/aggregate.csv and <out>/privacy.csv.
inline void write_csv(const ExperimentResult& results,
                      std::span<const PolicyConfig> policies,
                      std::span<const double> eps_grid,
                      const std::filesystem::path& out_dir) {
  ensure_directory(out_dir);
  detail::write_file(out_dir / "per_run.csv",
                     [&](std::ostream& os) { write_per_run(os, results.runs); });
  detail::write_file(out_dir / "aggregate.csv", [&](std::ostream& os) {
    write_aggregate(os, results.aggregates);
  });
  const std::vector<PrivacyRow> rows = privacy_rows(policies, eps_grid);
  write_privacy_csv(rows, out_dir);
}

}  // namespace dpbandit
