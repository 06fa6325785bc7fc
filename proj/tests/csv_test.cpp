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


#include "dpbandit/csv.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace dpbandit {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> lines_of(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dpbandit_csv_" + name);
  fs::remove_all(dir);
  return dir;
}

TEST(FormatDouble, RoundTripsExactly) {
  for (double v : {0.1, 1.0 / 3.0, 2.874971775208408, 1e-300, 123456789.123456789,
                   5.09213089386359e-17}) {
    EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
  }
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
}

TEST(Csv, EmptyResultsWriteHeadersOnly) {
  const fs::path dir = scratch_dir("empty");
  write_csv(ExperimentResult{}, {}, {}, dir);
  EXPECT_EQ(lines_of(dir / "per_run.csv"), std::vector<std::string>{kPerRunHeader});
  EXPECT_EQ(lines_of(dir / "aggregate.csv"),
            std::vector<std::string>{kAggregateHeader});
  EXPECT_EQ(lines_of(dir / "privacy.csv"), std::vector<std::string>{kPrivacyHeader});
  fs::remove_all(dir);
}

TEST(Csv, OneRunTwoCheckpoints) {
  const std::int64_t horizon = 100;
  const ExperimentSpec spec{reference_instance(),
                            {PolicyConfig{DpTsUcbParams{1.0}, horizon}},
                            horizon,
                            1,
                            9,
                            {10, 100}};
  const ExperimentResult res = run_experiment(spec, 1);
  const fs::path dir = scratch_dir("one");
  const std::vector<double> eps{0.0, 1.0};
  write_csv(res, spec.policies, eps, dir);

  const auto per_run = lines_of(dir / "per_run.csv");
  ASSERT_EQ(per_run.size(), 3u);
  const std::string prefix =
      "dp-ts-ucb(alpha=1)," + std::to_string(res.runs[0].seed) + ",";
  EXPECT_EQ(per_run[1].rfind(prefix + "10,", 0), 0u) << per_run[1];
  EXPECT_EQ(per_run[2], prefix + "100," + format_double(res.runs[0].regret_trace[1].regret));

  const auto agg = lines_of(dir / "aggregate.csv");
  ASSERT_EQ(agg.size(), 3u);
  EXPECT_EQ(agg[2], "dp-ts-ucb(alpha=1),100," +
                        format_double(res.runs[0].regret_trace[1].regret) + ",0,1");

  const auto priv = lines_of(dir / "privacy.csv");
  ASSERT_EQ(priv.size(), 3u);
  std::istringstream row(priv[2]);
  std::vector<std::string> cells;
  for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
  ASSERT_EQ(cells.size(), 6u);
  EXPECT_EQ(cells[1], "1");
  EXPECT_EQ(cells[2], "100");
  EXPECT_NEAR(std::stod(cells[3]), eta_dp_ts_ucb(1.0, 100).eta(), 1e-15);
  EXPECT_EQ(std::stod(cells[5]), gdp_to_dp(eta_dp_ts_ucb(1.0, 100), 1.0).delta);
  fs::remove_all(dir);
}

TEST(PrivacyRows, Values) {
  const std::vector<PolicyConfig> policies{PolicyConfig{DpTsUcbParams{1.0}, 1000000},
                                           PolicyConfig{Ucb1Params{}, 1000000}};
  const std::vector<double> eps{0.0, 2.0};
  const auto rows = privacy_rows(policies, eps);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_NEAR(rows[0].eta, 2.874971775208408, 1e-12);
  EXPECT_EQ(rows[0].alpha, 1.0);
  EXPECT_TRUE(std::isinf(rows[2].eta));
  EXPECT_EQ(rows[3].delta, 1.0);
  EXPECT_FALSE(rows[3].alpha.has_value());

  std::ostringstream os;
  write_privacy(os, rows);
  EXPECT_NE(os.str().find("ucb1,,1000000,inf,2,1\n"), std::string::npos);
}

TEST(Csv, UnwritableDirectoryRaisesIoError) {
  const fs::path file = fs::temp_directory_path() / "dpbandit_csv_blocker";
  std::ofstream(file) << "not a directory";
  EXPECT_THROW(write_csv(ExperimentResult{}, {}, {}, file), IoError);
  EXPECT_THROW(write_csv(ExperimentResult{}, {}, {}, file / "sub"), IoError);
  fs::remove(file);
}

}  // namespace
}  // namespace dpbandit
