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

// Command-line front end for the dpbandit library.
//
//   dpbandit run      simulate policies, write per_run/aggregate/privacy CSVs
//                     and summary.txt
//   dpbandit privacy  print eta and delta(eps) per policy, write privacy.csv
//   dpbandit verify   run the Monte-Carlo / numerical verification battery
//
// Values are resolved in the order: built-in defaults, preset, config file,
// command-line flags. Exit codes: 0 ok, 1 verification failure, 2 usage
// error, 3 I/O error.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "dpbandit/dpbandit.hpp"

namespace dpbandit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Subcommand { kRun, kVerify, kPrivacy };

/// How M-TS-Gaussian's variance scale c is chosen.
enum class ScaleRule {
  kExplicit,       // --c <number>
  kMatchPrivacy,   // c = match_c(alpha, T, b): same GDP parameter as DP-TS-UCB
  kMatchRegret,    // c = 5 ln^alpha(T): same regret bound as DP-TS-UCB
};

struct CliConfig {
  Subcommand subcommand = Subcommand::kRun;
  std::optional<std::string> preset;
  std::vector<double> means{0.95, 0.75, 0.55, 0.35, 0.15};
  std::int64_t horizon = 1'000'000;
  std::vector<double> alphas{1.0};
  std::vector<std::string> policies{"dp-ts-ucb"};
  std::vector<std::int64_t> pre_pulls{0};  // empty means "auto" (tuned per alpha)
  ScaleRule scale_rule = ScaleRule::kMatchPrivacy;
  double scale = 1.0;
  std::int64_t runs = 20;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  std::vector<double> eps_grid{0.0, 0.5, 1.0, 2.0};
  unsigned workers = default_workers();
  std::int64_t trials = 100'000;
  std::vector<std::string> checks{"all"};
};

/// Recognised keys; each is both a `--flag` and a config-file key.
inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "preset", "means", "T", "alpha", "policies", "b", "c", "runs", "seed",
      "out", "eps-grid", "workers", "trials", "checks"};
  return keys;
}

inline const std::vector<std::string>& policy_names() {
  static const std::vector<std::string> names{"dp-ts-ucb", "ts-gaussian",
                                              "m-ts-gaussian", "ucb1"};
  return names;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) {
    throw UsageError("--" + key + ": malformed number '" + text + "'");
  }
  return v;
}

/// Integers may be written in scientific notation ("1e5") if exact.
inline std::int64_t parse_int(const std::string& key, const std::string& text) {
  std::int64_t v = 0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec == std::errc() && res.ptr == end) return v;
  const double d = parse_double(key, text);
  if (d != std::floor(d) || std::fabs(d) > 9.0e15) {
    throw UsageError("--" + key + ": expected an integer, got '" + text + "'");
  }
  return static_cast<std::int64_t>(d);
}

inline std::uint64_t parse_uint(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw UsageError("--" + key + ": expected a non-negative integer, got '" +
                     text + "'");
  }
  return v;
}

inline std::vector<double> parse_double_list(const std::string& key,
                                             const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : split_list(text)) {
    out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw UsageError("--" + key + ": empty list");
  return out;
}

inline std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += items[i];
  }
  return out;
}

inline std::string join_doubles(const std::vector<double>& values) {
  std::vector<std::string> items;
  for (double v : values) items.push_back(format_double(v));
  return join(items);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Presets

/// M-TS-Gaussian pre-pull count that minimised regret over the grid
/// {0, 1, 500, 1000, 2000, 5000, 100000} at privacy-matched c: b = 1 for
/// alpha = 0 and b = 2000 for alpha = 1. Other alphas take the nearer end.
inline std::int64_t tuned_pre_pulls(double alpha) { return alpha < 0.5 ? 1 : 2000; }

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"paper-fig3", "paper-fig4",
                                              "paper-fig5"};
  return names;
}

/// Overwrites the experiment fields a preset defines.
inline void apply_preset(const std::string& name, CliConfig& cfg) {
  cfg.means = {0.95, 0.75, 0.55, 0.35, 0.15};
  cfg.horizon = 1'000'000;
  cfg.runs = 20;
  if (name == "paper-fig3") {
    cfg.policies = {"dp-ts-ucb"};
    cfg.alphas = {0.0, 0.25, 0.5, 0.75, 1.0};
  } else if (name == "paper-fig4") {
    cfg.policies = {"dp-ts-ucb", "m-ts-gaussian"};
    cfg.alphas = {0.0, 0.25, 0.5, 0.75, 1.0};
    cfg.pre_pulls = {0};
    cfg.scale_rule = ScaleRule::kMatchRegret;
  } else if (name == "paper-fig5") {
    cfg.policies = {"dp-ts-ucb", "m-ts-gaussian"};
    cfg.alphas = {0.0, 1.0};
    cfg.pre_pulls = {};
    cfg.scale_rule = ScaleRule::kMatchPrivacy;
  } else {
    throw UsageError("unknown preset '" + name + "' (expected paper-fig3, " +
                     "paper-fig4 or paper-fig5)");
  }
  cfg.preset = name;
}

// ---------------------------------------------------------------------------
// Parsing

using RawValues = std::map<std::string, std::string>;

/// Flat `key = value` file; '#' starts a comment. Unknown keys are rejected.
inline RawValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  RawValues values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(line_no) +
                       ": expected 'key = value'");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": unknown key '" +
                       key + "'");
    }
    values[key] = value;
  }
  return values;
}

/// Applies one resolved key to the config.
inline void apply_value(const std::string& key, const std::string& v, CliConfig& cfg) {
  using namespace detail;
  if (key == "means") {
    cfg.means = parse_double_list(key, v);
  } else if (key == "T") {
    cfg.horizon = parse_int(key, v);
  } else if (key == "alpha") {
    cfg.alphas = parse_double_list(key, v);
  } else if (key == "policies") {
    std::vector<std::string> names = split_list(v);
    if (names.size() == 1 && names[0] == "all") names = policy_names();
    for (const std::string& n : names) {
      const auto& known = policy_names();
      if (std::find(known.begin(), known.end(), n) == known.end()) {
        throw UsageError("--policies: unknown policy '" + n + "'");
      }
    }
    if (names.empty()) throw UsageError("--policies: empty list");
    cfg.policies = names;
  } else if (key == "b") {
    if (trim(v) == "auto") {
      cfg.pre_pulls.clear();
    } else {
      cfg.pre_pulls.clear();
      for (const std::string& item : split_list(v)) {
        cfg.pre_pulls.push_back(parse_int(key, item));
      }
      if (cfg.pre_pulls.empty()) throw UsageError("--b: empty list");
    }
  } else if (key == "c") {
    if (v == "match-privacy") {
      cfg.scale_rule = ScaleRule::kMatchPrivacy;
    } else if (v == "match-regret") {
      cfg.scale_rule = ScaleRule::kMatchRegret;
    } else {
      cfg.scale_rule = ScaleRule::kExplicit;
      cfg.scale = parse_double(key, v);
    }
  } else if (key == "runs") {
    cfg.runs = parse_int(key, v);
  } else if (key == "seed") {
    cfg.seed = parse_uint(key, v);
  } else if (key == "out") {
    cfg.out_dir = v;
  } else if (key == "eps-grid") {
    cfg.eps_grid = parse_double_list(key, v);
  } else if (key == "workers") {
    const std::int64_t w = parse_int(key, v);
    if (w < 1 || w > 4096) throw UsageError("--workers must lie in [1, 4096]");
    cfg.workers = static_cast<unsigned>(w);
  } else if (key == "trials") {
    cfg.trials = parse_int(key, v);
  } else if (key == "checks") {
    cfg.checks = split_list(v);
  }
}

inline std::vector<CheckGroup> selected_checks(const CliConfig& cfg) {
  std::vector<CheckGroup> out;
  for (const std::string& name : cfg.checks) {
    if (name == "all") return all_check_groups();
    bool found = false;
    for (CheckGroup g : all_check_groups()) {
      if (name == check_group_name(g)) {
        out.push_back(g);
        found = true;
      }
    }
    if (!found) throw UsageError("--checks: unknown check '" + name + "'");
  }
  if (out.empty()) throw UsageError("--checks: empty list");
  return out;
}

/// Expands the CLI policy selection into concrete policy configurations.
inline std::vector<PolicyConfig> expand_policies(const CliConfig& cfg) {
  std::vector<PolicyConfig> out;
  const std::int64_t t = cfg.horizon;
  for (const std::string& name : cfg.policies) {
    if (name == "dp-ts-ucb") {
      for (double a : cfg.alphas) out.push_back({DpTsUcbParams{a}, t});
    } else if (name == "ts-gaussian") {
      out.push_back({TsGaussianParams{}, t});
    } else if (name == "ucb1") {
      out.push_back({Ucb1Params{}, t});
    } else if (name == "m-ts-gaussian") {
      // With an explicit c, alpha plays no role.
      const std::vector<double> alphas =
          cfg.scale_rule == ScaleRule::kExplicit ? std::vector<double>{cfg.alphas.front()}
                                                 : cfg.alphas;
      for (double a : alphas) {
        std::vector<std::int64_t> bs = cfg.pre_pulls;
        if (bs.empty()) bs = {tuned_pre_pulls(a)};
        for (std::int64_t b : bs) {
          double c = cfg.scale;
          if (cfg.scale_rule == ScaleRule::kMatchPrivacy) {
            c = match_c(a, t, b);
          } else if (cfg.scale_rule == ScaleRule::kMatchRegret) {
            c = 5.0 * std::pow(std::log(static_cast<double>(t)), a);
          }
          out.push_back({MTsGaussianParams{b, c}, t});
        }
      }
    }
  }
  return out;
}

/// Checks every resolved value against the preconditions of the module it
/// feeds. Throws UsageError.
inline void validate(const CliConfig& cfg) {
  try {
    BanditInstance instance(cfg.means);
    if (cfg.horizon < 1) throw UsageError("--T must be positive");
    for (double a : cfg.alphas) {
      if (!(a >= 0.0 && a <= 1.0)) {
        throw UsageError("--alpha values must lie in [0, 1], got " + format_double(a));
      }
    }
    if (cfg.runs < 1) throw UsageError("--runs must be positive");
    for (double e : cfg.eps_grid) {
      if (!(e >= 0.0)) throw UsageError("--eps-grid values must be >= 0");
    }
    if (cfg.scale_rule == ScaleRule::kExplicit && !(cfg.scale > 0.0)) {
      throw UsageError("--c must be positive");
    }
    for (std::int64_t b : cfg.pre_pulls) {
      if (b < 0) throw UsageError("--b must be >= 0");
    }
    if (cfg.subcommand == Subcommand::kVerify) {
      if (cfg.trials < kMinMonteCarloTrials) {
        throw UsageError("--trials must be at least 10000, got " +
                         std::to_string(cfg.trials));
      }
      selected_checks(cfg);
    } else {
      for (const PolicyConfig& p : expand_policies(cfg)) {
        p.validate(instance.num_arms());
      }
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

inline Subcommand parse_subcommand(const std::string& name) {
  if (name == "run") return Subcommand::kRun;
  if (name == "verify") return Subcommand::kVerify;
  if (name == "privacy") return Subcommand::kPrivacy;
  throw UsageError("unknown subcommand '" + name + "'");
}

/// Resolves defaults, preset, file values and flag values (in that order)
/// into a validated config.
inline CliConfig resolve_config(Subcommand sub, const RawValues& file_values,
                                const RawValues& flag_values) {
  CliConfig cfg;
  cfg.subcommand = sub;
  RawValues merged = file_values;
  for (const auto& [k, v] : flag_values) merged[k] = v;
  if (const auto it = merged.find("preset"); it != merged.end()) {
    apply_preset(it->second, cfg);
  }
  for (const auto& [k, v] : merged) {
    if (k != "preset") apply_value(k, v, cfg);
  }
  validate(cfg);
  return cfg;
}

/// Parses argv (argv[0] is the program name). Throws UsageError; a request
/// for --help is reported through `help_text` with no config.
inline std::optional<CliConfig> parse_config(int argc, const char* const* argv,
                                             std::string* help_text = nullptr) {
  CLI::App app{"Differentially private stochastic bandit simulator"};
  app.require_subcommand(1);
  RawValues flag_values;
  std::map<std::string, std::string> storage;
  std::string config_path;
  std::vector<std::pair<CLI::App*, Subcommand>> subs;
  const std::vector<std::pair<std::string, Subcommand>> names{
      {"run", Subcommand::kRun},
      {"verify", Subcommand::kVerify},
      {"privacy", Subcommand::kPrivacy}};
  std::vector<std::pair<CLI::App*, std::vector<std::pair<std::string, CLI::Option*>>>>
      option_sets;
  for (const auto& [name, sub] : names) {
    CLI::App* s = app.add_subcommand(name);
    std::vector<std::pair<std::string, CLI::Option*>> opts;
    for (const std::string& key : config_keys()) {
      opts.emplace_back(key, s->add_option("--" + key, storage[name + "/" + key]));
    }
    s->add_option("--config", config_path, "flat key = value configuration file");
    subs.emplace_back(s, sub);
    option_sets.emplace_back(s, std::move(opts));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    if (help_text) *help_text = app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp& e) {
    if (help_text) *help_text = app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (std::size_t i = 0; i < subs.size(); ++i) {
    CLI::App* s = subs[i].first;
    if (!s->parsed()) continue;
    for (const auto& [key, opt] : option_sets[i].second) {
      if (opt->count() > 0) flag_values[key] = opt->as<std::string>();
    }
    const RawValues file_values =
        config_path.empty() ? RawValues{} : read_config_file(config_path);
    return resolve_config(subs[i].second, file_values, flag_values);
  }
  throw UsageError("a subcommand is required: run, verify or privacy");
}

/// Serializes the resolved experiment fields as a config file. Parsing the
/// output reproduces the same config.
inline std::string to_config_text(const CliConfig& cfg) {
  using namespace detail;
  std::ostringstream os;
  os << "means = " << join_doubles(cfg.means) << '\n';
  os << "T = " << cfg.horizon << '\n';
  os << "alpha = " << join_doubles(cfg.alphas) << '\n';
  os << "policies = " << join(cfg.policies) << '\n';
  if (cfg.pre_pulls.empty()) {
    os << "b = auto\n";
  } else {
    std::vector<std::string> bs;
    for (std::int64_t b : cfg.pre_pulls) bs.push_back(std::to_string(b));
    os << "b = " << join(bs) << '\n';
  }
  switch (cfg.scale_rule) {
    case ScaleRule::kExplicit: os << "c = " << format_double(cfg.scale) << '\n'; break;
    case ScaleRule::kMatchPrivacy: os << "c = match-privacy\n"; break;
    case ScaleRule::kMatchRegret: os << "c = match-regret\n"; break;
  }
  os << "runs = " << cfg.runs << '\n';
  os << "seed = " << cfg.seed << '\n';
  os << "out = " << cfg.out_dir << '\n';
  os << "eps-grid = " << join_doubles(cfg.eps_grid) << '\n';
  os << "workers = " << cfg.workers << '\n';
  os << "trials = " << cfg.trials << '\n';
  os << "checks = " << join(cfg.checks) << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Commands

inline std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

inline void print_privacy_table(const std::vector<PrivacyRow>& rows, std::ostream& out) {
  out << fmt("%-36s %10s %14s %8s %14s\n", "policy", "T", "eta", "epsilon", "delta");
  for (const PrivacyRow& r : rows) {
    out << fmt("%-36s %10lld %14.7g %8.4g %14.7g\n", r.policy.c_str(),
               static_cast<long long>(r.horizon), r.eta, r.epsilon, r.delta);
  }
}

inline int cmd_privacy(const CliConfig& cfg, std::ostream& out) {
  const std::vector<PolicyConfig> policies = expand_policies(cfg);
  const std::vector<PrivacyRow> rows = privacy_rows(policies, cfg.eps_grid);
  print_privacy_table(rows, out);
  write_privacy_csv(rows, cfg.out_dir);
  return kExitOk;
}

inline ExperimentSpec make_spec(const CliConfig& cfg) {
  ExperimentSpec spec{BanditInstance(cfg.means), expand_policies(cfg), cfg.horizon,
                      cfg.runs, cfg.seed, {}};
  spec.checkpoints = default_checkpoints(cfg.horizon, spec.instance.num_arms());
  return spec;
}

inline std::string summary_text(const ExperimentSpec& spec, const ExperimentResult& res) {
  std::ostringstream os;
  os << fmt("T = %lld, runs = %lld, seed = %llu, arms = %zu\n",
            static_cast<long long>(spec.horizon), static_cast<long long>(spec.n_runs),
            static_cast<unsigned long long>(spec.base_seed), spec.instance.num_arms());
  os << fmt("%-36s %16s %14s %14s\n", "policy", "final regret", "std", "eta");
  for (const AggregateResult& a : res.aggregates) {
    const AggregatePoint& last = a.points.back();
    const auto eta = spec.policies[a.policy_index].eta();
    os << fmt("%-36s %16.3f %14.3f %14.7g\n", a.policy_id.c_str(), last.mean,
              last.std_dev,
              eta ? eta->eta() : std::numeric_limits<double>::infinity());
  }
  return os.str();
}

inline int cmd_run(const CliConfig& cfg, std::ostream& out) {
  const ExperimentSpec spec = make_spec(cfg);
  const ExperimentResult res = run_experiment(spec, cfg.workers);
  write_csv(res, spec.policies, cfg.eps_grid, cfg.out_dir);
  const std::string summary = summary_text(spec, res);
  dpbandit::detail::write_file(std::filesystem::path(cfg.out_dir) / "summary.txt",
                               [&](std::ostream& os) { os << summary; });
  out << summary;
  return kExitOk;
}

inline int cmd_verify(const CliConfig& cfg, std::ostream& out) {
  const std::vector<CheckGroup> groups = selected_checks(cfg);
  const std::vector<McReport> reports =
      run_battery(groups, cfg.trials, cfg.seed, cfg.workers);
  bool all_passed = true;
  for (const McReport& r : reports) {
    out << fmt("%-58s estimate=%-13.6g bound=%-13.6g stderr=%-11.4g %s\n",
               r.name.c_str(), r.estimate, r.bound, r.mc_std_err,
               r.passed ? "PASS" : "FAIL");
    all_passed = all_passed && r.passed;
  }
  return all_passed ? kExitOk : kExitVerifyFailed;
}

/// Entry point shared by the executable and the tests.
inline int run_cli(int argc, const char* const* argv, std::ostream& out,
                   std::ostream& err) {
  CliConfig cfg;
  try {
    std::string help;
    std::optional<CliConfig> parsed = parse_config(argc, argv, &help);
    if (!parsed) {
      out << help;
      return kExitOk;
    }
    cfg = std::move(*parsed);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    switch (cfg.subcommand) {
      case Subcommand::kRun: return cmd_run(cfg, out);
      case Subcommand::kPrivacy: return cmd_privacy(cfg, out);
      case Subcommand::kVerify: return cmd_verify(cfg, out);
    }
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace dpbandit::cli
