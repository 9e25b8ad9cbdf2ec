// Copyright 2026 The aerial Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// amsim: closed-loop aerial manipulator simulation.
//
//   amsim run <config> [--out <csv>]
//   amsim compare <config> [--out <dir>]
//   amsim validate [--suite all|frac|dynamics|kinematics]
//
// Exit codes: 0 success, 1 divergence or failed check, 2 configuration error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "aerial/oracles.hpp"
#include "aerial/scenario.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kDiverged = 1;
constexpr int kConfigError = 2;

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw aerial::ConfigError("cannot write '" + path.string() + "'");
  out << text;
}

void write_log(const std::filesystem::path& path, const aerial::RunLog& log) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw aerial::ConfigError("cannot write '" + path.string() + "'");
  aerial::write_csv(log, out);
}

int run(const std::string& config, std::string out) {
  const auto cfg = aerial::load_config(config);
  const auto log = aerial::run_scenario(cfg);
  if (out.empty()) out = cfg.log_path.empty() ? aerial::to_string(cfg.controller) + ".csv" : cfg.log_path;
  write_log(out, log);

  const auto report = aerial::error_metrics(log, cfg.metrics_start, cfg.metrics_window_end());
  const std::string summary = aerial::format_report(report, log);
  std::cout << summary;
  if (!cfg.summary_path.empty()) write_file(cfg.summary_path, summary);
  if (log.diverged) {
    std::cerr << "diverged: " << log.diagnostic << '\n';
    return kDiverged;
  }
  return kOk;
}

int compare(const std::string& config, const std::string& out_dir) {
  const auto cfg = aerial::load_config(config);
  const auto cmp = aerial::compare_controllers(cfg);
  const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
  std::filesystem::create_directories(dir);
  bool diverged = false;
  for (const auto& log : cmp.logs) {
    write_log(dir / (aerial::to_string(log.controller) + ".csv"), log);
    if (log.diverged) {
      diverged = true;
      std::cerr << aerial::to_string(log.controller) << " diverged: " << log.diagnostic << '\n';
    }
  }
  const std::string summary = aerial::format_comparison(cmp);
  write_file(dir / "summary.txt", summary);
  std::cout << summary;
  return diverged ? kDiverged : kOk;
}

int validate(const std::string& suite) {
  bool ok = true;
  for (const auto& r : aerial::run_suite(suite)) {
    std::printf("%s  %-60s measured %.3e  tolerance %.3e\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.measured,
                r.tolerance);
    ok = ok && r.pass;
  }
  return ok ? kOk : kDiverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aerial manipulator simulation"};
  app.require_subcommand(1);

  std::string config, out, suite = "all";
  auto* run_cmd = app.add_subcommand("run", "simulate one controller and write its CSV log");
  run_cmd->add_option("config", config, "configuration file")->required();
  run_cmd->add_option("--out", out, "CSV log path");

  auto* cmp_cmd = app.add_subcommand("compare", "run PID, FTSMC and FOFTSMC on the same scenario");
  cmp_cmd->add_option("config", config, "configuration file")->required();
  cmp_cmd->add_option("--out", out, "output directory");

  auto* val_cmd = app.add_subcommand("validate", "run the oracle suites");
  val_cmd->add_option("--suite", suite, "all|frac|dynamics|kinematics")
      ->check(CLI::IsMember({"all", "frac", "dynamics", "kinematics"}));

  auto* keys_cmd = app.add_subcommand("keys", "list configuration keys");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run_cmd) return run(config, out);
    if (*cmp_cmd) return compare(config, out);
    if (*val_cmd) return validate(suite);
    if (*keys_cmd) {
      std::cout << aerial::config_reference();
      return kOk;
    }
  } catch (const aerial::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const aerial::InvalidParameter& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDiverged;
  }
  return kOk;
}
