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

#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "aerial/control.hpp"
#include "aerial/dynamics.hpp"
#include "aerial/kinematics.hpp"

namespace aerial {

enum class ControllerKind { PID, FTSMC, FOFTSMC };

std::string to_string(ControllerKind kind);
ControllerKind controller_from_string(const std::string& name);

enum class JointMode { Sinusoid, Static };

struct ScenarioConfig {
  double duration = 40.0;
  double dt = 1e-3;
  ControllerKind controller = ControllerKind::FOFTSMC;

  double body_mass = 2.65;
  Vector3 body_inertia{0.05, 0.05, 0.05};
  double gravity = 9.81;
  ArmModel<double> arm = default_arm();
  double fd_step = 1e-5;

  SmcConfig smc;  // plant, dt and window are filled in from this config
  PidGains pid;
  double epsilon = 0.05;
  double attitude_epsilon = 0.01;
  double ref_filter_wn = 40.0;
  double memory_window = 2.0;
  double tilt_limit = 0.5;

  JointMode joints = JointMode::Sinusoid;
  double joint_start = 10.0;
  double hover_altitude = 1.0;
  double takeoff_time = 5.0;

  Vector3 initial_position = Vector3::Zero();
  Vector3 initial_attitude = Vector3::Zero();

  double metrics_start = 10.0;
  double metrics_end = -1.0;  // <= 0 means the run duration

  std::string log_path;
  std::string summary_path;

  std::size_t steps() const;
  PlantParams plant() const;
  SmcConfig smc_config() const;
  PidConfig pid_config() const;
  double metrics_window_end() const { return metrics_end > 0.0 ? metrics_end : duration; }
  void validate() const;
};

/// Parses "key = value" lines onto the defaults; unknown keys and malformed
/// values raise ConfigError naming the offending key.
ScenarioConfig parse_config(std::istream& in, ScenarioConfig base = {});
ScenarioConfig load_config(const std::string& path);

/// Documented configuration keys with their meaning, one per line.
std::string config_reference();

/// Joint motion: static fold before start, sinusoids on joints 1 and 2 after.
JointState<double> joint_trajectory(double t, double start = 10.0);

/// Quintic takeoff from 0 to the hover altitude (z = -altitude), then hold.
Reference reference_trajectory(double t, double altitude = 1.0, double ramp = 5.0);

struct LogRow {
  double t = 0.0;
  Vector3 p, phi, p_ref, att_ref;
  Vector3 S_pos, S_att;
  Vector3 u_p;
  double F = 0.0;
  Vector3 tau;
  Vector3 F_cd, tau_cd;
  Vector4 q;
};

struct RunLog {
  ControllerKind controller = ControllerKind::FOFTSMC;
  double dt = 0.0;
  std::vector<LogRow> rows;
  bool diverged = false;
  std::string diagnostic;
};

std::unique_ptr<Controller> make_controller(const ScenarioConfig& cfg);

/// Deterministic closed-loop run.
RunLog run_scenario(const ScenarioConfig& cfg);

void write_csv(const RunLog& log, std::ostream& out);
std::string csv_header();

inline constexpr std::array<const char*, 6> kChannels = {"x", "y", "z", "phi", "theta", "psi"};

struct ChannelError {
  double max_abs = 0.0;
  double rmse = 0.0;
};

struct ErrorReport {
  std::array<ChannelError, 6> channels;
  double t_start = 0.0;
  double t_end = 0.0;
  std::size_t samples = 0;
  double max_altitude = 0.0;
};

ErrorReport error_metrics(const RunLog& log, double t_start, double t_end);

struct Comparison {
  std::array<RunLog, 3> logs;  // PID, FTSMC, FOFTSMC
  std::array<ErrorReport, 3> reports;
};

/// Runs the three controllers on the same scenario (concurrently).
Comparison compare_controllers(const ScenarioConfig& base);

std::string format_report(const ErrorReport& report, const RunLog& log);
std::string format_comparison(const Comparison& cmp);

}  // namespace aerial
