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

#include "aerial/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <ostream>
#include <sstream>

namespace aerial {

std::string to_string(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::PID:
      return "PID";
    case ControllerKind::FTSMC:
      return "FTSMC";
    case ControllerKind::FOFTSMC:
      return "FOFTSMC";
  }
  return "?";
}

ControllerKind controller_from_string(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "pid") return ControllerKind::PID;
  if (lower == "ftsmc") return ControllerKind::FTSMC;
  if (lower == "foftsmc") return ControllerKind::FOFTSMC;
  throw ConfigError("unknown controller '" + name + "' (expected pid, ftsmc or foftsmc)");
}

std::size_t ScenarioConfig::steps() const {
  return static_cast<std::size_t>(std::llround(duration / dt));
}

void ScenarioConfig::validate() const {
  if (!(duration > 0.0)) throw ConfigError("duration must be positive");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  const double ratio = duration / dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
    throw ConfigError("duration must be an integral multiple of dt");
  }
  if (!(body_mass > 0.0)) throw ConfigError("body_mass must be positive");
  if (!(body_inertia.minCoeff() > 0.0)) throw ConfigError("body_inertia entries must be positive");
  if (!(gravity >= 0.0)) throw ConfigError("gravity must be non-negative");
  for (const auto& l : arm.links) {
    if (!(l.mass >= 0.0)) throw ConfigError("link masses must be non-negative");
  }
  if (!(fd_step > 0.0)) throw ConfigError("fd_step must be positive");
  if (!(epsilon > 0.0) || !(attitude_epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(memory_window >= dt)) throw ConfigError("memory_window must cover at least one step");
  if (!(takeoff_time > 0.0)) throw ConfigError("takeoff_time must be positive");
  if (!(metrics_start >= 0.0) || metrics_window_end() > duration + 1e-9 || metrics_start > metrics_window_end()) {
    throw ConfigError("metrics window must lie within the run");
  }
  try {
    smc.position.validate();
    smc.attitude.validate();
    smc.position_gains.validate();
    smc.attitude_gains.validate();
    pid.validate();
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  }
}

PlantParams ScenarioConfig::plant() const {
  PlantParams p;
  p.mass = mass_budget(body_mass, arm.links);
  p.I_b = body_inertia.asDiagonal();
  p.g = gravity;
  return p;
}

SmcConfig ScenarioConfig::smc_config() const {
  SmcConfig c = smc;
  c.epsilon = epsilon;
  c.attitude_epsilon = attitude_epsilon;
  c.ref_filter_wn = ref_filter_wn;
  c.dt = dt;
  c.memory_window = memory_window;
  c.tilt_limit = tilt_limit;
  c.plant = plant();
  return controller == ControllerKind::FTSMC ? c.integer_order() : c;
}

PidConfig ScenarioConfig::pid_config() const {
  PidConfig c;
  c.gains = pid;
  c.dt = dt;
  c.tilt_limit = tilt_limit;
  c.plant = plant();
  return c;
}

JointState<double> joint_trajectory(double t, double start) {
  constexpr double pi = std::numbers::pi;
  JointState<double> js;
  js.q(2) = -pi / 2;
  if (t < start) return js;
  const double tau = t - start;
  const double a1 = pi / 5, w1 = pi / 15;
  const double a2 = pi / 3, w2 = pi / 10;
  js.q(0) = a1 * std::sin(w1 * tau);
  js.qd(0) = a1 * w1 * std::cos(w1 * tau);
  js.qdd(0) = -a1 * w1 * w1 * std::sin(w1 * tau);
  js.q(1) = a2 * std::sin(w2 * tau);
  js.qd(1) = a2 * w2 * std::cos(w2 * tau);
  js.qdd(1) = -a2 * w2 * w2 * std::sin(w2 * tau);
  return js;
}

Reference reference_trajectory(double t, double altitude, double ramp) {
  Reference ref;
  const double s = std::clamp(t / ramp, 0.0, 1.0);
  const double h = altitude * s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
  double hd = 0.0, hdd = 0.0;
  if (t > 0.0 && t < ramp) {
    hd = altitude / ramp * 30.0 * s * s * (1.0 - s) * (1.0 - s);
    hdd = altitude / (ramp * ramp) * 60.0 * s * (1.0 - s) * (1.0 - 2.0 * s);
  }
  ref.p.z() = -h;
  ref.v.z() = -hd;
  ref.a.z() = -hdd;
  return ref;
}

std::unique_ptr<Controller> make_controller(const ScenarioConfig& cfg) {
  if (cfg.controller == ControllerKind::PID) {
    return std::make_unique<PidCascade>(cfg.pid_config());
  }
  return std::make_unique<SlidingModeController>(cfg.smc_config());
}

RunLog run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  const PlantParams params = cfg.plant();
  const double start = cfg.joint_start;
  Plant::JointSource joints;
  if (cfg.joints == JointMode::Sinusoid) {
    joints = [start](double t) { return joint_trajectory(t, start); };
  } else {
    joints = [](double) { return joint_trajectory(0.0, 1.0); };
  }
  const Plant plant(params, cfg.arm, joints, cfg.fd_step);
  auto controller = make_controller(cfg);

  RunLog log;
  log.controller = cfg.controller;
  log.dt = cfg.dt;
  const std::size_t n = cfg.steps();
  log.rows.reserve(n + 1);

  VehicleState state;
  state.p = cfg.initial_position;
  state.phi = cfg.initial_attitude;
  Vector3 v_dot_prev = Vector3::Zero();
  Vector3 omega_dot_prev = Vector3::Zero();

  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    try {
      const auto mi = plant.inertia_at(t);
      ControlInput in;
      in.t = t;
      in.state = state;
      in.ref = reference_trajectory(t, cfg.hover_altitude, cfg.takeoff_time);
      // The controller sees the coupling wrench at last step's accelerations.
      in.d_est = coupling_disturbance(state, mi, params, omega_dot_prev, v_dot_prev);
      const ControlOutput out = controller->update(in);
      const CoupledDerivative actual = coupled_derivative(state, out.wrench, mi, params);

      LogRow row;
      row.t = t;
      row.p = state.p;
      row.phi = state.phi;
      row.p_ref = in.ref.p;
      row.att_ref = out.att_ref;
      row.S_pos = out.S_pos;
      row.S_att = out.S_att;
      row.u_p = out.u_p;
      row.F = out.wrench.F;
      row.tau = out.wrench.tau;
      row.F_cd = actual.disturbance.F_cd;
      row.tau_cd = actual.disturbance.tau_cd;
      row.q = joints(t).q;
      log.rows.push_back(row);

      v_dot_prev = actual.deriv.v_dot;
      omega_dot_prev = actual.deriv.omega_dot;
      if (k < n) {
        state = plant.step(t, state, out.wrench, cfg.dt);
      }
    } catch (const Error& e) {
      log.diverged = true;
      std::ostringstream msg;
      msg << "run aborted at t = " << t << " s: " << e.what();
      log.diagnostic = msg.str();
      break;
    }
  }
  return log;
}

std::string csv_header() {
  return "t,x,y,z,phi,theta,psi,x_ref,y_ref,z_ref,phi_ref,theta_ref,psi_ref,"
         "S_x,S_y,S_z,S_phi,S_theta,S_psi,u_x,u_y,u_z,F,tau_x,tau_y,tau_z,"
         "Fcd_x,Fcd_y,Fcd_z,taucd_x,taucd_y,taucd_z,q1,q2,q3,q4";
}

namespace {
void put(std::string& line, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, ",%.17g", x);
  line += buf;
}
template <typename V>
void put(std::string& line, const V& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) put(line, static_cast<double>(v(i)));
}
}  // namespace

void write_csv(const RunLog& log, std::ostream& out) {
  out << csv_header() << '\n';
  std::string line;
  for (const auto& r : log.rows) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", r.t);
    line = buf;
    put(line, r.p);
    put(line, r.phi);
    put(line, r.p_ref);
    put(line, r.att_ref);
    put(line, r.S_pos);
    put(line, r.S_att);
    put(line, r.u_p);
    put(line, r.F);
    put(line, r.tau);
    put(line, r.F_cd);
    put(line, r.tau_cd);
    put(line, r.q);
    out << line << '\n';
  }
}

ErrorReport error_metrics(const RunLog& log, double t_start, double t_end) {
  if (!(t_end >= t_start)) {
    throw InvalidParameter("metrics window is reversed");
  }
  ErrorReport rep;
  rep.t_start = t_start;
  rep.t_end = t_end;
  rep.max_altitude = -std::numeric_limits<double>::infinity();
  std::array<double, 6> sq{};
  const double slack = 1e-9 * std::max(1.0, std::abs(t_end));
  for (const auto& r : log.rows) {
    if (r.t < t_start - slack || r.t > t_end + slack) continue;
    Eigen::Matrix<double, 6, 1> e;
    e << r.p - r.p_ref, r.phi - r.att_ref;
    e(5) = std::remainder(e(5), 2.0 * std::numbers::pi);
    for (int c = 0; c < 6; ++c) {
      rep.channels[c].max_abs = std::max(rep.channels[c].max_abs, std::abs(e(c)));
      sq[c] += e(c) * e(c);
    }
    rep.max_altitude = std::max(rep.max_altitude, -r.p.z());
    ++rep.samples;
  }
  if (rep.samples == 0) {
    throw InvalidParameter("metrics window contains no samples");
  }
  for (int c = 0; c < 6; ++c) {
    rep.channels[c].rmse = std::sqrt(sq[c] / static_cast<double>(rep.samples));
  }
  return rep;
}

Comparison compare_controllers(const ScenarioConfig& base) {
  constexpr std::array<ControllerKind, 3> kinds = {ControllerKind::PID, ControllerKind::FTSMC,
                                                   ControllerKind::FOFTSMC};
  std::array<std::future<RunLog>, 3> jobs;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    ScenarioConfig cfg = base;
    cfg.controller = kinds[i];
    jobs[i] = std::async(std::launch::async, [cfg] { return run_scenario(cfg); });
  }
  Comparison cmp;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    cmp.logs[i] = jobs[i].get();
    if (!cmp.logs[i].rows.empty()) {
      const double end = std::min(base.metrics_window_end(), cmp.logs[i].rows.back().t);
      if (end >= base.metrics_start) {
        cmp.reports[i] = error_metrics(cmp.logs[i], base.metrics_start, end);
      }
    }
  }
  return cmp;
}

std::string format_report(const ErrorReport& report, const RunLog& log) {
  std::ostringstream out;
  char buf[160];
  out << "controller: " << to_string(log.controller) << '\n';
  std::snprintf(buf, sizeof buf, "window: [%.3f, %.3f] s, %zu samples\n", report.t_start, report.t_end,
                report.samples);
  out << buf;
  if (log.diverged) out << "DIVERGED: " << log.diagnostic << '\n';
  out << "channel        max_abs           rmse\n";
  for (std::size_t c = 0; c < kChannels.size(); ++c) {
    std::snprintf(buf, sizeof buf, "%-8s %14.6e %14.6e\n", kChannels[c], report.channels[c].max_abs,
                  report.channels[c].rmse);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "max altitude: %.6f m\n", report.max_altitude);
  out << buf;
  return out.str();
}

std::string format_comparison(const Comparison& cmp) {
  std::ostringstream out;
  char buf[200];
  out << "Tracking error over the joint-motion window (max_abs / rmse)\n";
  std::snprintf(buf, sizeof buf, "%-8s", "");
  out << buf;
  for (const auto& log : cmp.logs) {
    std::snprintf(buf, sizeof buf, " %27s", to_string(log.controller).c_str());
    out << buf;
  }
  out << '\n';
  for (std::size_t c = 0; c < kChannels.size(); ++c) {
    std::snprintf(buf, sizeof buf, "%-8s", kChannels[c]);
    out << buf;
    for (std::size_t i = 0; i < 3; ++i) {
      if (cmp.logs[i].diverged) {
        std::snprintf(buf, sizeof buf, " %27s", "diverged");
      } else {
        std::snprintf(buf, sizeof buf, " %13.4e /%12.4e", cmp.reports[i].channels[c].max_abs,
                      cmp.reports[i].channels[c].rmse);
      }
      out << buf;
    }
    out << '\n';
  }
  std::snprintf(buf, sizeof buf, "%-8s", "alt_max");
  out << buf;
  for (std::size_t i = 0; i < 3; ++i) {
    std::snprintf(buf, sizeof buf, " %27.6f", cmp.reports[i].max_altitude);
    out << buf;
  }
  out << "\n\nOrdering of max error (FOFTSMC < FTSMC < PID):\n";
  for (std::size_t c = 0; c < kChannels.size(); ++c) {
    const bool any_diverged = cmp.logs[0].diverged || cmp.logs[1].diverged || cmp.logs[2].diverged;
    const double pid = cmp.reports[0].channels[c].max_abs;
    const double ft = cmp.reports[1].channels[c].max_abs;
    const double fo = cmp.reports[2].channels[c].max_abs;
    const char* verdict = any_diverged ? "n/a (diverged run)" : (fo < ft && ft < pid ? "holds" : "does not hold");
    std::snprintf(buf, sizeof buf, "  %-6s %s\n", kChannels[c], verdict);
    out << buf;
  }
  for (const auto& log : cmp.logs) {
    if (log.diverged) out << to_string(log.controller) << " diverged: " << log.diagnostic << '\n';
  }
  return out.str();
}

}  // namespace aerial
