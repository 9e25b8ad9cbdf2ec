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

// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance <path to amsim>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

#include "aerial/oracles.hpp"
#include "aerial/scenario.hpp"

namespace {

using namespace aerial;
using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& measured) {
  std::printf("criterion %d: %s  %s  [%s]\n", id, pass ? "PASS" : "FAIL", what.c_str(), measured.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

std::string csv_of(const RunLog& log) {
  std::ostringstream out;
  write_csv(log, out);
  return out.str();
}

void momentum() {
  const auto t0 = Clock::now();
  const auto d = momentum_drift(5.0, 1e-3);
  const double elapsed = seconds_since(t0);
  const double p_tol = 1e-5 * d.m_uam;
  const bool pass = d.dP < p_tol && d.dL < 1e-4 && elapsed < 10.0;
  report(1, pass, "free-floating momentum conservation, 5 s at dt = 1e-3",
         fmt("|dP| = %.3e < %.3e, |dL| = %.3e < 1e-4, %.2f s < 10 s", d.dP, p_tol, d.dL, elapsed));
}

void fractional() {
  const auto t0 = Clock::now();
  const auto acc = check_gl_derivative_accuracy(1e-3);
  const auto order = check_gl_convergence_order(1e-3);
  const double elapsed = seconds_since(t0);
  report(2, acc.pass && order.pass && elapsed < 1.0, "GL derivative of t, order 0.5, at t = 1",
         fmt("relative error %.3e < 1e-2, observed order %.3f >= 0.9, %.3f s < 1 s", acc.measured, order.measured,
             elapsed));
}

void kinematics() {
  const auto jac = check_jacobians(100, 1e-6, 7);
  const auto rate = check_inertia_rate();
  report(3, jac.pass && rate.pass, "Jacobians and inertia rate vs finite differences",
         fmt("Jacobian max deviation %.3e < 1e-6, inertia-rate relative deviation %.3e < 1e-4", jac.measured,
             rate.measured));
}

void hover(const Comparison& cmp, const ScenarioConfig& cfg) {
  bool pass = true;
  std::string detail;
  for (const auto& log : cmp.logs) {
    double worst = 0.0;
    for (const auto& r : log.rows) {
      if (r.t >= 9.0 - 1e-9 && r.t <= 10.0 + 1e-9) worst = std::max(worst, std::abs(-r.p.z() - cfg.hover_altitude));
    }
    const bool ok = !log.diverged && worst <= 0.010;
    pass = pass && ok;
    detail += to_string(log.controller) + fmt(" |alt - 1| on [9, 10] s = %.2e; ", worst);
  }
  const double fo_max = cmp.reports[2].max_altitude;
  pass = pass && fo_max <= 1.02;
  detail += fmt("FOFTSMC max altitude during joint motion %.6f m <= 1.02", fo_max);
  report(4, pass, "hover fidelity", detail);
}

void ordering(const Comparison& cmp, double elapsed) {
  bool pass = !cmp.logs[0].diverged && !cmp.logs[1].diverged && !cmp.logs[2].diverged;
  std::string detail;
  for (int c : {0, 1, 3}) {
    const double pid = cmp.reports[0].channels[c].max_abs;
    const double ft = cmp.reports[1].channels[c].max_abs;
    const double fo = cmp.reports[2].channels[c].max_abs;
    pass = pass && fo < ft && ft < pid;
    detail += std::string(kChannels[c]) + fmt(": %.3e < %.3e < %.3e; ", fo, ft, pid);
  }
  const double fo_x = cmp.reports[2].channels[0].max_abs;
  pass = pass && fo_x < 2e-3 && elapsed < 120.0;
  detail += fmt("FOFTSMC max |e_x| %.3e < 2e-3; three runs %.1f s < 120 s", fo_x, elapsed);
  report(5, pass, "FOFTSMC < FTSMC < PID on max |e_x|, |e_y|, |e_phi| over [10, 40] s", detail);
}

// Pure attitude step: level hover thrust, arm folded, reference held at zero.
struct StepResult {
  double entry = -1.0;
  double bound = 0.0;
  double s0 = 0.0;
};

StepResult attitude_step(double h1, double h2) {
  ScenarioConfig cfg;
  cfg.joints = JointMode::Static;
  cfg.smc.attitude_gains = {h1, h2};
  const SmcConfig smc = cfg.smc_config();
  const PlantParams params = cfg.plant();
  const Plant plant(params, cfg.arm, [](double) { return joint_trajectory(0.0, 1.0); }, cfg.fd_step);
  SlidingModeController ctl(smc);

  VehicleState s;
  s.phi.x() = 0.1;
  Vector3 v_dot = Vector3::Zero(), w_dot = Vector3::Zero();
  StepResult out;
  const double dt = cfg.dt;
  for (int k = 0; k <= 5000; ++k) {
    const double t = k * dt;
    const auto mi = plant.inertia_at(t);
    const auto d = coupling_disturbance(s, mi, params, w_dot, v_dot);
    Vector3 S;
    const Vector3 tau = ctl.attitude_control(s, Vector3::Zero(), Vector3::Zero(), Vector3::Zero(), d.tau_cd, &S);
    if (k == 0) {
      out.bound = reaching_time_bound(0.5 * S.squaredNorm(), smc.attitude_gains, t);
      out.s0 = std::abs(S.x());
    }
    if (std::abs(S.x()) < smc.attitude_epsilon) {
      out.entry = t;
      break;
    }
    const ControlWrench u{params.mass.m_uam() * params.g / (std::cos(s.phi.x()) * std::cos(s.phi.y())), tau};
    const auto cd = coupled_derivative(s, u, mi, params);
    v_dot = cd.deriv.v_dot;
    w_dot = cd.deriv.omega_dot;
    s = plant.step(t, s, u, dt);
  }
  return out;
}

void reaching_time() {
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> gain(0.5, 4.0);
  int ok = 0;
  double worst_margin = 1e300;
  std::string draws;
  double s0 = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double h1 = gain(rng), h2 = gain(rng);
    const auto r = attitude_step(h1, h2);
    const bool pass = r.entry >= 0.0 && r.entry <= r.bound;
    ok += pass;
    worst_margin = std::min(worst_margin, r.bound - r.entry);
    s0 = std::max(s0, r.s0);
    draws += fmt("(%.2f, %.2f): entry %.4f s, bound %.4f s; ", h1, h2, r.entry, r.bound);
  }
  report(6, ok == 10, "attitude step 0.1 rad, first entry into the layer within the reaching-time bound",
         fmt("%g/10 draws, smallest margin %.3e s; |S_phi(0)| <= %.2e vs layer %.2e; ", ok, worst_margin, s0,
             ScenarioConfig{}.smc_config().attitude_epsilon) +
             draws);
}

void lyapunov(const RunLog& fo, const ScenarioConfig& cfg) {
  const double eps_p = cfg.smc_config().epsilon, eps_a = cfg.smc_config().attitude_epsilon;
  int checked_out = 0, checked_in = 0, violations = 0;
  double peak_p = 0.0, peak_a = 0.0;
  for (std::size_t k = 0; k + 1 < fo.rows.size(); ++k) {
    const auto& a = fo.rows[k];
    peak_p = std::max(peak_p, a.S_pos.cwiseAbs().maxCoeff());
    peak_a = std::max(peak_a, a.S_att.cwiseAbs().maxCoeff());
    const auto& b = fo.rows[k + 1];
    if ((a.S_pos.array().abs() > eps_p).all()) {
      ++checked_out;
      if (b.S_pos.squaredNorm() > a.S_pos.squaredNorm()) ++violations;
    }
    if ((a.S_att.array().abs() > eps_a).all()) {
      ++checked_in;
      if (b.S_att.squaredNorm() > a.S_att.squaredNorm()) ++violations;
    }
  }
  report(7, violations == 0, "V_out and V_in non-increasing outside the boundary layer (FOFTSMC run)",
         fmt("%g violations; %g position pairs and %g attitude pairs outside the layer", violations, checked_out,
             checked_in) +
             fmt("; peak |S| position %.2e (layer %.2e), attitude %.2e (layer %.2e)", peak_p, eps_p, peak_a, eps_a));
}

void degeneration(const RunLog& ft, const ScenarioConfig& base) {
  ScenarioConfig cfg = base;
  cfg.controller = ControllerKind::FOFTSMC;
  cfg.smc.position.gamma1 = cfg.smc.position.gamma2 = 1.0;
  cfg.smc.attitude.gamma1 = cfg.smc.attitude.gamma2 = 1.0;
  const bool same = csv_of(run_scenario(cfg)) == csv_of(ft);
  report(8, same, "FOFTSMC with unit orders reproduces the FTSMC log bit for bit",
         same ? "logs identical" : "logs differ");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void determinism(const std::string& cli) {
  const auto dir = std::filesystem::temp_directory_path() / "aerial_acceptance";
  std::filesystem::create_directories(dir);
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "# default scenario, arm moving from 10 s\ncontroller = foftsmc\nduration = 15\n";
  }
  std::string sizes;
  bool ok = true;
  for (const char* name : {"a.csv", "b.csv"}) {
    const std::string cmd =
        "\"" + cli + "\" run \"" + (dir / "run.cfg").string() + "\" --out \"" + (dir / name).string() + "\" > /dev/null";
    ok = ok && std::system(cmd.c_str()) == 0;
  }
  const std::string a = slurp(dir / "a.csv"), b = slurp(dir / "b.csv");
  ok = ok && !a.empty() && a == b;
  report(9, ok, "repeated CLI runs write byte-identical CSV logs",
         fmt("%g bytes each, ", static_cast<double>(a.size())) + (a == b ? "identical" : "different"));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path to amsim>\n");
    return 2;
  }
  try {
    momentum();
    fractional();
    kinematics();

    const ScenarioConfig cfg;
    const auto t0 = Clock::now();
    const Comparison cmp = compare_controllers(cfg);
    const double elapsed = seconds_since(t0);
    hover(cmp, cfg);
    ordering(cmp, elapsed);
    reaching_time();
    lyapunov(cmp.logs[2], cfg);
    degeneration(cmp.logs[1], cfg);
    determinism(argv[1]);
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
