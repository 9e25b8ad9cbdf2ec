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

#include "aerial/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include <Eigen/Eigenvalues>

#include "aerial/dynamics.hpp"
#include "aerial/frac_ops.hpp"
#include "aerial/kinematics.hpp"
#include "aerial/mutable_inertia.hpp"
#include "aerial/scenario.hpp"

namespace aerial {

namespace {

double gl_derivative_of_ramp(double dt) {
  const auto n = static_cast<std::size_t>(std::llround(1.0 / dt));
  SampleHistory<double> h(dt, n + 1);
  for (std::size_t k = 0; k <= n; ++k) h.append(static_cast<double>(k) * dt);
  return frac_derivative(h, 0.5);
}

const double kGammaOneHalf = std::tgamma(1.5);

Vector4 random_configuration(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  return Vector4(u(rng), u(rng), u(rng), u(rng));
}

Vector3 vee(const Matrix3& m) { return 0.5 * Vector3(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1)); }

}  // namespace

OracleResult make_result(std::string name, double measured, double tolerance) {
  return {std::move(name), measured, tolerance, std::isfinite(measured) && measured < tolerance};
}

OracleResult check_gl_weights() {
  const auto w = gl_weights(0.5, 4).w;
  const double expected[] = {1.0, -0.5, -0.125, -0.0625};
  double dev = 0.0;
  for (int k = 0; k < 4; ++k) dev = std::max(dev, std::abs(w[k] - expected[k]));
  return make_result("gl weights, order 0.5", dev, 1e-15);
}

OracleResult check_gl_derivative_accuracy(double dt) {
  const double exact = 1.0 / kGammaOneHalf;
  return make_result("GL derivative of t, order 0.5 (relative)", std::abs(gl_derivative_of_ramp(dt) - exact) / exact,
                     1e-2);
}

OracleResult check_gl_convergence_order(double dt) {
  const double exact = 1.0 / kGammaOneHalf;
  const double e1 = std::abs(gl_derivative_of_ramp(dt) - exact);
  const double e2 = std::abs(gl_derivative_of_ramp(0.5 * dt) - exact);
  const double order = std::log2(e1 / e2);
  return {"GL observed convergence order (minimum 0.9)", order, 0.9, std::isfinite(order) && order >= 0.9};
}

OracleResult check_gl_integral_accuracy(double dt) {
  const auto n = static_cast<std::size_t>(std::llround(1.0 / dt));
  SampleHistory<double> h(dt, n + 1);
  for (std::size_t k = 0; k <= n; ++k) h.append(1.0);
  const double exact = 1.0 / kGammaOneHalf;
  return make_result("GL integral of 1, order 0.5 (relative)", std::abs(frac_integral(h, 0.5) - exact) / exact,
                     1e-2);
}

OracleResult check_jacobians(int configurations, double step, unsigned seed) {
  const auto arm = default_arm();
  std::mt19937 rng(seed);
  double dev = 0.0;
  for (int c = 0; c < configurations; ++c) {
    const Vector4 q = random_configuration(rng);
    const auto kin = link_com_kinematics(arm, q, Vector4::Zero().eval());
    for (int i = 0; i < 4; ++i) {
      Vector4 qp = q, qm = q;
      qp(i) += step;
      qm(i) -= step;
      const auto kp = link_com_kinematics(arm, qp, Vector4::Zero().eval());
      const auto km = link_com_kinematics(arm, qm, Vector4::Zero().eval());
      for (std::size_t j = 0; j < kin.size(); ++j) {
        const Vector3 jv = (kp[j].com_pos - km[j].com_pos) / (2.0 * step);
        const Matrix3 r_dot = (kp[j].rotation() - km[j].rotation()) / (2.0 * step);
        const Vector3 jw = vee(r_dot * kin[j].rotation().transpose());
        dev = std::max(dev, (jv - kin[j].jac_v.col(i)).cwiseAbs().maxCoeff());
        dev = std::max(dev, (jw - kin[j].jac_w.col(i)).cwiseAbs().maxCoeff());
      }
    }
  }
  return make_result("link Jacobians vs central differences", dev, 1e-6);
}

OracleResult check_inertia_rate() {
  const auto arm = default_arm();
  const double h = 1e-5;
  auto inertia = [&](double t) {
    const auto js = joint_trajectory(t, 10.0);
    return manipulator_inertia(link_com_kinematics(arm, js.q, js.qd), arm.links);
  };
  double dev = 0.0;
  for (int t = 11; t <= 20; ++t) {
    const auto js = joint_trajectory(t, 10.0);
    const Matrix3 analytic = manipulator_inertia_rate(link_com_kinematics(arm, js.q, js.qd), arm.links, js.qd);
    const Matrix3 numeric = (inertia(t + h) - inertia(t - h)) / (2.0 * h);
    dev = std::max(dev, (analytic - numeric).norm() / analytic.norm());
  }
  return make_result("manipulator inertia rate vs central difference (relative)", dev, 1e-4);
}

OracleResult check_inertia_psd(int configurations, unsigned seed) {
  const auto arm = default_arm();
  std::mt19937 rng(seed);
  double worst = 0.0;
  for (int c = 0; c < configurations; ++c) {
    const Vector4 q = random_configuration(rng);
    const Matrix3 I = manipulator_inertia(link_com_kinematics(arm, q, Vector4::Zero().eval()), arm.links);
    const double lo = Eigen::SelfAdjointEigenSolver<Matrix3>(I, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    worst = std::max(worst, -lo);
  }
  return make_result("manipulator inertia positive semidefinite", worst, 1e-12);
}

MomentumDrift momentum_drift(double duration, double dt) {
  ScenarioConfig cfg;
  cfg.gravity = 0.0;
  const Plant plant(cfg.plant(), cfg.arm, [](double t) { return joint_trajectory(t, 0.0); }, cfg.fd_step);
  const ControlWrench u{0.0, Vector3::Zero()};
  VehicleState s;
  const auto start = momentum_functionals(s, plant.inertia_at(0.0), plant.params());
  const auto n = static_cast<std::size_t>(std::llround(duration / dt));
  for (std::size_t k = 0; k < n; ++k) s = plant.step(static_cast<double>(k) * dt, s, u, dt);
  const auto end = momentum_functionals(s, plant.inertia_at(static_cast<double>(n) * dt), plant.params());
  return {(end.P - start.P).norm(), (end.L - start.L).norm(), plant.params().mass.m_uam()};
}

std::vector<OracleResult> check_momentum(double duration, double dt) {
  const auto d = momentum_drift(duration, dt);
  return {make_result("free-floating linear momentum drift [kg m/s]", d.dP, 1e-5 * d.m_uam),
          make_result("free-floating angular momentum drift [kg m^2/s]", d.dL, 1e-4)};
}

OracleResult check_rk4_decay() {
  VehicleState s = VehicleState::from_vector(Vector12::Ones());
  const double dt = 1e-3;
  for (int k = 0; k < 1000; ++k) {
    s = rk4_step(s, dt, [](double, const VehicleState& x) -> Vector12 { return -x.to_vector(); });
  }
  const double dev = (s.to_vector().array() - std::exp(-1.0)).abs().maxCoeff();
  return make_result("RK4 on x' = -x over 1 s", dev, 1e-10);
}

OracleResult check_gyroscopic() {
  PlantParams params;
  params.I_b = Vector3(1.0, 2.0, 3.0).asDiagonal();
  VehicleState s;
  s.omega = Vector3::Ones();
  const auto d = state_derivative(s, ControlWrench{0.0, Vector3::Zero()}, DisturbanceWrench{}, params);
  const Vector3 expected(-1.0, 1.0, -1.0 / 3.0);
  return make_result("gyroscopic rate coupling", (d.omega_dot - expected).cwiseAbs().maxCoeff(), 1e-15);
}

std::vector<OracleResult> run_suite(const std::string& suite) {
  const bool all = suite == "all";
  if (!all && suite != "frac" && suite != "kinematics" && suite != "dynamics") {
    throw ConfigError("unknown validation suite '" + suite + "'");
  }
  std::vector<OracleResult> out;
  if (all || suite == "frac") {
    out.push_back(check_gl_weights());
    out.push_back(check_gl_derivative_accuracy());
    out.push_back(check_gl_convergence_order());
    out.push_back(check_gl_integral_accuracy());
  }
  if (all || suite == "kinematics") {
    out.push_back(check_jacobians());
    out.push_back(check_inertia_rate());
    out.push_back(check_inertia_psd());
  }
  if (all || suite == "dynamics") {
    out.push_back(check_rk4_decay());
    out.push_back(check_gyroscopic());
    for (auto& r : check_momentum()) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace aerial
