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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "aerial/dynamics.hpp"
#include "aerial/scenario.hpp"

namespace aerial {
namespace {

Matrix3 rot_x(double a) {
  Matrix3 m;
  m << 1, 0, 0, 0, std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a);
  return m;
}
Matrix3 rot_y(double a) {
  Matrix3 m;
  m << std::cos(a), 0, std::sin(a), 0, 1, 0, -std::sin(a), 0, std::cos(a);
  return m;
}
Matrix3 rot_z(double a) {
  Matrix3 m;
  m << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
  return m;
}

PlantParams default_params() { return ScenarioConfig{}.plant(); }

MutableInertiaSet<double> static_arm() {
  const auto arm = default_arm();
  return mutable_inertia(arm, mass_budget(2.65, arm.links), joint_trajectory(0.0, 10.0), 1e-5);
}

TEST(Rotation, IdentityAndYaw) {
  EXPECT_TRUE(rotation_matrix(Vector3::Zero()).isApprox(Matrix3::Identity(), 1e-15));
  const Vector3 y = rotation_matrix(Vector3(0, 0, std::numbers::pi / 2)) * Vector3::UnitX();
  EXPECT_LT((y - Vector3::UnitY()).norm(), 1e-15);
}

TEST(Rotation, ZyxComposition) {
  const Vector3 phi(0.3, -0.4, 1.1);
  EXPECT_LT((rotation_matrix(phi) - rot_z(phi.z()) * rot_y(phi.y()) * rot_x(phi.x())).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Rotation, GimbalLockRejected) {
  EXPECT_THROW(rotation_matrix(Vector3(0, std::numbers::pi / 2, 0)), GimbalLock);
  EXPECT_THROW(euler_rate(Vector3(0, -std::numbers::pi / 2, 0), Vector3::Ones()), GimbalLock);
}

TEST(EulerRate, LevelAndRest) {
  const Vector3 w(0.2, -0.5, 0.9);
  EXPECT_TRUE(euler_rate(Vector3::Zero(), w).isApprox(w, 1e-15));
  EXPECT_EQ(euler_rate(Vector3(0.1, 0.2, 0.3), Vector3::Zero()), Vector3::Zero());
}

TEST(EulerRate, ConsistentWithRotationFlow) {
  // R' = R S(omega_b) along the Euler-angle flow.
  const Vector3 phi(0.2, -0.3, 0.7), w(0.5, -0.4, 0.8);
  const double h = 1e-6;
  const Vector3 rate = euler_rate(phi, w);
  const Matrix3 fd = (rotation_matrix(phi + h * rate) - rotation_matrix(phi - h * rate)) / (2 * h);
  Matrix3 s;
  s << 0, -w.z(), w.y(), w.z(), 0, -w.x(), -w.y(), w.x(), 0;
  EXPECT_LT((fd - rotation_matrix(phi) * s).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(CouplingDisturbance, HoverStaticArmIsGravityTorque) {
  const auto params = default_params();
  const auto mi = static_arm();
  const auto d = coupling_disturbance(VehicleState{}, mi, params, Vector3::Zero(), Vector3::Zero());
  EXPECT_LT(d.F_cd.norm(), 1e-15);
  // M g (r x e3) = M g (r_y, -r_x, 0)
  const double mg = params.mass.m_uam() * params.g;
  EXPECT_NEAR(d.tau_cd.x(), mg * mi.r_oc.y(), 1e-14);
  EXPECT_NEAR(d.tau_cd.y(), -mg * mi.r_oc.x(), 1e-14);
  EXPECT_NEAR(d.tau_cd.z(), 0.0, 1e-14);
}

TEST(CouplingDisturbance, HandExample) {
  const auto params = default_params();
  MutableInertiaSet<double> mi;
  mi.r_oc = Vector3(0.05, 0.0, -0.02);
  mi.r_oc1 = mi.r_oc * params.mass.m_uam() / params.mass.m_m;
  const auto d = coupling_disturbance(VehicleState{}, mi, params, Vector3::Zero(), Vector3::Zero());
  const double mg = params.mass.m_uam() * params.g;
  EXPECT_LT((d.tau_cd - mg * Vector3(0.0, -0.05, 0.0)).norm(), 1e-14);
}

TEST(CouplingDisturbance, MasslessArmIsZero) {
  auto arm = default_arm();
  for (auto& l : arm.links) {
    l.mass = 0.0;
    l.inertia_local.setZero();
  }
  PlantParams params;
  params.mass = mass_budget(2.65, arm.links);
  const auto mi = mutable_inertia(arm, params.mass, joint_trajectory(13.0, 10.0), 1e-5);
  VehicleState s;
  s.omega = Vector3(0.1, -0.2, 0.3);
  s.v = Vector3(1, 0, 0);
  const auto d = coupling_disturbance(s, mi, params, Vector3(1, 2, 3), Vector3(0.5, 0, 0));
  EXPECT_EQ(d.F_cd, Vector3::Zero());
  EXPECT_LT(d.tau_cd.norm(), 1e-15);
}

TEST(StateDerivative, HoverEquilibrium) {
  const auto params = default_params();
  const auto d = state_derivative(VehicleState{}, ControlWrench{params.mass.m_uam() * params.g, Vector3::Zero()},
                                  DisturbanceWrench{}, params);
  EXPECT_LT(d.v_dot.norm(), 1e-14);
  EXPECT_EQ(d.omega_dot, Vector3::Zero());
}

TEST(StateDerivative, FreeFall) {
  const auto params = default_params();
  const auto d = state_derivative(VehicleState{}, ControlWrench{0.0, Vector3::Zero()}, DisturbanceWrench{}, params);
  EXPECT_TRUE(d.v_dot.isApprox(Vector3(0, 0, params.g)));
}

TEST(StateDerivative, GyroscopicCoupling) {
  PlantParams params;
  params.I_b = Vector3(1, 2, 3).asDiagonal();
  VehicleState s;
  s.omega = Vector3::Ones();
  const auto d = state_derivative(s, ControlWrench{0.0, Vector3::Zero()}, DisturbanceWrench{}, params);
  // (I w) x w = (1, 2, 3) x (1, 1, 1) = (-1, 2, -1); divided by diag(1, 2, 3).
  EXPECT_LT((d.omega_dot - Vector3(-1.0, 1.0, -1.0 / 3.0)).norm(), 1e-15);
}

TEST(CoupledDerivative, DisturbanceIsSelfConsistent) {
  const auto params = default_params();
  const auto mi = mutable_inertia(default_arm(), params.mass, joint_trajectory(13.0, 10.0), 1e-5);
  VehicleState s;
  s.phi = Vector3(0.05, -0.03, 0.2);
  s.omega = Vector3(0.2, -0.1, 0.05);
  s.v = Vector3(0.3, 0.1, -0.2);
  const ControlWrench u{33.0, Vector3(0.01, -0.02, 0.005)};
  const auto cd = coupled_derivative(s, u, mi, params);
  const auto d = coupling_disturbance(s, mi, params, cd.deriv.omega_dot, cd.deriv.v_dot);
  EXPECT_LT((d.F_cd - cd.disturbance.F_cd).norm(), 1e-10);
  EXPECT_LT((d.tau_cd - cd.disturbance.tau_cd).norm(), 1e-10);
  const auto again = state_derivative(s, u, d, params);
  EXPECT_LT((again.to_vector() - cd.deriv.to_vector()).norm(), 1e-9);
}

TEST(Rk4, ZeroDerivativeKeepsState) {
  VehicleState s;
  s.p = Vector3(1, 2, 3);
  s.omega = Vector3(0.1, 0.2, 0.3);
  const auto next = rk4_step(s, 0.01, [](double, const VehicleState&) -> Vector12 { return Vector12::Zero(); });
  EXPECT_EQ(next.to_vector(), s.to_vector());
}

TEST(Rk4, ExponentialDecay) {
  VehicleState s = VehicleState::from_vector(Vector12::Ones());
  for (int k = 0; k < 1000; ++k) {
    s = rk4_step(s, 1e-3, [](double, const VehicleState& x) -> Vector12 { return -x.to_vector(); });
  }
  EXPECT_LT((s.to_vector().array() - std::exp(-1.0)).abs().maxCoeff(), 1e-10);
}

TEST(Momentum, ZeroAtRest) {
  const auto m = momentum_functionals(VehicleState{}, static_arm(), default_params());
  EXPECT_EQ(m.P, Vector3::Zero());
  EXPECT_LT(m.L.norm(), 1e-15);
}

TEST(Momentum, ConservedWhenFreeFloating) {
  ScenarioConfig cfg;
  cfg.gravity = 0.0;
  const Plant plant(cfg.plant(), cfg.arm, [](double t) { return joint_trajectory(t, 0.0); }, cfg.fd_step);
  VehicleState s;
  s.omega = Vector3(0.05, -0.02, 0.1);
  s.v = Vector3(0.1, 0.0, -0.05);
  const auto m0 = momentum_functionals(s, plant.inertia_at(0.0), plant.params());
  const double dt = 1e-3;
  for (int k = 0; k < 1000; ++k) s = plant.step(k * dt, s, ControlWrench{0.0, Vector3::Zero()}, dt);
  const auto m1 = momentum_functionals(s, plant.inertia_at(1.0), plant.params());
  EXPECT_LT((m1.P - m0.P).norm(), 1e-5 * plant.params().mass.m_uam());
  EXPECT_LT((m1.L - m0.L).norm(), 1e-4);
}

TEST(Plant, NonFiniteStateDiverges) {
  const Plant plant(default_params(), default_arm(), [](double t) { return joint_trajectory(t, 10.0); });
  VehicleState s;
  s.v.x() = std::nan("");
  EXPECT_THROW(plant.step(0.0, s, ControlWrench{}, 1e-3), Error);
}

}  // namespace
}  // namespace aerial
