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

#include "aerial/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace aerial {

namespace {

constexpr double kGimbalMargin = 1e-6;

void check_gimbal(const Vector3& phi) {
  if (!(std::abs(phi.y()) < std::numbers::pi / 2 - kGimbalMargin)) {
    std::ostringstream msg;
    msg << "pitch " << phi.y() << " rad is at or beyond the Euler singularity";
    throw GimbalLock(msg.str());
  }
}

}  // namespace

Vector12 VehicleState::to_vector() const {
  Vector12 x;
  x << p, phi, v, omega;
  return x;
}

VehicleState VehicleState::from_vector(const Vector12& x) {
  VehicleState s;
  s.p = x.segment<3>(0);
  s.phi = x.segment<3>(3);
  s.v = x.segment<3>(6);
  s.omega = x.segment<3>(9);
  return s;
}

Vector12 StateDerivative::to_vector() const {
  Vector12 x;
  x << p_dot, phi_dot, v_dot, omega_dot;
  return x;
}

Matrix3 rotation_matrix(const Vector3& phi) {
  check_gimbal(phi);
  return (Eigen::AngleAxisd(phi.z(), Vector3::UnitZ()) * Eigen::AngleAxisd(phi.y(), Vector3::UnitY()) *
          Eigen::AngleAxisd(phi.x(), Vector3::UnitX()))
      .toRotationMatrix();
}

Vector3 euler_rate(const Vector3& phi, const Vector3& omega_b) {
  check_gimbal(phi);
  const double sr = std::sin(phi.x()), cr = std::cos(phi.x());
  const double tp = std::tan(phi.y()), cp = std::cos(phi.y());
  Matrix3 w;
  w << 1.0, sr * tp, cr * tp,
       0.0, cr, -sr,
       0.0, sr / cp, cr / cp;
  return w * omega_b;
}

DisturbanceWrench coupling_disturbance(const VehicleState& state, const MutableInertiaSet<double>& mi,
                                       const PlantParams& params, const Vector3& omega_dot, const Vector3& v_dot) {
  const Matrix3 r = rotation_matrix(state.phi);
  const Vector3& w = state.omega;
  const double m_m = params.mass.m_m;
  const double m_uam = params.mass.m_uam();

  DisturbanceWrench d;
  d.F_cd = -m_m * r *
           (w.cross(2.0 * mi.r_oc1_dot - mi.r_oc1.cross(w)) - mi.r_oc1.cross(omega_dot) + mi.r_oc1_ddot);

  const Vector3 specific_gravity_body = r.transpose() * (params.g * kE3 - v_dot);
  d.tau_cd = (mi.I_m * w).cross(w) - mi.I_m * omega_dot - mi.I_m_dot * w - mi.h_dot - w.cross(mi.h) +
             m_uam * mi.r_oc.cross(specific_gravity_body);
  return d;
}

StateDerivative state_derivative(const VehicleState& state, const ControlWrench& u, const DisturbanceWrench& d,
                                 const PlantParams& params) {
  const Matrix3 r = rotation_matrix(state.phi);
  const double m_uam = params.mass.m_uam();
  StateDerivative out;
  out.p_dot = state.v;
  out.phi_dot = euler_rate(state.phi, state.omega);
  out.v_dot = (-u.F * r * kE3 + d.F_cd) / m_uam + params.g * kE3;
  out.omega_dot = params.I_b.ldlt().solve(u.tau + (params.I_b * state.omega).cross(state.omega) + d.tau_cd);
  return out;
}

CoupledDerivative coupled_derivative(const VehicleState& state, const ControlWrench& u,
                                     const MutableInertiaSet<double>& mi, const PlantParams& params) {
  // The wrench is affine in (v', w'); recover its linear part by probing and
  // solve  m v' - F_cd = -F R e3 + m g e3,  I_b w' - tau_cd = tau + (I_b w) x w.
  const Vector3 zero = Vector3::Zero();
  const DisturbanceWrench base = coupling_disturbance(state, mi, params, zero, zero);
  Eigen::Matrix<double, 6, 6> jac;
  for (int i = 0; i < 3; ++i) {
    const DisturbanceWrench dv = coupling_disturbance(state, mi, params, zero, Vector3::Unit(i));
    const DisturbanceWrench dw = coupling_disturbance(state, mi, params, Vector3::Unit(i), zero);
    jac.block<3, 1>(0, i) = dv.F_cd - base.F_cd;
    jac.block<3, 1>(3, i) = dv.tau_cd - base.tau_cd;
    jac.block<3, 1>(0, 3 + i) = dw.F_cd - base.F_cd;
    jac.block<3, 1>(3, 3 + i) = dw.tau_cd - base.tau_cd;
  }

  const Matrix3 r = rotation_matrix(state.phi);
  const double m_uam = params.mass.m_uam();
  Eigen::Matrix<double, 6, 6> lhs = -jac;
  lhs.block<3, 3>(0, 0) += m_uam * Matrix3::Identity();
  lhs.block<3, 3>(3, 3) += params.I_b;
  Eigen::Matrix<double, 6, 1> rhs;
  rhs << -u.F * r * kE3 + m_uam * params.g * kE3 + base.F_cd,
         u.tau + (params.I_b * state.omega).cross(state.omega) + base.tau_cd;
  const Eigen::Matrix<double, 6, 1> acc = lhs.partialPivLu().solve(rhs);

  CoupledDerivative out;
  out.disturbance = coupling_disturbance(state, mi, params, acc.tail<3>(), acc.head<3>());
  out.deriv = state_derivative(state, u, out.disturbance, params);
  return out;
}

VehicleState rk4_step(const VehicleState& state, double dt,
                      const std::function<Vector12(double, const VehicleState&)>& provider, double t) {
  if (!(dt > 0.0)) {
    throw InvalidParameter("integration step must be positive");
  }
  const Vector12 x = state.to_vector();
  const Vector12 k1 = provider(0.0, state);
  const Vector12 k2 = provider(0.5 * dt, VehicleState::from_vector(x + 0.5 * dt * k1));
  const Vector12 k3 = provider(0.5 * dt, VehicleState::from_vector(x + 0.5 * dt * k2));
  const Vector12 k4 = provider(dt, VehicleState::from_vector(x + dt * k3));
  const Vector12 next = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!next.allFinite()) {
    std::ostringstream msg;
    msg << "state became non-finite at t = " << t + dt << " s";
    throw Divergence(msg.str(), t + dt);
  }
  return VehicleState::from_vector(next);
}

Momentum momentum_functionals(const VehicleState& state, const MutableInertiaSet<double>& mi,
                              const PlantParams& params) {
  const Matrix3 r = rotation_matrix(state.phi);
  const double m_uam = params.mass.m_uam();
  const Vector3& w = state.omega;
  Momentum out;
  out.P = m_uam * state.v + m_uam * r * (mi.r_oc_dot + w.cross(mi.r_oc));
  out.L = state.p.cross(out.P) + m_uam * (r * mi.r_oc).cross(state.v) + r * ((params.I_b + mi.I_m) * w + mi.h);
  return out;
}

Plant::Plant(PlantParams params, ArmModel<double> arm, JointSource joints, double fd_step)
    : params_(std::move(params)), arm_(std::move(arm)), joints_(std::move(joints)), fd_step_(fd_step) {
  if (!joints_) {
    throw InvalidParameter("plant needs a joint trajectory source");
  }
  if (!(params_.g >= 0.0) || params_.mass.m_b <= 0.0) {
    throw InvalidParameter("plant mass must be positive and gravity non-negative");
  }
}

MutableInertiaSet<double> Plant::inertia_at(double t) const {
  return mutable_inertia(arm_, params_.mass, joints_(t), fd_step_);
}

CoupledDerivative Plant::evaluate(double t, const VehicleState& state, const ControlWrench& u) const {
  return coupled_derivative(state, u, inertia_at(t), params_);
}

VehicleState Plant::step(double t, const VehicleState& state, const ControlWrench& u, double dt) const {
  return rk4_step(
      state, dt, [&](double offset, const VehicleState& s) { return evaluate(t + offset, s, u).deriv.to_vector(); },
      t);
}

}  // namespace aerial
