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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "aerial/control.hpp"

namespace aerial {

namespace {

// Integrates err into state unless the output is pinned at its limit and the
// error would push it further (conditional anti-windup).
void integrate(Vector3& state, const Vector3& err, const Vector3& unclamped, double limit, double state_limit,
               double dt) {
  for (int i = 0; i < 3; ++i) {
    const bool saturated = std::abs(unclamped(i)) > limit && err(i) * unclamped(i) > 0.0;
    if (!saturated) {
      state(i) = std::clamp(state(i) + err(i) * dt, -state_limit, state_limit);
    }
  }
}

Vector3 clamp_each(const Vector3& x, double limit) { return x.cwiseMax(-limit).cwiseMin(limit); }

}  // namespace

void PidGains::validate() const {
  const bool finite = kp_pos.allFinite() && kp_vel.allFinite() && ki_vel.allFinite() && kd_vel.allFinite() &&
                      kp_att.allFinite() && kp_rate.allFinite() && ki_rate.allFinite() && kd_rate.allFinite();
  if (!finite) throw InvalidParameter("PID gains must be finite");
  if (!(accel_limit > 0.0 && torque_limit > 0.0 && integral_limit > 0.0 && d_cutoff_hz > 0.0)) {
    throw InvalidParameter("PID limits and derivative cutoff must be positive");
  }
}

PidCascade::PidCascade(const PidConfig& cfg) : cfg_(cfg) { cfg_.gains.validate(); }

ControlOutput PidCascade::update(const ControlInput& in) {
  const PidGains& k = cfg_.gains;
  const double dt = cfg_.dt;
  const double rc = 1.0 / (2.0 * std::numbers::pi * k.d_cutoff_hz);
  const double blend = dt / (rc + dt);
  const VehicleState& x = in.state;
  ControlOutput out;

  // Outer position P with velocity feed-forward.
  vel_sp_ = in.ref.v + k.kp_pos.cwiseProduct(in.ref.p - x.p);
  const Vector3 vel_err = vel_sp_ - x.v;
  if (!first_) {
    vel_d_ += blend * ((vel_err - vel_err_prev_) / dt - vel_d_);
  }
  const Vector3 acc_raw = in.ref.a + k.kp_vel.cwiseProduct(vel_err) + k.ki_vel.cwiseProduct(vel_int_) +
                          k.kd_vel.cwiseProduct(vel_d_);
  out.u_p = clamp_each(acc_raw, k.accel_limit);
  integrate(vel_int_, vel_err, acc_raw, k.accel_limit, k.integral_limit, dt);
  vel_err_prev_ = vel_err;

  const AttitudeCommand cmd =
      thrust_attitude_inversion(out.u_p, in.ref.psi, cfg_.plant.mass.m_uam(), cfg_.plant.g, cfg_.tilt_limit);
  out.wrench.F = cmd.F;
  out.att_ref = Vector3(cmd.phi_ref, cmd.theta_ref, in.ref.psi);

  Vector3 att_err = out.att_ref - x.phi;
  att_err(2) = std::remainder(att_err(2), 2.0 * std::numbers::pi);
  const Vector3 rate_sp = k.kp_att.cwiseProduct(att_err);
  const Vector3 rate_err = rate_sp - x.omega;
  if (!first_) {
    rate_d_ += blend * ((rate_err - rate_err_prev_) / dt - rate_d_);
  }
  const Vector3 tau_raw =
      k.kp_rate.cwiseProduct(rate_err) + k.ki_rate.cwiseProduct(rate_int_) + k.kd_rate.cwiseProduct(rate_d_);
  out.wrench.tau = clamp_each(tau_raw, k.torque_limit);
  integrate(rate_int_, rate_err, tau_raw, k.torque_limit, k.integral_limit, dt);
  rate_err_prev_ = rate_err;

  first_ = false;
  return out;
}

}  // namespace aerial
