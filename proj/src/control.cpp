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

#include "aerial/control.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace aerial {

namespace {

double sign(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }

std::size_t window_samples(double window, double dt) {
  if (!(window > 0.0) || !(dt > 0.0)) {
    throw InvalidParameter("memory window and step must be positive");
  }
  return static_cast<std::size_t>(std::llround(window / dt)) + 1;
}

double wrap_angle(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParameter(what);
}

}  // namespace

double signed_power(double x, double a) {
  require(a > 0.0, "signed_power exponent must be positive");
  if (x == 0.0) return 0.0;
  return sign(x) * std::pow(std::abs(x), a);
}

void SurfaceParams::validate() const {
  // Orders of one are admitted: they give the integer-order surface.
  require(gamma1 > 0.0 && gamma1 <= 1.0, "surface gamma1 must lie in (0, 1]");
  require(gamma2 > 0.0 && gamma2 <= 1.0, "surface gamma2 must lie in (0, 1]");
  require(D_exp > 1.0 && D_exp < 2.0, "surface D exponent must lie in (1, 2)");
  require(I_exp > 0.0, "surface I exponent must be positive");
  require(c1 > 0.0 && c2 > 0.0, "surface gains c1, c2 must be positive");
}

void ReachingGains::validate() const { require(h1 > 0.0 && h2 > 0.0, "reaching gains must be positive"); }

TrackingError::TrackingError(const SurfaceParams& sp, double dt, std::size_t window)
    : sp_(sp),
      d_input_(dt, window),
      i_input_(dt, window),
      eq_input_(dt, window),
      surface_d_(sp.gamma1 - 1.0, dt, window),
      equivalent_d_(sp.gamma1, dt, window),
      integral_(-sp.gamma2, dt, window) {
  sp_.validate();
}

void TrackingError::update(double e, double e_dot) {
  e_ = e;
  e_dot_ = e_dot;
  const double mag = std::abs(e);
  d_input_.append(sp_.c1 * signed_power(e, sp_.D_exp));
  i_input_.append(sp_.c2 * std::pow(mag, sp_.I_exp));
  eq_input_.append(sp_.c2 * sp_.I_exp * std::pow(std::max(mag, kTerminalFloor), sp_.I_exp - 1.0));
}

void TrackingError::reset() {
  e_ = e_dot_ = 0.0;
  d_input_.clear();
  i_input_.clear();
  eq_input_.clear();
}

double fo_surface(const TrackingError& err) {
  return err.e_dot() + err.surface_d_term() + sign(err.e()) * err.surface_i_term();
}

double equivalent_control(double ref_acc, const TrackingError& err) {
  return ref_acc - err.equivalent_d_term() - err.e_dot() * err.equivalent_i_term();
}

double reaching_control(double S, const ReachingGains& g, double F_cdp, double eps) {
  require(eps > 0.0, "boundary layer width must be positive");
  return -(g.h1 + std::abs(F_cdp) + g.h2 * std::abs(S)) * sat(S / eps);
}

AttitudeCommand thrust_attitude_inversion(const Vector3& u_p, double psi_ref, double mass, double g,
                                          double tilt_limit) {
  const Vector3 s = g * kE3 - u_p;
  const double norm = s.norm();
  if (!(norm >= 1e-6) || !(s.z() > 0.0)) {
    throw InfeasibleCommand("commanded acceleration needs thrust along +z of the body");
  }
  const double cy = std::cos(psi_ref), sy = std::sin(psi_ref);
  AttitudeCommand cmd;
  cmd.F = mass * norm;
  cmd.phi_ref = std::asin(std::clamp((s.x() * sy - s.y() * cy) / norm, -1.0, 1.0));
  cmd.theta_ref = std::atan2(s.x() * cy + s.y() * sy, s.z());
  cmd.phi_ref = std::clamp(cmd.phi_ref, -tilt_limit, tilt_limit);
  cmd.theta_ref = std::clamp(cmd.theta_ref, -tilt_limit, tilt_limit);
  return cmd;
}

double reaching_time_bound(double V0, const ReachingGains& g, double t0) {
  require(V0 >= 0.0, "Lyapunov value must be non-negative");
  g.validate();
  return t0 + std::log(std::sqrt(2.0) * g.h2 * std::sqrt(V0) / g.h1 + 1.0) / g.h2;
}

std::array<AttitudeChannelModel, 3> attitude_channel_models(const Vector3& omega, const Matrix3& I_b,
                                                            const Vector3& tau_cd) {
  const Vector3 lumped = (I_b * omega).cross(omega) + tau_cd;
  std::array<AttitudeChannelModel, 3> out;
  for (int a = 0; a < 3; ++a) {
    const double J = I_b(a, a);
    out[a] = {1.0 / J, -lumped(a) / J};
  }
  return out;
}

CommandFilter::CommandFilter(double wn, double dt) : wn_(wn), dt_(dt) {
  require(wn > 0.0 && dt > 0.0, "reference filter frequency and step must be positive");
}

void CommandFilter::update(const Vector3& r) {
  // Semi-implicit Euler on x'' = wn^2 (r - x) - 2 wn x'.
  xdd_ = wn_ * wn_ * (r - x_) - 2.0 * wn_ * xd_;
  xd_ += dt_ * xdd_;
  x_ += dt_ * xd_;
}

void CommandFilter::reset(const Vector3& r) {
  x_ = r;
  xd_.setZero();
  xdd_.setZero();
}

SmcConfig SmcConfig::integer_order() const {
  SmcConfig c = *this;
  c.position.gamma1 = c.position.gamma2 = 1.0;
  c.attitude.gamma1 = c.attitude.gamma2 = 1.0;
  return c;
}

namespace {
std::array<TrackingError, 3> make_channels(const SurfaceParams& sp, double dt, double window) {
  const std::size_t n = window_samples(window, dt);
  return {TrackingError(sp, dt, n), TrackingError(sp, dt, n), TrackingError(sp, dt, n)};
}
}  // namespace

SlidingModeController::SlidingModeController(const SmcConfig& cfg)
    : cfg_(cfg),
      pos_(make_channels(cfg.position, cfg.dt, cfg.memory_window)),
      att_(make_channels(cfg.attitude, cfg.dt, cfg.memory_window)),
      ref_filter_(cfg.ref_filter_wn, cfg.dt) {
  cfg_.position_gains.validate();
  cfg_.attitude_gains.validate();
  require(cfg_.epsilon > 0.0 && cfg_.attitude_epsilon > 0.0, "boundary layer width must be positive");
}

Vector3 SlidingModeController::position_control(const VehicleState& state, const Reference& ref,
                                                const DisturbanceWrench& d_est, Vector3* surfaces) {
  const double m_uam = cfg_.plant.mass.m_uam();
  Vector3 u = Vector3::Zero();
  for (int i = 0; i < 3; ++i) {
    auto& ch = pos_[i];
    ch.update(state.p(i) - ref.p(i), state.v(i) - ref.v(i));
    const double S = fo_surface(ch);
    const double F_cdp = d_est.F_cd(i) / m_uam;
    u(i) = equivalent_control(ref.a(i), ch) + reaching_control(S, cfg_.position_gains, F_cdp, cfg_.epsilon);
    if (surfaces) (*surfaces)(i) = S;
  }
  return u;
}

Vector3 SlidingModeController::attitude_control(const VehicleState& state, const Vector3& att_ref,
                                                const Vector3& att_ref_dot, const Vector3& att_ref_ddot,
                                                const Vector3& tau_cd_est, Vector3* surfaces) {
  const Vector3 rates = euler_rate(state.phi, state.omega);
  const auto models = attitude_channel_models(state.omega, cfg_.plant.I_b, tau_cd_est);
  Vector3 tau = Vector3::Zero();
  for (int a = 0; a < 3; ++a) {
    auto& ch = att_[a];
    const double e = a == 2 ? wrap_angle(state.phi(a) - att_ref(a)) : state.phi(a) - att_ref(a);
    ch.update(e, rates(a) - att_ref_dot(a));
    const double S = fo_surface(ch);
    const double v = equivalent_control(att_ref_ddot(a), ch) + reaching_control(S, cfg_.attitude_gains, 0.0, cfg_.attitude_epsilon);
    tau(a) = (models[a].mu_a + v) / models[a].lambda_a;
    if (surfaces) (*surfaces)(a) = S;
  }
  return tau;
}

ControlOutput SlidingModeController::update(const ControlInput& in) {
  ControlOutput out;
  out.u_p = position_control(in.state, in.ref, in.d_est, &out.S_pos);
  const AttitudeCommand cmd =
      thrust_attitude_inversion(out.u_p, in.ref.psi, cfg_.plant.mass.m_uam(), cfg_.plant.g, cfg_.tilt_limit);
  out.wrench.F = cmd.F;
  ref_filter_.update(Vector3(cmd.phi_ref, cmd.theta_ref, in.ref.psi));
  out.att_ref = ref_filter_.value();
  out.wrench.tau = attitude_control(in.state, out.att_ref, ref_filter_.rate(), ref_filter_.accel(), in.d_est.tau_cd,
                                    &out.S_att);
  return out;
}

}  // namespace aerial
