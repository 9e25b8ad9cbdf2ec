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
#include <memory>

#include "aerial/dynamics.hpp"
#include "aerial/frac_ops.hpp"
#include "aerial/types.hpp"

namespace aerial {

/// |x|^a sign(x), with signed_power(0, a) = 0.
double signed_power(double x, double a);

/// Boundary-layer replacement of sign(): x clipped to [-1, 1].
inline double sat(double x) { return x > 1.0 ? 1.0 : (x < -1.0 ? -1.0 : x); }

/// Shape of a fractional fast terminal sliding surface
///   S = e' + D^{gamma1 - 1}[c1 sig^D(e)] + sign(e) I^{gamma2}[c2 |e|^I].
/// gamma1 = gamma2 = 1 gives the integer-order surface.
struct SurfaceParams {
  double gamma1 = 0.4;
  double gamma2 = 0.6;
  double D_exp = 1.5;
  double I_exp = 0.8;
  double c1 = 4.0;
  double c2 = 2.0;

  void validate() const;
};

struct ReachingGains {
  double h1 = 1.0;
  double h2 = 2.0;

  void validate() const;
};

/// Lower bound applied to |e| inside |e|^{I-1}.
inline constexpr double kTerminalFloor = 1e-6;

/// Tracking error of one channel with the signal histories its fractional
/// operators read. All histories advance together, once per control step.
class TrackingError {
 public:
  TrackingError(const SurfaceParams& sp, double dt, std::size_t window);

  /// Records the error sample for the current step.
  void update(double e, double e_dot);
  void reset();

  double e() const { return e_; }
  double e_dot() const { return e_dot_; }
  const SurfaceParams& params() const { return sp_; }

  /// D^{gamma1 - 1} [c1 sig^D(e)]
  double surface_d_term() const { return surface_d_.apply(d_input_); }
  /// I^{gamma2} [c2 |e|^I]
  double surface_i_term() const { return integral_.apply(i_input_); }
  /// D^{gamma1} [c1 sig^D(e)]
  double equivalent_d_term() const { return equivalent_d_.apply(d_input_); }
  /// I^{gamma2} [c2 I |e|^{I-1}]
  double equivalent_i_term() const { return integral_.apply(eq_input_); }

 private:
  SurfaceParams sp_;
  double e_ = 0.0;
  double e_dot_ = 0.0;
  SampleHistory<double> d_input_;
  SampleHistory<double> i_input_;
  SampleHistory<double> eq_input_;
  GLOperator<double> surface_d_;
  GLOperator<double> equivalent_d_;
  GLOperator<double> integral_;
};

double fo_surface(const TrackingError& err);

/// p''_r - D^{gamma1}[c1 sig^D(e)] - e' I^{gamma2}[c2 I |e|^{I-1}]
double equivalent_control(double ref_acc, const TrackingError& err);

/// -(h1 + |F_cdp| + h2 |S|) sat(S / eps)
double reaching_control(double S, const ReachingGains& g, double F_cdp, double eps);

struct AttitudeCommand {
  double F = 0.0;
  double phi_ref = 0.0;
  double theta_ref = 0.0;
};

/// Thrust and roll/pitch that realize the commanded acceleration u_p for
/// the given yaw. Attitude references are clipped to +-tilt_limit.
AttitudeCommand thrust_attitude_inversion(const Vector3& u_p, double psi_ref, double mass, double g,
                                          double tilt_limit = 0.5);

/// Finite-time reaching bound t0 + ln(sqrt(2) h2 sqrt(V0) / h1 + 1) / h2.
double reaching_time_bound(double V0, const ReachingGains& g, double t0);

/// Attitude channel w'_a = lambda_a tau_a - mu_a.
struct AttitudeChannelModel {
  double lambda_a = 1.0;
  double mu_a = 0.0;
};

std::array<AttitudeChannelModel, 3> attitude_channel_models(const Vector3& omega, const Matrix3& I_b,
                                                            const Vector3& tau_cd);

struct Reference {
  Vector3 p = Vector3::Zero();
  Vector3 v = Vector3::Zero();
  Vector3 a = Vector3::Zero();
  double psi = 0.0;
};

struct ControlInput {
  double t = 0.0;
  VehicleState state;
  Reference ref;
  DisturbanceWrench d_est;
};

struct ControlOutput {
  ControlWrench wrench;
  Vector3 u_p = Vector3::Zero();
  Vector3 att_ref = Vector3::Zero();
  Vector3 S_pos = Vector3::Zero();
  Vector3 S_att = Vector3::Zero();
};

/// Critically damped second-order filter giving a smooth reference with
/// its first and second derivatives.
class CommandFilter {
 public:
  CommandFilter(double wn, double dt);

  /// Advances one step towards r.
  void update(const Vector3& r);
  void reset(const Vector3& r = Vector3::Zero());

  const Vector3& value() const { return x_; }
  const Vector3& rate() const { return xd_; }
  const Vector3& accel() const { return xdd_; }

 private:
  double wn_;
  double dt_;
  Vector3 x_ = Vector3::Zero();
  Vector3 xd_ = Vector3::Zero();
  Vector3 xdd_ = Vector3::Zero();
};

class Controller {
 public:
  virtual ~Controller() = default;
  virtual ControlOutput update(const ControlInput& in) = 0;
};

struct SmcConfig {
  SurfaceParams position;
  ReachingGains position_gains;
  SurfaceParams attitude{0.2, 0.8, 1.5, 0.8, 4.0, 2.0};
  ReachingGains attitude_gains;
  double epsilon = 0.05;           // position boundary layer
  double attitude_epsilon = 0.01;  // attitude boundary layer
  double ref_filter_wn = 40.0;     // attitude reference filter [rad/s]
  double dt = 1e-3;
  double memory_window = 2.0;  // s
  double tilt_limit = 0.5;
  PlantParams plant;

  /// The integer-order baseline: same gains, all orders set to one.
  SmcConfig integer_order() const;
};

/// Cascaded sliding-mode controller: position surface per axis produces an
/// acceleration command, inverted to thrust and attitude references, which
/// the attitude surfaces track with model-based feed-forward.
class SlidingModeController : public Controller {
 public:
  explicit SlidingModeController(const SmcConfig& cfg);

  ControlOutput update(const ControlInput& in) override;

  /// Position acceleration command for the current step (advances histories).
  Vector3 position_control(const VehicleState& state, const Reference& ref, const DisturbanceWrench& d_est,
                           Vector3* surfaces = nullptr);

  /// Body torque tracking the attitude reference (advances histories).
  Vector3 attitude_control(const VehicleState& state, const Vector3& att_ref, const Vector3& att_ref_dot,
                           const Vector3& att_ref_ddot, const Vector3& tau_cd_est, Vector3* surfaces = nullptr);

  const SmcConfig& config() const { return cfg_; }

 private:
  SmcConfig cfg_;
  std::array<TrackingError, 3> pos_;
  std::array<TrackingError, 3> att_;
  CommandFilter ref_filter_;
};

struct PidGains {
  Vector3 kp_pos{4.5, 4.5, 4.0};
  Vector3 kp_vel{2.0, 2.0, 4.5};
  Vector3 ki_vel{0.03, 0.03, 0.03};
  Vector3 kd_vel{1.0, 1.0, 1.0};
  Vector3 kp_att{4.5, 4.5, 4.0};
  Vector3 kp_rate{1.0, 1.0, 2.0};
  Vector3 ki_rate{0.3, 0.3, 0.3};
  Vector3 kd_rate{0.03, 0.03, 0.03};
  double accel_limit = 8.0;      // m/s^2 per axis
  double torque_limit = 2.0;     // N m per axis
  double integral_limit = 5.0;   // per integrator state
  double d_cutoff_hz = 20.0;     // derivative low-pass

  void validate() const;
};

struct PidConfig {
  PidGains gains;
  double dt = 1e-3;
  double tilt_limit = 0.5;
  PlantParams plant;
};

/// Position -> velocity -> attitude -> rate cascade.
class PidCascade : public Controller {
 public:
  explicit PidCascade(const PidConfig& cfg);

  ControlOutput update(const ControlInput& in) override;

  const Vector3& velocity_integral() const { return vel_int_; }
  const Vector3& rate_integral() const { return rate_int_; }
  /// Velocity setpoint of the last update.
  const Vector3& velocity_setpoint() const { return vel_sp_; }

 private:
  PidConfig cfg_;
  bool first_ = true;
  Vector3 vel_int_ = Vector3::Zero();
  Vector3 rate_int_ = Vector3::Zero();
  Vector3 vel_err_prev_ = Vector3::Zero();
  Vector3 rate_err_prev_ = Vector3::Zero();
  Vector3 vel_d_ = Vector3::Zero();
  Vector3 rate_d_ = Vector3::Zero();
  Vector3 vel_sp_ = Vector3::Zero();
};

}  // namespace aerial
