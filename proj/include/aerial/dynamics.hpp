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

// Vehicle plant with the arm's coupling wrench.
//
// Axis convention: inertial z points down, gravity is +g e3 and thrust acts
// along -e3 of the body. Altitude is therefore -z.
//
//   v'  = (-F R e3 + F_cd) / m_uam + g e3
//   w'  = I_b^{-1} (tau + (I_b w) x w + tau_cd)
//
// F_cd and tau_cd depend on the accelerations themselves; coupled_derivative()
// solves the resulting 6x6 linear system exactly.

#pragma once

#include <functional>

#include "aerial/kinematics.hpp"
#include "aerial/mutable_inertia.hpp"
#include "aerial/types.hpp"

namespace aerial {

using Vector12 = Eigen::Matrix<double, 12, 1>;

inline const Vector3 kE3 = Vector3::UnitZ();

struct VehicleState {
  Vector3 p = Vector3::Zero();      // inertial position
  Vector3 phi = Vector3::Zero();    // roll, pitch, yaw (ZYX)
  Vector3 v = Vector3::Zero();      // inertial velocity
  Vector3 omega = Vector3::Zero();  // body angular rate

  Vector12 to_vector() const;
  static VehicleState from_vector(const Vector12& x);
  bool all_finite() const { return to_vector().allFinite(); }
  double altitude() const { return -p.z(); }
};

struct ControlWrench {
  double F = 0.0;                    // total thrust [N]
  Vector3 tau = Vector3::Zero();     // body torque [N m]
};

struct DisturbanceWrench {
  Vector3 F_cd = Vector3::Zero();    // inertial frame [N]
  Vector3 tau_cd = Vector3::Zero();  // body frame [N m]
};

struct PlantParams {
  MassBudget<double> mass{2.65, 0.703};
  Matrix3 I_b = Vector3(0.05, 0.05, 0.05).asDiagonal();
  double g = 9.81;
};

struct StateDerivative {
  Vector3 p_dot = Vector3::Zero();
  Vector3 phi_dot = Vector3::Zero();
  Vector3 v_dot = Vector3::Zero();
  Vector3 omega_dot = Vector3::Zero();

  Vector12 to_vector() const;
};

/// Body-to-inertial rotation R_z(psi) R_y(theta) R_x(phi).
Matrix3 rotation_matrix(const Vector3& phi);

/// Euler angle rates from body rates.
Vector3 euler_rate(const Vector3& phi, const Vector3& omega_b);

/// Coupling wrench of the moving arm for given accelerations of the base.
///
/// omega_dot and v_dot are the base accelerations the wrench is evaluated
/// at; the wrench is affine in both.
DisturbanceWrench coupling_disturbance(const VehicleState& state, const MutableInertiaSet<double>& mi,
                                       const PlantParams& params, const Vector3& omega_dot, const Vector3& v_dot);

/// Right-hand side for a given disturbance wrench.
StateDerivative state_derivative(const VehicleState& state, const ControlWrench& u, const DisturbanceWrench& d,
                                 const PlantParams& params);

struct CoupledDerivative {
  StateDerivative deriv;
  DisturbanceWrench disturbance;
};

/// Right-hand side with the coupling wrench made consistent with the
/// accelerations it produces.
CoupledDerivative coupled_derivative(const VehicleState& state, const ControlWrench& u,
                                     const MutableInertiaSet<double>& mi, const PlantParams& params);

/// Classical RK4 over the 12-dimensional state. The provider receives the
/// stage time offset (0, dt/2, dt) and the stage state.
VehicleState rk4_step(const VehicleState& state, double dt,
                      const std::function<Vector12(double, const VehicleState&)>& provider, double t = 0.0);

struct Momentum {
  Vector3 P = Vector3::Zero();  // kg m/s, inertial
  Vector3 L = Vector3::Zero();  // kg m^2/s about the inertial origin
};

Momentum momentum_functionals(const VehicleState& state, const MutableInertiaSet<double>& mi,
                              const PlantParams& params);

/// Vehicle + arm plant stepped on a fixed grid. Joint motion is an
/// exogenous function of time.
class Plant {
 public:
  using JointSource = std::function<JointState<double>(double)>;

  Plant(PlantParams params, ArmModel<double> arm, JointSource joints, double fd_step = 1e-5);

  const PlantParams& params() const { return params_; }
  const ArmModel<double>& arm() const { return arm_; }

  MutableInertiaSet<double> inertia_at(double t) const;

  /// One RK4 step from t with the control held; throws Divergence on a
  /// non-finite result.
  VehicleState step(double t, const VehicleState& state, const ControlWrench& u, double dt) const;

  CoupledDerivative evaluate(double t, const VehicleState& state, const ControlWrench& u) const;

 private:
  PlantParams params_;
  ArmModel<double> arm_;
  JointSource joints_;
  double fd_step_;
};

}  // namespace aerial
