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

// Modified Denavit-Hartenberg chain of the on-board arm. Every quantity here
// is expressed in the vehicle body frame B; the arm base frame 0 sits at a
// fixed mount transform B_T_0.

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "aerial/types.hpp"

namespace aerial {

template <typename Scalar = double>
struct DHRow {
  Scalar alpha_prev{};   // rad
  Scalar a_prev{};       // m
  Scalar d{};            // m
  Scalar theta_offset{}; // rad
};

template <typename Scalar = double>
struct LinkInertial {
  Scalar mass{};
  Vec3<Scalar> com_local = Vec3<Scalar>::Zero();      // link COM in its own frame
  Mat3<Scalar> inertia_local = Mat3<Scalar>::Zero();  // about the link COM, link axes
};

template <typename Scalar = double>
struct JointState {
  Vec4<Scalar> q = Vec4<Scalar>::Zero();
  Vec4<Scalar> qd = Vec4<Scalar>::Zero();
  Vec4<Scalar> qdd = Vec4<Scalar>::Zero();
};

template <typename Scalar = double>
struct LinkKinematics {
  Mat4<Scalar> frame_transform = Mat4<Scalar>::Identity();  // B_T_j
  Vec3<Scalar> com_pos = Vec3<Scalar>::Zero();
  Vec3<Scalar> com_vel = Vec3<Scalar>::Zero();
  Vec3<Scalar> ang_vel = Vec3<Scalar>::Zero();  // relative to the body
  Mat34<Scalar> jac_v = Mat34<Scalar>::Zero();
  Mat34<Scalar> jac_w = Mat34<Scalar>::Zero();

  Mat3<Scalar> rotation() const { return frame_transform.template topLeftCorner<3, 3>(); }
};

/// The arm as used by the simulator: chain, inertials and the base mount.
template <typename Scalar = double>
struct ArmModel {
  std::vector<DHRow<Scalar>> chain;
  std::vector<LinkInertial<Scalar>> links;
  Mat4<Scalar> mount = Mat4<Scalar>::Identity();

  Scalar total_mass() const {
    Scalar m(0);
    for (const auto& l : links) m += l.mass;
    return m;
  }
};

/// Table values of the 4-DOF arm (lengths in m, inertia in kg m^2).
inline ArmModel<double> default_arm() {
  constexpr double kDeg = std::numbers::pi / 180.0;
  ArmModel<double> arm;
  arm.chain = {
      {0.0, 0.012, 0.0935, 0.0},
      {-90.0 * kDeg, 0.0, 0.0, -1.3855},
      {0.0, 0.13023, 0.0, 1.3855},
      {0.0, 0.124, 0.0, 0.0},
  };
  Matrix3 inertia;
  inertia << 290.2, 0.3, 32.5,
             0.3, 324.2, 2.1,
             32.5, 2.1, 141.3;
  inertia *= 1e-6;
  const double masses[4] = {0.238, 0.123, 0.118, 0.224};
  const Vector3 coms[4] = {
      Vector3(-6.8, 0.3, -48.8) * 1e-3,
      Vector3(107.1, -10.6, 0.5) * 1e-3,
      Vector3(94.3, 0.0, 0.5) * 1e-3,
      Vector3(60.5, 6.1, 0.0) * 1e-3,
  };
  for (int j = 0; j < 4; ++j) {
    arm.links.push_back({masses[j], coms[j], inertia});
  }
  return arm;
}

template <typename Scalar>
Mat4<Scalar> link_transform(const DHRow<Scalar>& row, Scalar q) {
  using std::cos;
  using std::sin;
  const Scalar ca = cos(row.alpha_prev), sa = sin(row.alpha_prev);
  const Scalar theta = row.theta_offset + q;
  const Scalar ct = cos(theta), st = sin(theta);
  // Rot_x(alpha) * Trans_x(a) * Rot_z(theta) * Trans_z(d), multiplied out.
  Mat4<Scalar> t;
  t << ct, -st, Scalar(0), row.a_prev,
       st * ca, ct * ca, -sa, -sa * row.d,
       st * sa, ct * sa, ca, ca * row.d,
       Scalar(0), Scalar(0), Scalar(0), Scalar(1);
  return t;
}

/// Returns [B_T_0, B_T_1, ..., B_T_n].
template <typename Scalar, typename Derived>
std::vector<Mat4<Scalar>> forward_kinematics(const std::vector<DHRow<Scalar>>& chain,
                                             const Eigen::MatrixBase<Derived>& q,
                                             const Mat4<Scalar>& mount = Mat4<Scalar>::Identity()) {
  if (static_cast<Eigen::Index>(chain.size()) > q.size()) {
    throw InvalidParameter("joint vector shorter than the chain");
  }
  std::vector<Mat4<Scalar>> frames;
  frames.reserve(chain.size() + 1);
  frames.push_back(mount);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    frames.push_back(frames.back() * link_transform(chain[i], Scalar(q(static_cast<Eigen::Index>(i)))));
  }
  return frames;
}

/// Link COM positions, geometric Jacobians and velocities for every link.
template <typename Scalar>
std::vector<LinkKinematics<Scalar>> link_com_kinematics(const ArmModel<Scalar>& arm, const Vec4<Scalar>& q,
                                                        const Vec4<Scalar>& qd) {
  if (arm.chain.size() != arm.links.size() || arm.chain.size() > 4) {
    throw InvalidParameter("arm chain and link lists must match and hold at most four joints");
  }
  const auto frames = forward_kinematics(arm.chain, q, arm.mount);
  const std::size_t n = arm.chain.size();
  std::vector<LinkKinematics<Scalar>> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto& lk = out[j];
    lk.frame_transform = frames[j + 1];
    lk.com_pos = lk.frame_transform.template topLeftCorner<3, 3>() * arm.links[j].com_local +
                 lk.frame_transform.template topRightCorner<3, 1>();
    for (std::size_t i = 0; i <= j; ++i) {
      // Revolute joint i turns about z of frame i+1 through that frame's origin.
      const Vec3<Scalar> axis = frames[i + 1].template block<3, 1>(0, 2);
      const Vec3<Scalar> origin = frames[i + 1].template topRightCorner<3, 1>();
      lk.jac_w.col(static_cast<Eigen::Index>(i)) = axis;
      lk.jac_v.col(static_cast<Eigen::Index>(i)) = axis.cross(lk.com_pos - origin);
    }
    lk.com_vel = lk.jac_v * qd;
    lk.ang_vel = lk.jac_w * qd;
  }
  return out;
}

}  // namespace aerial
