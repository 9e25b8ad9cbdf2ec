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

// Configuration-dependent inertia of the vehicle + arm system, seen from the
// body origin O (the bare vehicle's centre of mass):
//
//   r_oc   = sum_j m_j p_cj / m_uam            composite COM offset
//   r_oc1  = m_uam r_oc / m_m                  arm COM offset
//   I_m    = sum_j (R_j I_j R_j^T + m_j P(p_cj))      arm inertia about O
//   I_m'   = sum_j (S(w_j) R_j I_j R_j^T - R_j I_j R_j^T S(w_j)) + m_j PV(p_cj, v_cj)
//   h      = sum_j (m_j p_cj x v_cj + R_j I_j R_j^T w_j)  arm angular momentum
//                                                         relative to the body
//
// with P(p) = |p|^2 I - p p^T and PV = dP/dt = 2 (p.v) I - (p v^T + v p^T).

#pragma once

#include <tuple>
#include <utility>
#include <vector>

#include "aerial/kinematics.hpp"
#include "aerial/types.hpp"

namespace aerial {

template <typename Scalar = double>
struct MassBudget {
  Scalar m_b{};  // vehicle
  Scalar m_m{};  // arm

  Scalar m_uam() const { return m_b + m_m; }
};

template <typename Scalar = double>
struct MutableInertiaSet {
  Vec3<Scalar> r_oc = Vec3<Scalar>::Zero();
  Vec3<Scalar> r_oc_dot = Vec3<Scalar>::Zero();
  Vec3<Scalar> r_oc1 = Vec3<Scalar>::Zero();
  Vec3<Scalar> r_oc1_dot = Vec3<Scalar>::Zero();
  Vec3<Scalar> r_oc1_ddot = Vec3<Scalar>::Zero();
  Mat3<Scalar> I_m = Mat3<Scalar>::Zero();
  Mat3<Scalar> I_m_dot = Mat3<Scalar>::Zero();
  Vec3<Scalar> h = Vec3<Scalar>::Zero();
  Vec3<Scalar> h_dot = Vec3<Scalar>::Zero();
};

template <typename Derived>
Mat3<typename Derived::Scalar> skew(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  Mat3<Scalar> s;
  s << Scalar(0), -v(2), v(1),
       v(2), Scalar(0), -v(0),
       -v(1), v(0), Scalar(0);
  return s;
}

/// Parallel-axis matrix P(p) = |p|^2 I - p p^T, written out entrywise.
template <typename Scalar>
Mat3<Scalar> parallel_axis(const Vec3<Scalar>& p) {
  Mat3<Scalar> m;
  m << p.y() * p.y() + p.z() * p.z(), -p.x() * p.y(), -p.x() * p.z(),
       -p.x() * p.y(), p.x() * p.x() + p.z() * p.z(), -p.y() * p.z(),
       -p.x() * p.z(), -p.y() * p.z(), p.x() * p.x() + p.y() * p.y();
  return m;
}

/// Time derivative of parallel_axis(p) for dp/dt = v.
template <typename Scalar>
Mat3<Scalar> parallel_axis_rate(const Vec3<Scalar>& p, const Vec3<Scalar>& v) {
  Mat3<Scalar> m;
  const Scalar xy = p.x() * v.y() + p.y() * v.x();
  const Scalar xz = p.x() * v.z() + p.z() * v.x();
  const Scalar yz = p.y() * v.z() + p.z() * v.y();
  m << Scalar(2) * (p.y() * v.y() + p.z() * v.z()), -xy, -xz,
       -xy, Scalar(2) * (p.x() * v.x() + p.z() * v.z()), -yz,
       -xz, -yz, Scalar(2) * (p.x() * v.x() + p.y() * v.y());
  return m;
}

template <typename Scalar>
MassBudget<Scalar> mass_budget(Scalar m_body, const std::vector<LinkInertial<Scalar>>& links) {
  MassBudget<Scalar> mass{m_body, Scalar(0)};
  for (const auto& l : links) mass.m_m += l.mass;
  return mass;
}

namespace detail {
template <typename Scalar>
Scalar arm_share(const MassBudget<Scalar>& mass) {
  // r_oc1 = (m_uam / m_m) r_oc; a massless arm has no COM offset at all.
  return mass.m_m > Scalar(0) ? mass.m_uam() / mass.m_m : Scalar(0);
}

template <typename Scalar>
void check_sizes(const std::vector<LinkKinematics<Scalar>>& kin, const std::vector<LinkInertial<Scalar>>& links) {
  if (kin.size() != links.size()) {
    throw InvalidParameter("link kinematics and inertials differ in length");
  }
}
}  // namespace detail

template <typename Scalar>
std::pair<Vec3<Scalar>, Vec3<Scalar>> com_aggregate(const std::vector<LinkKinematics<Scalar>>& kin,
                                                    const std::vector<LinkInertial<Scalar>>& links,
                                                    const MassBudget<Scalar>& mass) {
  detail::check_sizes(kin, links);
  Vec3<Scalar> sum = Vec3<Scalar>::Zero();
  for (std::size_t j = 0; j < kin.size(); ++j) sum += links[j].mass * kin[j].com_pos;
  const Vec3<Scalar> r_oc = sum / mass.m_uam();
  return {r_oc, detail::arm_share(mass) * r_oc};
}

template <typename Scalar>
std::pair<Vec3<Scalar>, Vec3<Scalar>> com_rate(const std::vector<LinkKinematics<Scalar>>& kin,
                                               const std::vector<LinkInertial<Scalar>>& links,
                                               const MassBudget<Scalar>& mass, const Vec4<Scalar>& qd) {
  detail::check_sizes(kin, links);
  Vec3<Scalar> sum = Vec3<Scalar>::Zero();
  for (std::size_t j = 0; j < kin.size(); ++j) sum += links[j].mass * (kin[j].jac_v * qd);
  const Vec3<Scalar> rate = sum / mass.m_uam();
  return {rate, detail::arm_share(mass) * rate};
}

template <typename Scalar>
Mat3<Scalar> manipulator_inertia(const std::vector<LinkKinematics<Scalar>>& kin,
                                 const std::vector<LinkInertial<Scalar>>& links) {
  detail::check_sizes(kin, links);
  Mat3<Scalar> total = Mat3<Scalar>::Zero();
  for (std::size_t j = 0; j < kin.size(); ++j) {
    const Mat3<Scalar> r = kin[j].rotation();
    total += r * links[j].inertia_local * r.transpose() + links[j].mass * parallel_axis(kin[j].com_pos);
  }
  // Exact symmetry; the rotated local term is symmetric only up to rounding.
  return Scalar(0.5) * (total + total.transpose());
}

template <typename Scalar>
Mat3<Scalar> manipulator_inertia_rate(const std::vector<LinkKinematics<Scalar>>& kin,
                                      const std::vector<LinkInertial<Scalar>>& links, const Vec4<Scalar>& qd) {
  detail::check_sizes(kin, links);
  Mat3<Scalar> total = Mat3<Scalar>::Zero();
  for (std::size_t j = 0; j < kin.size(); ++j) {
    const Mat3<Scalar> r = kin[j].rotation();
    const Mat3<Scalar> rotated = r * links[j].inertia_local * r.transpose();
    const Vec3<Scalar> w = kin[j].jac_w * qd;
    const Vec3<Scalar> v = kin[j].jac_v * qd;
    const Mat3<Scalar> s = skew(w);
    total += s * rotated - rotated * s + links[j].mass * parallel_axis_rate(kin[j].com_pos, v);
  }
  return Scalar(0.5) * (total + total.transpose());
}

/// Arm angular momentum about O due to joint motion alone (body frame).
template <typename Scalar>
Vec3<Scalar> internal_momentum(const std::vector<LinkKinematics<Scalar>>& kin,
                               const std::vector<LinkInertial<Scalar>>& links, const Vec4<Scalar>& qd) {
  detail::check_sizes(kin, links);
  Vec3<Scalar> h = Vec3<Scalar>::Zero();
  for (std::size_t j = 0; j < kin.size(); ++j) {
    const Mat3<Scalar> r = kin[j].rotation();
    const Vec3<Scalar> v = kin[j].jac_v * qd;
    const Vec3<Scalar> w = kin[j].jac_w * qd;
    h += links[j].mass * kin[j].com_pos.cross(v) + r * links[j].inertia_local * r.transpose() * w;
  }
  return h;
}

/// Joint state advanced by +-step along its own rates (second-order Taylor).
template <typename Scalar>
JointState<Scalar> propagate(const JointState<Scalar>& js, Scalar step) {
  JointState<Scalar> out;
  out.q = js.q + step * js.qd + Scalar(0.5) * step * step * js.qdd;
  out.qd = js.qd + step * js.qdd;
  out.qdd = js.qdd;
  return out;
}

/// Second derivative of r_oc1: central difference of the analytic first rate.
template <typename Scalar>
Vec3<Scalar> com_accel(const ArmModel<Scalar>& arm, const MassBudget<Scalar>& mass, const JointState<Scalar>& js,
                       Scalar fd_step) {
  if (!(fd_step > Scalar(0))) {
    throw InvalidParameter("finite-difference step must be positive");
  }
  auto rate_at = [&](Scalar s) {
    const auto p = propagate(js, s);
    return com_rate(link_com_kinematics(arm, p.q, p.qd), arm.links, mass, p.qd).second;
  };
  return (rate_at(fd_step) - rate_at(-fd_step)) / (Scalar(2) * fd_step);
}

template <typename Scalar>
Vec3<Scalar> internal_momentum_rate(const ArmModel<Scalar>& arm, const JointState<Scalar>& js, Scalar fd_step) {
  if (!(fd_step > Scalar(0))) {
    throw InvalidParameter("finite-difference step must be positive");
  }
  auto h_at = [&](Scalar s) {
    const auto p = propagate(js, s);
    return internal_momentum(link_com_kinematics(arm, p.q, p.qd), arm.links, p.qd);
  };
  return (h_at(fd_step) - h_at(-fd_step)) / (Scalar(2) * fd_step);
}

/// Every mutable inertia quantity for one joint state.
template <typename Scalar>
MutableInertiaSet<Scalar> mutable_inertia(const ArmModel<Scalar>& arm, const MassBudget<Scalar>& mass,
                                          const JointState<Scalar>& js, Scalar fd_step) {
  const auto kin = link_com_kinematics(arm, js.q, js.qd);
  MutableInertiaSet<Scalar> mi;
  std::tie(mi.r_oc, mi.r_oc1) = com_aggregate(kin, arm.links, mass);
  std::tie(mi.r_oc_dot, mi.r_oc1_dot) = com_rate(kin, arm.links, mass, js.qd);
  mi.I_m = manipulator_inertia(kin, arm.links);
  mi.I_m_dot = manipulator_inertia_rate(kin, arm.links, js.qd);
  mi.h = internal_momentum(kin, arm.links, js.qd);
  const bool moving = !js.qd.isZero(0) || !js.qdd.isZero(0);
  if (moving) {
    mi.r_oc1_ddot = com_accel(arm, mass, js, fd_step);
    mi.h_dot = internal_momentum_rate(arm, js, fd_step);
  }
  return mi;
}

}  // namespace aerial
