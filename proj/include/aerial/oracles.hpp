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

#include <string>
#include <vector>

namespace aerial {

/// One self-check: measured deviation against its tolerance.
struct OracleResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// measured < tolerance
OracleResult make_result(std::string name, double measured, double tolerance);

// frac
OracleResult check_gl_weights();
/// Relative error of the order-0.5 derivative of f(t) = t at t = 1.
OracleResult check_gl_derivative_accuracy(double dt = 1e-3);
/// Observed convergence order between dt and dt / 2 (measured is the order).
OracleResult check_gl_convergence_order(double dt = 1e-3);
OracleResult check_gl_integral_accuracy(double dt = 1e-3);

// kinematics
/// Max deviation of analytic link Jacobians from central differences.
OracleResult check_jacobians(int configurations = 100, double step = 1e-6, unsigned seed = 7);
/// Max relative deviation of the manipulator inertia rate from a central
/// difference along the default joint trajectory at t = 11, 12, ..., 20.
OracleResult check_inertia_rate();
/// Smallest eigenvalue of the manipulator inertia over random configurations.
OracleResult check_inertia_psd(int configurations = 100, unsigned seed = 11);

// dynamics
struct MomentumDrift {
  double dP = 0.0;
  double dL = 0.0;
  double m_uam = 0.0;
};
/// Free-floating run (no gravity, no thrust or torque, joints moving from 0).
MomentumDrift momentum_drift(double duration = 5.0, double dt = 1e-3);
std::vector<OracleResult> check_momentum(double duration = 5.0, double dt = 1e-3);
OracleResult check_rk4_decay();
OracleResult check_gyroscopic();

/// Runs "frac", "kinematics", "dynamics" or "all"; throws ConfigError for
/// any other name.
std::vector<OracleResult> run_suite(const std::string& suite);

}  // namespace aerial
