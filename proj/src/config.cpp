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
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "aerial/scenario.hpp"

namespace aerial {

namespace {

using Tokens = std::vector<std::string>;
using Setter = std::function<void(ScenarioConfig&, const std::string& key, const Tokens&)>;

struct KeySpec {
  std::string doc;
  Setter set;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Tokens split(const std::string& s) {
  Tokens out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    // Commas are accepted as separators too.
    std::size_t pos = 0;
    while (pos <= tok.size()) {
      const auto comma = tok.find(',', pos);
      const auto piece = tok.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (!piece.empty()) out.push_back(piece);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return out;
}

double number(const std::string& key, const std::string& tok) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || !std::isfinite(x)) {
    throw ConfigError("key '" + key + "': '" + tok + "' is not a finite number");
  }
  return x;
}

std::vector<double> numbers(const std::string& key, const Tokens& toks, std::size_t n) {
  if (toks.size() != n) {
    throw ConfigError("key '" + key + "' expects " + std::to_string(n) + " value(s), got " +
                      std::to_string(toks.size()));
  }
  std::vector<double> out;
  for (const auto& t : toks) out.push_back(number(key, t));
  return out;
}

Setter scalar(double ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, const std::string& k, const Tokens& t) { c.*field = numbers(k, t, 1)[0]; };
}

template <typename Get>
Setter scalar_at(Get get) {
  return [get](ScenarioConfig& c, const std::string& k, const Tokens& t) { get(c) = numbers(k, t, 1)[0]; };
}

template <typename Get>
Setter vec3_at(Get get) {
  return [get](ScenarioConfig& c, const std::string& k, const Tokens& t) {
    const auto v = numbers(k, t, 3);
    get(c) = Vector3(v[0], v[1], v[2]);
  };
}

Setter text(std::string ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, const std::string& k, const Tokens& t) {
    if (t.size() != 1) throw ConfigError("key '" + k + "' expects a single value");
    c.*field = t[0];
  };
}

void add_surface_keys(std::map<std::string, KeySpec>& keys, const std::string& prefix, bool position) {
  auto sp = [position](ScenarioConfig& c) -> SurfaceParams& { return position ? c.smc.position : c.smc.attitude; };
  auto gains = [position](ScenarioConfig& c) -> ReachingGains& {
    return position ? c.smc.position_gains : c.smc.attitude_gains;
  };
  keys[prefix + "gamma1"] = {"fractional order of the surface derivative term",
                             scalar_at([sp](ScenarioConfig& c) -> double& { return sp(c).gamma1; })};
  keys[prefix + "gamma2"] = {"fractional order of the surface integral term",
                             scalar_at([sp](ScenarioConfig& c) -> double& { return sp(c).gamma2; })};
  keys[prefix + "D"] = {"terminal exponent of the derivative term, in (1, 2)",
                        scalar_at([sp](ScenarioConfig& c) -> double& { return sp(c).D_exp; })};
  keys[prefix + "I"] = {"terminal exponent of the integral term",
                        scalar_at([sp](ScenarioConfig& c) -> double& { return sp(c).I_exp; })};
  keys[prefix + "c1"] = {"surface gain of the derivative term",
                         scalar_at([sp](ScenarioConfig& c) -> double& { return sp(c).c1; })};
  keys[prefix + "c2"] = {"surface gain of the integral term",
                         scalar_at([sp](ScenarioConfig& c) -> double& { return sp(c).c2; })};
  keys[prefix + "h1"] = {"constant reaching gain",
                         scalar_at([gains](ScenarioConfig& c) -> double& { return gains(c).h1; })};
  keys[prefix + "h2"] = {"proportional reaching gain",
                         scalar_at([gains](ScenarioConfig& c) -> double& { return gains(c).h2; })};
}

const std::map<std::string, KeySpec>& key_table() {
  static const std::map<std::string, KeySpec> table = [] {
    std::map<std::string, KeySpec> k;
    k["duration"] = {"run length [s]", scalar(&ScenarioConfig::duration)};
    k["dt"] = {"integration and control step [s]", scalar(&ScenarioConfig::dt)};
    k["controller"] = {"pid | ftsmc | foftsmc", [](ScenarioConfig& c, const std::string& key, const Tokens& t) {
                         if (t.size() != 1) throw ConfigError("key '" + key + "' expects a single value");
                         c.controller = controller_from_string(t[0]);
                       }};
    k["body_mass"] = {"vehicle mass without the arm [kg]", scalar(&ScenarioConfig::body_mass)};
    k["body_inertia"] = {"vehicle principal inertia J_phi J_theta J_psi [kg m^2]",
                         vec3_at([](ScenarioConfig& c) -> Vector3& { return c.body_inertia; })};
    k["gravity"] = {"gravitational acceleration [m/s^2]", scalar(&ScenarioConfig::gravity)};
    k["fd_step"] = {"finite-difference step for arm accelerations [s]", scalar(&ScenarioConfig::fd_step)};
    k["epsilon"] = {"boundary layer width of both reaching laws", [](ScenarioConfig& c, const std::string& key, const Tokens& t) {
                      c.epsilon = c.attitude_epsilon = numbers(key, t, 1)[0];
                    }};
    k["smc.pos.epsilon"] = {"boundary layer width of the position reaching law", scalar(&ScenarioConfig::epsilon)};
    k["smc.att.epsilon"] = {"boundary layer width of the attitude reaching law",
                            scalar(&ScenarioConfig::attitude_epsilon)};
    k["smc.ref_filter_wn"] = {"natural frequency of the attitude reference filter [rad/s]",
                              scalar(&ScenarioConfig::ref_filter_wn)};
    k["memory_window"] = {"fractional operator memory [s]", scalar(&ScenarioConfig::memory_window)};
    k["tilt_limit"] = {"roll/pitch reference clip [rad]", scalar(&ScenarioConfig::tilt_limit)};
    k["joints"] = {"sinusoid | static", [](ScenarioConfig& c, const std::string& key, const Tokens& t) {
                     if (t.size() == 1 && t[0] == "sinusoid") {
                       c.joints = JointMode::Sinusoid;
                     } else if (t.size() == 1 && t[0] == "static") {
                       c.joints = JointMode::Static;
                     } else {
                       throw ConfigError("key '" + key + "' expects sinusoid or static");
                     }
                   }};
    k["joint_start"] = {"switch-on time of the joint motion [s]", scalar(&ScenarioConfig::joint_start)};
    k["hover_altitude"] = {"hover altitude after takeoff [m]", scalar(&ScenarioConfig::hover_altitude)};
    k["takeoff_time"] = {"duration of the quintic takeoff ramp [s]", scalar(&ScenarioConfig::takeoff_time)};
    k["initial.position"] = {"initial position x y z [m]",
                             vec3_at([](ScenarioConfig& c) -> Vector3& { return c.initial_position; })};
    k["initial.attitude"] = {"initial roll pitch yaw [rad]",
                             vec3_at([](ScenarioConfig& c) -> Vector3& { return c.initial_attitude; })};
    k["metrics.start"] = {"start of the error-metric window [s]", scalar(&ScenarioConfig::metrics_start)};
    k["metrics.end"] = {"end of the error-metric window [s], <= 0 for the run end",
                        scalar(&ScenarioConfig::metrics_end)};
    k["output.log"] = {"CSV log path", text(&ScenarioConfig::log_path)};
    k["output.summary"] = {"summary report path", text(&ScenarioConfig::summary_path)};

    add_surface_keys(k, "smc.pos.", true);
    add_surface_keys(k, "smc.att.", false);

    const std::pair<const char*, Vector3 PidGains::*> pid_vectors[] = {
        {"pid.kp_pos", &PidGains::kp_pos},   {"pid.kp_vel", &PidGains::kp_vel},
        {"pid.ki_vel", &PidGains::ki_vel},   {"pid.kd_vel", &PidGains::kd_vel},
        {"pid.kp_att", &PidGains::kp_att},   {"pid.kp_rate", &PidGains::kp_rate},
        {"pid.ki_rate", &PidGains::ki_rate}, {"pid.kd_rate", &PidGains::kd_rate},
    };
    for (const auto& [name, field] : pid_vectors) {
      k[name] = {"per-axis PID gain (x y z or roll pitch yaw)",
                 vec3_at([field](ScenarioConfig& c) -> Vector3& { return c.pid.*field; })};
    }
    const std::pair<const char*, double PidGains::*> pid_scalars[] = {
        {"pid.accel_limit", &PidGains::accel_limit},
        {"pid.torque_limit", &PidGains::torque_limit},
        {"pid.integral_limit", &PidGains::integral_limit},
        {"pid.d_cutoff_hz", &PidGains::d_cutoff_hz},
    };
    for (const auto& [name, field] : pid_scalars) {
      k[name] = {"PID limit / filter setting", scalar_at([field](ScenarioConfig& c) -> double& { return c.pid.*field; })};
    }

    for (int j = 0; j < 4; ++j) {
      const std::string link = "link" + std::to_string(j + 1);
      k[link + ".mass"] = {"link mass [kg]",
                           scalar_at([j](ScenarioConfig& c) -> double& { return c.arm.links[j].mass; })};
      k[link + ".com"] = {"link COM in its own frame [m]",
                          vec3_at([j](ScenarioConfig& c) -> Vector3& { return c.arm.links[j].com_local; })};
      k[link + ".inertia"] = {"link inertia about its COM, 9 row-major entries [kg m^2]",
                              [j](ScenarioConfig& c, const std::string& key, const Tokens& t) {
                                const auto v = numbers(key, t, 9);
                                c.arm.links[j].inertia_local = Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>(v.data());
                              }};
      k["dh" + std::to_string(j + 1)] = {"alpha_prev [rad] a_prev [m] d [m] theta_offset [rad]",
                                         [j](ScenarioConfig& c, const std::string& key, const Tokens& t) {
                                           const auto v = numbers(key, t, 4);
                                           c.arm.chain[j] = {v[0], v[1], v[2], v[3]};
                                         }};
    }
    k["mount.xyz"] = {"arm base position in the body frame [m]", [](ScenarioConfig& c, const std::string& key, const Tokens& t) {
                        const auto v = numbers(key, t, 3);
                        c.arm.mount.topRightCorner<3, 1>() = Vector3(v[0], v[1], v[2]);
                      }};
    k["mount.rpy"] = {"arm base orientation in the body frame, roll pitch yaw [rad]",
                      [](ScenarioConfig& c, const std::string& key, const Tokens& t) {
                        const auto v = numbers(key, t, 3);
                        c.arm.mount.topLeftCorner<3, 3>() =
                            (Eigen::AngleAxisd(v[2], Vector3::UnitZ()) * Eigen::AngleAxisd(v[1], Vector3::UnitY()) *
                             Eigen::AngleAxisd(v[0], Vector3::UnitX()))
                                .toRotationMatrix();
                      }};
    return k;
  }();
  return table;
}

}  // namespace

ScenarioConfig parse_config(std::istream& in, ScenarioConfig cfg) {
  const auto& keys = key_table();
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const auto it = keys.find(key);
    if (it == keys.end()) {
      throw ConfigError("unknown configuration key '" + key + "' (line " + std::to_string(lineno) + ")");
    }
    it->second.set(cfg, key, split(line.substr(eq + 1)));
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open configuration file '" + path + "'");
  }
  return parse_config(in);
}

std::string config_reference() {
  std::ostringstream out;
  for (const auto& [key, spec] : key_table()) {
    out << key << " : " << spec.doc << '\n';
  }
  return out.str();
}

}  // namespace aerial
