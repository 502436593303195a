// Copyright 2026 The flexjoint Authors
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

#include "flexjoint/parameter_sets.hpp"

#include <array>
#include <stdexcept>

namespace flexjoint {
namespace {

// KUKA Quantec KR300 Ultra SE, joints 1..6.
constexpr std::array<double, 6> kCoulomb = {200, 150, 180, 150, 150, 150};
constexpr std::array<double, 6> kViscous = {800, 500, 600, 100, 100, 100};
constexpr std::array<double, 6> kFrictionSmoothness = {500, 300, 100, 200, 200, 200};
constexpr std::array<double, 6> kRigidity = {8.4225e6, 8.9381e6, 5.5691e6,
                                             1.6845e6, 1.6845e6, 1.0726e6};
constexpr std::array<double, 6> kInverseSmoothness = {0.02, 0.015, 0.015, 0.015, 0.015, 0.015};
constexpr std::array<GearRatio, 6> kGearRatios = {
    GearRatio{1798, 7}, GearRatio{1872, 7},   GearRatio{757, 3},
    GearRatio{221, 1},  GearRatio{5032, 21}, GearRatio{206793, 1340}};
constexpr std::array<double, 6> kMotorInertia = {0.0138, 0.0177, 0.0177, 0.0150, 0.0150, 0.0150};

constexpr double kBacklash = 0.15e-3;
constexpr double kLostMotion = 0.15e-3;
// Only the offset torque is published; c_LM = tau_E0 / phi_LM.
constexpr double kOffsetTorque = 105.0;
constexpr double kLinkInertia = 924.0;
constexpr double kSpeedGain = 0.015;
constexpr double kPositionGain = 20.0;
constexpr double kTorqueLimit = 20.0;
constexpr double kTorqueRateLimit = 200.0;
constexpr double kLowpass = 4e-3;

JointParams kr300_joint(std::size_t i) {
  JointParams p;
  p.motor_inertia = kMotorInertia[i];
  p.gear_ratio = kGearRatios[i].value();
  p.link_inertia = kLinkInertia;
  p.friction = {kViscous[i], kCoulomb[i], kFrictionSmoothness[i]};
  p.stiffness.lost_motion_stiffness = kOffsetTorque / kLostMotion;
  p.stiffness.rigidity_stiffness = kRigidity[i];
  p.stiffness.backlash_angle = kBacklash;
  p.stiffness.lost_motion_angle = kLostMotion;
  p.stiffness.tanh_slope = 30.0 / (kBacklash + kLostMotion);
  p.stiffness.inverse_smoothness = kInverseSmoothness[i];
  p.position_gain = kPositionGain;
  p.speed_gain = kSpeedGain;
  p.torque_limit = kTorqueLimit;
  p.torque_rate_limit = kTorqueRateLimit;
  p.lowpass_time_constant = kLowpass;
  return p;
}

// Earlier single-axis identification of joint 1.
JointParams legacy_joint() {
  JointParams p;
  p.motor_inertia = 0.012;
  p.gear_ratio = 256.86;
  p.link_inertia = 924.0;
  p.friction = {8590.0, 500.0, 10.0};
  p.stiffness.lost_motion_stiffness = 641.0;
  p.stiffness.rigidity_stiffness = 2565.0;
  p.stiffness.backlash_angle = 0.15e-3;
  p.stiffness.lost_motion_angle = 0.29e-3;
  p.stiffness.tanh_slope = 30.0 / (0.15e-3 + 0.29e-3);
  p.stiffness.inverse_smoothness = 2.86;
  p.position_gain = 0.0779;
  p.speed_gain = 12.9;
  p.torque_limit = kTorqueLimit;
  p.torque_rate_limit = kTorqueRateLimit;
  p.lowpass_time_constant = kLowpass;
  return p;
}

ParameterSet validated(ParameterSet set) {
  for (const JointParams& joint : set.joints) joint.validate();
  return set;
}

}  // namespace

std::string GearRatio::text() const {
  return std::to_string(numerator) + "/" + std::to_string(denominator);
}

const std::vector<std::string_view>& parameter_set_names() {
  static const std::vector<std::string_view> names = {"kr300-joint1", "kr300-all", "legacy-v1"};
  return names;
}

ParameterSet parameter_set(std::string_view name) {
  if (name == "kr300-joint1") {
    return validated({"kr300-joint1", "KUKA Quantec KR300 Ultra SE, joint 1", {kr300_joint(0)},
                      {kGearRatios[0]}});
  }
  if (name == "kr300-all") {
    ParameterSet set{"kr300-all", "KUKA Quantec KR300 Ultra SE, joints 1-6", {}, {}};
    for (std::size_t i = 0; i < 6; ++i) {
      set.joints.push_back(kr300_joint(i));
      set.gear_ratios.push_back(kGearRatios[i]);
    }
    return validated(std::move(set));
  }
  if (name == "legacy-v1") {
    return validated({"legacy-v1", "KUKA Quantec Ultra SE axis 1, first identification",
                      {legacy_joint()}, {GearRatio{25686, 100}}});
  }
  throw std::invalid_argument("unknown parameter set '" + std::string(name) + "'");
}

}  // namespace flexjoint
