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

#include "flexjoint/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace flexjoint {

ControllerFault::ControllerFault(std::size_t joint, const std::string& what)
    : std::runtime_error(what + " (joint " + std::to_string(joint + 1) + ")"), joint_(joint) {}

MotorReference flatness_ff(const JointReference& ref, const JointCoupling& coupling,
                           const JointParams& p, std::size_t joint) {
  const double u = p.gear_ratio;
  const double m = coupling.inertia;

  // Link load and its first two time derivatives. The coupling torques are
  // tick constants and do not contribute to the derivatives.
  const FrictionRates friction = friction_smooth_rates(ref.velocity, ref.acceleration, ref.jerk, p.friction);
  const double load = m * ref.acceleration + coupling.acceleration + coupling.coriolis +
                      coupling.gravity + friction_smooth(ref.velocity, p.friction);
  const double load_dot = m * ref.jerk + friction.first;
  const double load_ddot = m * ref.snap + friction.second;

  const InverseStiffnessJet inv = inverse_stiffness_smooth_jet(load, p.stiffness);
  const double torsion_dot = inv.d1 * load_dot;
  const double torsion_ddot = inv.d2 * load_dot * load_dot + inv.d1 * load_ddot;

  MotorReference out;
  out.angle = u * (ref.angle + inv.torsion);
  out.velocity = u * (ref.velocity + torsion_dot);
  out.acceleration = u * (ref.acceleration + torsion_ddot);
  out.feedforward_torque = p.motor_inertia * out.acceleration + load / u;

  if (!std::isfinite(out.angle) || !std::isfinite(out.velocity) || !std::isfinite(out.acceleration) ||
      !std::isfinite(out.feedforward_torque)) {
    throw ControllerFault(joint, "flatness feedforward produced a non-finite value");
  }
  return out;
}

double rigid_ff(const JointReference& ref, const JointCoupling& coupling, const JointParams& p) {
  const double u = p.gear_ratio;
  const double reflected = coupling.inertia + p.motor_inertia * u * u;
  return (reflected * ref.acceleration + coupling.acceleration + coupling.coriolis + coupling.gravity +
          friction_smooth(ref.velocity, p.friction)) /
         u;
}

MotorReference rigid_motor_reference(const JointReference& ref, const JointParams& p,
                                     double feedforward_torque) {
  const double u = p.gear_ratio;
  return {feedforward_torque, u * ref.angle, u * ref.velocity, u * ref.acceleration};
}

double feedback(double link_angle, double motor_velocity, const JointReference& ref,
                const MotorReference& motor_ref, FeedbackMode mode, const JointParams& p) {
  if (mode == FeedbackMode::none) return 0.0;
  const double velocity_command = p.position_gain * (ref.angle - link_angle);
  const double motor_velocity_ref =
      mode == FeedbackMode::model_based ? motor_ref.velocity : p.gear_ratio * ref.velocity;
  return p.speed_gain * (velocity_command + motor_velocity_ref - motor_velocity);
}

FeedforwardShaper::FeedforwardShaper(double limit, double rate_limit, double time_constant)
    : limit_(limit), rate_limit_(rate_limit), time_constant_(time_constant) {
  if (!(limit > 0.0) || !(rate_limit > 0.0) || !(time_constant >= 0.0)) {
    throw std::invalid_argument("shaper: limits must be > 0 and the time constant >= 0");
  }
}

FeedforwardShaper FeedforwardShaper::disabled() {
  const double inf = std::numeric_limits<double>::infinity();
  return FeedforwardShaper(inf, inf, 0.0);
}

double FeedforwardShaper::operator()(double raw, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("shaper: dt must be > 0");
  const double clamped = std::clamp(raw, -limit_, limit_);
  const double max_step = rate_limit_ * dt;
  rate_limited_ += std::clamp(clamped - rate_limited_, -max_step, max_step);
  if (time_constant_ > 0.0) {
    filtered_ += -std::expm1(-dt / time_constant_) * (rate_limited_ - filtered_);
  } else {
    filtered_ = rate_limited_;
  }
  return filtered_;
}

void FeedforwardShaper::reset() {
  rate_limited_ = 0.0;
  filtered_ = 0.0;
}

double sensor_quantize(double value, double resolution) {
  if (!(resolution >= 0.0)) throw std::invalid_argument("sensor resolution must be >= 0");
  if (resolution == 0.0) return value;
  return resolution * std::round(value / resolution);
}

std::string_view to_string(FeedbackMode mode) {
  switch (mode) {
    case FeedbackMode::none:
      return "none";
    case FeedbackMode::conventional:
      return "conventional";
    case FeedbackMode::model_based:
      return "model_based";
  }
  return "?";
}

std::string_view to_string(FeedforwardMode mode) {
  switch (mode) {
    case FeedforwardMode::none:
      return "none";
    case FeedforwardMode::rigid:
      return "rigid";
    case FeedforwardMode::flatness:
      return "flatness";
  }
  return "?";
}

FeedbackMode parse_feedback_mode(std::string_view name) {
  if (name == "none") return FeedbackMode::none;
  if (name == "conventional") return FeedbackMode::conventional;
  if (name == "model_based") return FeedbackMode::model_based;
  throw std::invalid_argument("unknown feedback mode '" + std::string(name) + "'");
}

FeedforwardMode parse_feedforward_mode(std::string_view name) {
  if (name == "none") return FeedforwardMode::none;
  if (name == "rigid") return FeedforwardMode::rigid;
  if (name == "flatness") return FeedforwardMode::flatness;
  throw std::invalid_argument("unknown feedforward mode '" + std::string(name) + "'");
}

}  // namespace flexjoint
