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

// Joint controllers: flatness-based and rigid-model feedforward, cascaded
// P position / P velocity feedback, and feedforward torque shaping.

#ifndef FLEXJOINT_CONTROLLERS_HPP_
#define FLEXJOINT_CONTROLLERS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "flexjoint/joint_model.hpp"
#include "flexjoint/trajectory.hpp"

namespace flexjoint {

// Rigid-body terms seen by one joint, frozen for the duration of a tick.
struct JointCoupling {
  double inertia = 0.0;       // M_ii [kg·m²]
  double acceleration = 0.0;  // tau_A [N·m]
  double coriolis = 0.0;      // tau_CC [N·m]
  double gravity = 0.0;       // g [N·m]
};

struct MotorReference {
  double feedforward_torque = 0.0;  // tau_FF [N·m], motor side
  double angle = 0.0;               // theta_R [rad]
  double velocity = 0.0;            // theta_R' [rad/s]
  double acceleration = 0.0;        // theta_R'' [rad/s²]
};

class ControllerFault : public std::runtime_error {
 public:
  ControllerFault(std::size_t joint, const std::string& what);
  std::size_t joint() const { return joint_; }

 private:
  std::size_t joint_;
};

// Inverts the elastic joint along the reference: the link load
//   tau_L = M q_R'' + tau_A + tau_CC + g + friction_smooth(q_R'),
// the smooth inverse stiffness gives the torsion dq(tau_L), and
//   theta_R = u (q_R + dq),  tau_FF = J theta_R'' + tau_L / u.
// Throws ControllerFault (carrying `joint`) on a non-finite result.
MotorReference flatness_ff(const JointReference& ref, const JointCoupling& coupling,
                           const JointParams& p, std::size_t joint = 0);

// Feedforward of the same arm with rigid gears: ((M + J u²) q_R'' + tau_A +
// tau_CC + g + friction_smooth(q_R')) / u.
double rigid_ff(const JointReference& ref, const JointCoupling& coupling, const JointParams& p);

// Motor reference of a rigid joint, theta_R = u q_R.
MotorReference rigid_motor_reference(const JointReference& ref, const JointParams& p,
                                     double feedforward_torque);

enum class FeedbackMode { none, conventional, model_based };
enum class FeedforwardMode { none, rigid, flatness };

// theta_C' = K_P (q_R - q);  tau_C = K_V (theta_C' + theta_ref' - theta').
// theta_ref' is u q_R' for conventional and the flatness motor velocity for
// model-based feedback.
double feedback(double link_angle, double motor_velocity, const JointReference& ref,
                const MotorReference& motor_ref, FeedbackMode mode, const JointParams& p);

// Magnitude clamp, then per-tick rate clamp, then first-order low-pass.
class FeedforwardShaper {
 public:
  FeedforwardShaper(double limit, double rate_limit, double time_constant);
  explicit FeedforwardShaper(const JointParams& p)
      : FeedforwardShaper(p.torque_limit, p.torque_rate_limit, p.lowpass_time_constant) {}

  // Pass-through shaper.
  static FeedforwardShaper disabled();

  double operator()(double raw, double dt);
  void reset();

 private:
  double limit_;
  double rate_limit_;
  double time_constant_;
  double rate_limited_ = 0.0;
  double filtered_ = 0.0;
};

// Rounds to the nearest multiple of the encoder resolution; 0 is exact.
double sensor_quantize(double value, double resolution);

std::string_view to_string(FeedbackMode mode);
std::string_view to_string(FeedforwardMode mode);
FeedbackMode parse_feedback_mode(std::string_view name);
FeedforwardMode parse_feedforward_mode(std::string_view name);

}  // namespace flexjoint

#endif  // FLEXJOINT_CONTROLLERS_HPP_
