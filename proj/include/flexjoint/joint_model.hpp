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

// Constitutive laws of a single geared joint: link-side friction and the
// elastic torque transmitted across the gearbox as a function of the torsion
// angle dq = theta / u - q.
//
// All functions are pure; parameters are plain aggregates validated once at
// load time.

#ifndef FLEXJOINT_JOINT_MODEL_HPP_
#define FLEXJOINT_JOINT_MODEL_HPP_

#include <string_view>

namespace flexjoint {

struct FrictionParams {
  double viscous = 0.0;     // f_v  [N·m·s/rad]
  double coulomb = 0.0;     // f_c  [N·m]
  double smoothness = 1.0;  // s_F  [s/rad]

  void validate() const;
};

struct StiffnessParams {
  double lost_motion_stiffness = 1.0;  // c_LM   [N·m/rad]
  double rigidity_stiffness = 2.0;     // c_TR   [N·m/rad]
  double backlash_angle = 0.0;         // phi_B* [rad], half-width of the dead zone
  double lost_motion_angle = 0.0;      // phi_LM [rad]
  double tanh_slope = 0.0;             // s_E1   [1/rad]
  double inverse_smoothness = 1.0;     // s_E2   [1/(N·m)]

  // phi_B = phi_B* + phi_LM
  double effective_backlash() const { return backlash_angle + lost_motion_angle; }
  // tau_E0 = c_LM * phi_LM
  double offset_torque() const { return lost_motion_stiffness * lost_motion_angle; }

  // Throws std::invalid_argument naming the first violated constraint.
  void validate() const;
};

struct JointParams {
  double motor_inertia = 1.0;  // J [kg·m²]
  double gear_ratio = 1.0;     // u, link angle = motor angle / u
  double link_inertia = 1.0;   // M [kg·m²], constant rigid-body provider only
  FrictionParams friction;
  StiffnessParams stiffness;
  double position_gain = 0.0;           // K_P [1/s]
  double speed_gain = 0.0;              // K_V [N·m·s/rad]
  double torque_limit = 1e30;           // tau_lim [N·m], motor side
  double torque_rate_limit = 1e30;      // [N·m/s]
  double lowpass_time_constant = 0.0;   // [s], 0 disables the filter

  void validate() const;
};

// Coulomb + viscous friction with the hard sign switch. Throws
// std::domain_error for non-finite velocity.
double friction_piecewise(double velocity, const FrictionParams& p);

// Logistic approximation of the Coulomb term; C-infinity in velocity.
double friction_smooth(double velocity, const FrictionParams& p);

struct FrictionRates {
  double first;   // d/dt of friction_smooth(q_dot(t))
  double second;  // d²/dt²
};

// Time derivatives of friction_smooth along a trajectory with the given
// velocity, acceleration and jerk.
FrictionRates friction_smooth_rates(double velocity, double acceleration,
                                    double jerk, const FrictionParams& p);

// Backlash / lost-motion / torsional-rigidity law with hard transitions.
double stiffness_piecewise(double torsion, const StiffnessParams& p);

// Continuously differentiable approximation built from the third-order
// ramp response, reflected to negative torsion and blended by tanh.
double stiffness_smooth(double torsion, const StiffnessParams& p);

// Zero-state response y(dq) of
//   sum_k (phi_B/n)^k C(n,k) y^(k)(t) = c_TR t
// for any order n >= 1. n = 3 is the branch used by stiffness_smooth.
// Throws std::domain_error for n == 0 or torsion < 0.
double stiffness_variable_order(double torsion, int order, const StiffnessParams& p);

// Exact inverse of stiffness_piecewise outside the dead zone (0 maps to 0).
double inverse_stiffness_piecewise(double torque, const StiffnessParams& p);

// Logistic approximation of the inverse law: dq(tau).
double inverse_stiffness_smooth(double torque, const StiffnessParams& p);

struct InverseStiffnessJet {
  double torsion;  // dq(tau)
  double d1;       // d dq / d tau
  double d2;       // d² dq / d tau²
};

InverseStiffnessJet inverse_stiffness_smooth_jet(double torque, const StiffnessParams& p);

// The elastic torque tau with inverse_stiffness_smooth(tau) == torsion, i.e.
// the forward law a flatness controller built on the smooth inverse assumes.
// Solved by safeguarded Newton iteration.
double stiffness_inverse_consistent(double torsion, const StiffnessParams& p);

enum class StiffnessLaw { piecewise, smooth, inverse_consistent };
enum class FrictionLaw { piecewise, smooth };

double elastic_torque(StiffnessLaw law, double torsion, const StiffnessParams& p);
double friction_torque(FrictionLaw law, double velocity, const FrictionParams& p);

// Torsion that the given law produces under a static elastic torque. Used to
// place the plant in equilibrium at t = 0.
double static_torsion(StiffnessLaw law, double torque, const StiffnessParams& p);

std::string_view to_string(StiffnessLaw law);
std::string_view to_string(FrictionLaw law);
StiffnessLaw parse_stiffness_law(std::string_view name);
FrictionLaw parse_friction_law(std::string_view name);

}  // namespace flexjoint

#endif  // FLEXJOINT_JOINT_MODEL_HPP_
