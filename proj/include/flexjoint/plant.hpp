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

// Coupled motor/link equations of motion of an elastic-joint arm
//
//   J theta_ddot + tau_E / u                        = tau_M
//   M(q) q_ddot + C(q, q_dot) q_dot + g(q) + tau_F  = tau_E
//
// with tau_E evaluated at the torsion dq = theta / u - q, and a fixed-step
// fourth-order Runge-Kutta integrator over them.

#ifndef FLEXJOINT_PLANT_HPP_
#define FLEXJOINT_PLANT_HPP_

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "flexjoint/joint_model.hpp"
#include "flexjoint/rigid_body.hpp"

namespace flexjoint {

struct PlantState {
  Eigen::VectorXd theta;      // motor angles [rad]
  Eigen::VectorXd theta_dot;  // [rad/s]
  Eigen::VectorXd q;          // link angles [rad]
  Eigen::VectorXd q_dot;      // [rad/s]
  double t = 0.0;

  static PlantState zero(std::size_t joints);
  std::size_t joints() const { return static_cast<std::size_t>(q.size()); }
  Eigen::VectorXd torsion(const std::vector<JointParams>& params) const;
};

struct PlantDerivative {
  Eigen::VectorXd theta_dot;
  Eigen::VectorXd theta_ddot;
  Eigen::VectorXd q_dot;
  Eigen::VectorXd q_ddot;
};

// What the simulated robot is made of. The controllers may hold a different
// (e.g. perturbed) copy of the joint parameters.
struct PlantModel {
  std::vector<JointParams> joints;
  StiffnessLaw stiffness = StiffnessLaw::piecewise;
  FrictionLaw friction = FrictionLaw::piecewise;
  std::shared_ptr<const RigidBodyProvider> provider;

  void validate() const;
};

// Raised when a derivative evaluation produces a non-finite value.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(std::size_t joint, double time, const std::string& what);

  std::size_t joint() const { return joint_; }
  double time() const { return time_; }

 private:
  std::size_t joint_;
  double time_;
};

PlantDerivative plant_derivatives(const PlantState& s, const Eigen::VectorXd& motor_torque,
                                  const PlantModel& model);

// One classical RK4 step of length dt with the motor torque held constant.
PlantState plant_step(const PlantState& s, const Eigen::VectorXd& motor_torque,
                      const PlantModel& model, double dt);

// Elastic torque per joint at the current torsion.
Eigen::VectorXd elastic_torques(const PlantState& s, const PlantModel& model);

}  // namespace flexjoint

#endif  // FLEXJOINT_PLANT_HPP_
