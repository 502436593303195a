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

#include "flexjoint/plant.hpp"

#include <cmath>
#include <sstream>

namespace flexjoint {
namespace {

std::string fault_message(std::size_t joint, double time, const std::string& what) {
  std::ostringstream os;
  os << what << " (joint " << joint + 1 << ", t = " << time << " s)";
  return os.str();
}

void check_finite(const Eigen::VectorXd& v, double time, const char* what) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw IntegrationError(static_cast<std::size_t>(i), time, std::string("non-finite ") + what);
    }
  }
}

PlantState advance(const PlantState& s, const PlantDerivative& d, double h) {
  PlantState out;
  out.theta = s.theta + h * d.theta_dot;
  out.theta_dot = s.theta_dot + h * d.theta_ddot;
  out.q = s.q + h * d.q_dot;
  out.q_dot = s.q_dot + h * d.q_ddot;
  out.t = s.t + h;
  return out;
}

}  // namespace

IntegrationError::IntegrationError(std::size_t joint, double time, const std::string& what)
    : std::runtime_error(fault_message(joint, time, what)), joint_(joint), time_(time) {}

PlantState PlantState::zero(std::size_t joints) {
  const auto n = static_cast<Eigen::Index>(joints);
  return {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n),
          Eigen::VectorXd::Zero(n), 0.0};
}

Eigen::VectorXd PlantState::torsion(const std::vector<JointParams>& params) const {
  Eigen::VectorXd dq(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) dq[i] = theta[i] / params[i].gear_ratio - q[i];
  return dq;
}

void PlantModel::validate() const {
  if (joints.empty()) throw std::invalid_argument("plant: no joints");
  if (!provider) throw std::invalid_argument("plant: missing rigid-body provider");
  if (provider->joints() != joints.size()) {
    throw std::invalid_argument("plant: provider joint count does not match parameters");
  }
  for (const JointParams& p : joints) p.validate();
}

Eigen::VectorXd elastic_torques(const PlantState& s, const PlantModel& model) {
  const Eigen::VectorXd dq = s.torsion(model.joints);
  Eigen::VectorXd tau(dq.size());
  for (Eigen::Index i = 0; i < dq.size(); ++i) {
    tau[i] = elastic_torque(model.stiffness, dq[i], model.joints[i].stiffness);
  }
  return tau;
}

PlantDerivative plant_derivatives(const PlantState& s, const Eigen::VectorXd& motor_torque,
                                  const PlantModel& model) {
  const auto n = static_cast<Eigen::Index>(model.joints.size());
  check_finite(s.theta, s.t, "motor angle");
  check_finite(s.theta_dot, s.t, "motor velocity");
  check_finite(s.q, s.t, "link angle");
  check_finite(s.q_dot, s.t, "link velocity");
  check_finite(motor_torque, s.t, "motor torque");

  PlantDerivative d;
  d.theta_dot = s.theta_dot;
  d.q_dot = s.q_dot;
  d.theta_ddot.resize(n);
  Eigen::VectorXd link_rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const JointParams& p = model.joints[i];
    const double dq = s.theta[i] / p.gear_ratio - s.q[i];
    const double tau_e = elastic_torque(model.stiffness, dq, p.stiffness);
    d.theta_ddot[i] = (motor_torque[i] - tau_e / p.gear_ratio) / p.motor_inertia;
    link_rhs[i] = tau_e - friction_torque(model.friction, s.q_dot[i], p.friction);
  }
  link_rhs -= model.provider->coriolis(s.q, s.q_dot) + model.provider->gravity(s.q);
  if (n == 1) {
    d.q_ddot = link_rhs / model.provider->mass_matrix(s.q)(0, 0);
  } else {
    d.q_ddot = model.provider->mass_matrix(s.q).ldlt().solve(link_rhs);
  }
  check_finite(d.theta_ddot, s.t, "motor acceleration");
  check_finite(d.q_ddot, s.t, "link acceleration");
  return d;
}

PlantState plant_step(const PlantState& s, const Eigen::VectorXd& motor_torque,
                      const PlantModel& model, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("plant step: dt must be > 0");
  const PlantDerivative k1 = plant_derivatives(s, motor_torque, model);
  const PlantDerivative k2 = plant_derivatives(advance(s, k1, 0.5 * dt), motor_torque, model);
  const PlantDerivative k3 = plant_derivatives(advance(s, k2, 0.5 * dt), motor_torque, model);
  const PlantDerivative k4 = plant_derivatives(advance(s, k3, dt), motor_torque, model);
  const double w = dt / 6.0;
  PlantState out;
  out.theta = s.theta + w * (k1.theta_dot + 2.0 * k2.theta_dot + 2.0 * k3.theta_dot + k4.theta_dot);
  out.theta_dot =
      s.theta_dot + w * (k1.theta_ddot + 2.0 * k2.theta_ddot + 2.0 * k3.theta_ddot + k4.theta_ddot);
  out.q = s.q + w * (k1.q_dot + 2.0 * k2.q_dot + 2.0 * k3.q_dot + k4.q_dot);
  out.q_dot = s.q_dot + w * (k1.q_ddot + 2.0 * k2.q_ddot + 2.0 * k3.q_ddot + k4.q_ddot);
  out.t = s.t + dt;
  return out;
}

}  // namespace flexjoint
