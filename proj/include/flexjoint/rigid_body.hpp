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

// Link-side rigid-body terms M(q), C(q, q_dot) q_dot and g(q).

#ifndef FLEXJOINT_RIGID_BODY_HPP_
#define FLEXJOINT_RIGID_BODY_HPP_

#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Dense>

namespace flexjoint {

// Per-joint split of the rigid-body terms as seen by one joint's controller:
// the diagonal inertia, the inertia torque caused by the other links'
// accelerations, the Coriolis/centripetal torque and gravity.
struct CouplingTorques {
  Eigen::VectorXd inertia;       // M_ii
  Eigen::VectorXd acceleration;  // tau_A,i = sum_{j != i} M_ij q_ddot_j
  Eigen::VectorXd coriolis;      // tau_CC,i = (C(q, q_dot) q_dot)_i
  Eigen::VectorXd gravity;       // g_i
};

class RigidBodyProvider {
 public:
  virtual ~RigidBodyProvider() = default;

  virtual std::size_t joints() const = 0;
  virtual Eigen::MatrixXd mass_matrix(const Eigen::VectorXd& q) const = 0;
  // C(q, q_dot) q_dot
  virtual Eigen::VectorXd coriolis(const Eigen::VectorXd& q, const Eigen::VectorXd& q_dot) const = 0;
  virtual Eigen::VectorXd gravity(const Eigen::VectorXd& q) const = 0;

  CouplingTorques coupling(const Eigen::VectorXd& q, const Eigen::VectorXd& q_dot,
                           const Eigen::VectorXd& q_ddot) const;
};

// Decoupled links with fixed inertia and gravity torque g0_i sin(q_i).
class ConstantProvider final : public RigidBodyProvider {
 public:
  ConstantProvider(std::vector<double> inertia, std::vector<double> gravity_amplitude);

  std::size_t joints() const override { return inertia_.size(); }
  Eigen::MatrixXd mass_matrix(const Eigen::VectorXd& q) const override;
  Eigen::VectorXd coriolis(const Eigen::VectorXd& q, const Eigen::VectorXd& q_dot) const override;
  Eigen::VectorXd gravity(const Eigen::VectorXd& q) const override;

 private:
  std::vector<double> inertia_;
  std::vector<double> gravity_amplitude_;
};

struct Planar2RGeometry {
  double mass1 = 400.0;     // kg
  double mass2 = 300.0;
  double length1 = 1.2;     // m
  double length2 = 1.0;
  double com1 = 0.6;        // distance joint -> centre of mass, m
  double com2 = 0.5;
  double inertia1 = 48.0;   // about the centre of mass, kg·m²
  double inertia2 = 25.0;
  double gravity = 9.81;    // m/s², acting along -y; 0 for a horizontal arm

  void validate() const;
};

// Two revolute joints in a vertical plane, angles measured from +x, q2
// relative to link 1.
class Planar2RProvider final : public RigidBodyProvider {
 public:
  explicit Planar2RProvider(const Planar2RGeometry& geometry);

  std::size_t joints() const override { return 2; }
  Eigen::MatrixXd mass_matrix(const Eigen::VectorXd& q) const override;
  Eigen::VectorXd coriolis(const Eigen::VectorXd& q, const Eigen::VectorXd& q_dot) const override;
  Eigen::VectorXd gravity(const Eigen::VectorXd& q) const override;

  const Planar2RGeometry& geometry() const { return geometry_; }

 private:
  Planar2RGeometry geometry_;
};

}  // namespace flexjoint

#endif  // FLEXJOINT_RIGID_BODY_HPP_
