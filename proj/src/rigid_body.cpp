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

#include "flexjoint/rigid_body.hpp"

#include <cmath>
#include <stdexcept>

namespace flexjoint {

CouplingTorques RigidBodyProvider::coupling(const Eigen::VectorXd& q, const Eigen::VectorXd& q_dot,
                                            const Eigen::VectorXd& q_ddot) const {
  const Eigen::MatrixXd mass = mass_matrix(q);
  CouplingTorques c;
  c.inertia = mass.diagonal();
  c.acceleration = mass * q_ddot - c.inertia.cwiseProduct(q_ddot);
  c.coriolis = coriolis(q, q_dot);
  c.gravity = gravity(q);
  return c;
}

ConstantProvider::ConstantProvider(std::vector<double> inertia, std::vector<double> gravity_amplitude)
    : inertia_(std::move(inertia)), gravity_amplitude_(std::move(gravity_amplitude)) {
  if (gravity_amplitude_.size() != inertia_.size()) {
    throw std::invalid_argument("constant provider: inertia and gravity sizes differ");
  }
  for (double m : inertia_) {
    if (!(m > 0.0)) throw std::invalid_argument("constant provider: inertia must be > 0");
  }
}

Eigen::MatrixXd ConstantProvider::mass_matrix(const Eigen::VectorXd&) const {
  return Eigen::Map<const Eigen::VectorXd>(inertia_.data(), inertia_.size()).asDiagonal();
}

Eigen::VectorXd ConstantProvider::coriolis(const Eigen::VectorXd&, const Eigen::VectorXd&) const {
  return Eigen::VectorXd::Zero(inertia_.size());
}

Eigen::VectorXd ConstantProvider::gravity(const Eigen::VectorXd& q) const {
  Eigen::VectorXd g(inertia_.size());
  for (std::size_t i = 0; i < inertia_.size(); ++i) {
    g[i] = gravity_amplitude_[i] == 0.0 ? 0.0 : gravity_amplitude_[i] * std::sin(q[i]);
  }
  return g;
}

void Planar2RGeometry::validate() const {
  if (!(mass1 > 0.0 && mass2 > 0.0)) throw std::invalid_argument("planar 2R: masses must be > 0");
  if (!(length1 > 0.0 && length2 > 0.0)) throw std::invalid_argument("planar 2R: lengths must be > 0");
  if (!(com1 >= 0.0 && com2 >= 0.0)) throw std::invalid_argument("planar 2R: com offsets must be >= 0");
  if (!(inertia1 >= 0.0 && inertia2 >= 0.0)) throw std::invalid_argument("planar 2R: inertias must be >= 0");
}

Planar2RProvider::Planar2RProvider(const Planar2RGeometry& geometry) : geometry_(geometry) {
  geometry_.validate();
}

Eigen::MatrixXd Planar2RProvider::mass_matrix(const Eigen::VectorXd& q) const {
  const auto& g = geometry_;
  const double c2 = std::cos(q[1]);
  const double m22 = g.inertia2 + g.mass2 * g.com2 * g.com2;
  const double m12 = m22 + g.mass2 * g.length1 * g.com2 * c2;
  const double m11 = g.inertia1 + g.mass1 * g.com1 * g.com1 + g.inertia2 +
                     g.mass2 * (g.length1 * g.length1 + g.com2 * g.com2 +
                                2.0 * g.length1 * g.com2 * c2);
  Eigen::MatrixXd m(2, 2);
  m << m11, m12, m12, m22;
  return m;
}

Eigen::VectorXd Planar2RProvider::coriolis(const Eigen::VectorXd& q, const Eigen::VectorXd& q_dot) const {
  const double h = geometry_.mass2 * geometry_.length1 * geometry_.com2 * std::sin(q[1]);
  Eigen::VectorXd c(2);
  c << -h * (2.0 * q_dot[0] * q_dot[1] + q_dot[1] * q_dot[1]), h * q_dot[0] * q_dot[0];
  return c;
}

Eigen::VectorXd Planar2RProvider::gravity(const Eigen::VectorXd& q) const {
  const auto& g = geometry_;
  const double c1 = std::cos(q[0]);
  const double c12 = std::cos(q[0] + q[1]);
  Eigen::VectorXd v(2);
  v << (g.mass1 * g.com1 + g.mass2 * g.length1) * g.gravity * c1 + g.mass2 * g.com2 * g.gravity * c12,
      g.mass2 * g.com2 * g.gravity * c12;
  return v;
}

}  // namespace flexjoint
