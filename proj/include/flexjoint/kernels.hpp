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

// Data-parallel batch kernels. Each has an OpenMP path and the plain serial
// loop it must reproduce bit for bit.

#ifndef FLEXJOINT_KERNELS_HPP_
#define FLEXJOINT_KERNELS_HPP_

#include <span>
#include <vector>

#include "flexjoint/controllers.hpp"
#include "flexjoint/joint_model.hpp"
#include "flexjoint/rigid_body.hpp"
#include "flexjoint/trajectory.hpp"

namespace flexjoint {

enum class Execution { serial, parallel };

void elastic_torque_batch(std::span<const double> torsion, std::span<double> torque,
                          StiffnessLaw law, const StiffnessParams& p, Execution execution);

void inverse_stiffness_batch(std::span<const double> torque, std::span<double> torsion,
                             const StiffnessParams& p, Execution execution);

// Flatness outputs for every joint at the given times, coupling evaluated
// along the reference. Row-major: times.size() rows of params.size() entries.
std::vector<MotorReference> feedforward_table(const Trajectory& trajectory,
                                              const RigidBodyProvider& provider,
                                              const std::vector<JointParams>& params,
                                              std::span<const double> times, Execution execution);

}  // namespace flexjoint

#endif  // FLEXJOINT_KERNELS_HPP_
