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

#include "flexjoint/kernels.hpp"

#include <exception>
#include <stdexcept>

namespace flexjoint {
namespace {

// Runs body(i) for i in [0, n). Exceptions thrown inside the parallel region
// are captured and the first one is rethrown on the calling thread.
template <typename Body>
void for_each_index(long n, Execution execution, Body body) {
  if (execution == Execution::serial) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(flexjoint_kernel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

void check_sizes(std::size_t in, std::size_t out) {
  if (in != out) throw std::invalid_argument("batch kernel: input and output sizes differ");
}

}  // namespace

void elastic_torque_batch(std::span<const double> torsion, std::span<double> torque,
                          StiffnessLaw law, const StiffnessParams& p, Execution execution) {
  check_sizes(torsion.size(), torque.size());
  for_each_index(static_cast<long>(torsion.size()), execution, [&](long i) {
    torque[static_cast<std::size_t>(i)] = elastic_torque(law, torsion[static_cast<std::size_t>(i)], p);
  });
}

void inverse_stiffness_batch(std::span<const double> torque, std::span<double> torsion,
                             const StiffnessParams& p, Execution execution) {
  check_sizes(torque.size(), torsion.size());
  for_each_index(static_cast<long>(torque.size()), execution, [&](long i) {
    torsion[static_cast<std::size_t>(i)] = inverse_stiffness_smooth(torque[static_cast<std::size_t>(i)], p);
  });
}

std::vector<MotorReference> feedforward_table(const Trajectory& trajectory,
                                              const RigidBodyProvider& provider,
                                              const std::vector<JointParams>& params,
                                              std::span<const double> times, Execution execution) {
  const std::size_t n = params.size();
  if (trajectory.joints() != n || provider.joints() != n) {
    throw std::invalid_argument("feedforward table: joint counts differ");
  }
  std::vector<MotorReference> table(times.size() * n);
  for_each_index(static_cast<long>(times.size()), execution, [&](long row) {
    const auto r = static_cast<std::size_t>(row);
    const ReferenceSample ref = trajectory.sample(times[r]);
    const CouplingTorques c = provider.coupling(ref.angles(), ref.velocities(), ref.accelerations());
    for (std::size_t i = 0; i < n; ++i) {
      const auto e = static_cast<Eigen::Index>(i);
      const JointCoupling jc{c.inertia[e], c.acceleration[e], c.coriolis[e], c.gravity[e]};
      table[r * n + i] = flatness_ff(ref.joints[i], jc, params[i], i);
    }
  });
  return table;
}

}  // namespace flexjoint
