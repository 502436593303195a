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

// Runtime invariant checks, one per module property, with stable ids.

#ifndef FLEXJOINT_VALIDATION_HPP_
#define FLEXJOINT_VALIDATION_HPP_

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "flexjoint/controllers.hpp"
#include "flexjoint/harness.hpp"
#include "flexjoint/trajectory.hpp"

namespace flexjoint {

struct ValidationOptions {
  // Scales the plant's c_TR in the flatness-consistency scenario only.
  double plant_rigidity_scale = 1.0;
};

struct CheckOutcome {
  bool passed = false;
  std::string detail;
};

struct Check {
  std::string id;
  std::string summary;
  std::function<CheckOutcome(const ValidationOptions&)> run;
};

const std::vector<Check>& validation_checks();

// kr300-joint1 on a plant whose stiffness is the exact inverse of the
// controller's smooth inverse law, with smooth friction.
ScenarioConfig idealized_scenario(std::string_view preset);

// Idealized demanding scenario, open-loop flatness feedforward, no shaping,
// plant and control at 1e-5 s.
ScenarioConfig flatness_consistency_scenario(double plant_rigidity_scale = 1.0);

// Five-point central differences of theta_R and theta_R' at h = 1e-4 s
// against the analytic theta_R' and theta_R'' across a profile, skipping
// stencils that straddle the start or end of a move. Ratios are the worst
// error over its allowance (rel. 1e-6 / 1e-5 plus 1e-9 / 1e-8 of the peak).
struct ChainCheck {
  double velocity_ratio = 0.0;
  double acceleration_ratio = 0.0;
  int checked = 0;

  bool passed() const { return checked > 0 && velocity_ratio <= 1.0 && acceleration_ratio <= 1.0; }
};

ChainCheck motor_chain_check(const ProfileTrajectory& trajectory, const JointParams& p,
                             const JointCoupling& coupling);

}  // namespace flexjoint

#endif  // FLEXJOINT_VALIDATION_HPP_
