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

#ifndef FLEXJOINT_PARAMETER_SETS_HPP_
#define FLEXJOINT_PARAMETER_SETS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "flexjoint/joint_model.hpp"

namespace flexjoint {

// Gear ratios are published as fractions; keep them that way until use.
struct GearRatio {
  long numerator = 1;
  long denominator = 1;

  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
  std::string text() const;
};

struct ParameterSet {
  std::string name;
  std::string title;
  std::vector<JointParams> joints;
  std::vector<GearRatio> gear_ratios;  // parallel to joints, for display
};

// "kr300-joint1", "kr300-all", "legacy-v1".
const std::vector<std::string_view>& parameter_set_names();

// Every returned set has passed JointParams::validate(). Throws
// std::invalid_argument for unknown names.
ParameterSet parameter_set(std::string_view name);

}  // namespace flexjoint

#endif  // FLEXJOINT_PARAMETER_SETS_HPP_
