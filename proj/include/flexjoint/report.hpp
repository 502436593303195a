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

#ifndef FLEXJOINT_REPORT_HPP_
#define FLEXJOINT_REPORT_HPP_

#include <ostream>
#include <string>

#include "flexjoint/harness.hpp"
#include "flexjoint/parameter_sets.hpp"

namespace flexjoint {

// Scientific notation, 17 significant digits; strtod gives the value back.
std::string format_double(double value);

// Header t,q_R1,q1,theta1,theta_dot1,dq1,tau_E1,tau_M1,tau_FF1,tau_C1,...
// then one row per logged tick.
void write_csv(std::ostream& out, const SimLog& log);

// Aligned table: one row per variant, max/mean error [deg], post-reversal
// oscillation [N·m] and peak torque rate per joint.
void write_metrics_table(std::ostream& out, const std::string& scenario_id, const ComparisonReport& report);

// {"<scenario id>": {"<variant label>": {"ff": .., "fb": .., "fault": ..,
//  "joint1": {"<metric>": value, ...}, ...}}}
std::string metrics_json(const std::string& scenario_id, const ComparisonReport& report);

void write_parameter_set(std::ostream& out, const ParameterSet& set);

// "FB-FF + MB-FB" -> "fb-ff_mb-fb"
std::string variant_slug(const std::string& label);

}  // namespace flexjoint

#endif  // FLEXJOINT_REPORT_HPP_
