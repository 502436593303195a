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

// Closed-loop scenarios: trajectory -> feedforward + feedback -> shaping ->
// plant, stepped at the control rate with the torque held between ticks.

#ifndef FLEXJOINT_HARNESS_HPP_
#define FLEXJOINT_HARNESS_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flexjoint/controllers.hpp"
#include "flexjoint/joint_model.hpp"
#include "flexjoint/kernels.hpp"
#include "flexjoint/plant.hpp"
#include "flexjoint/rigid_body.hpp"
#include "flexjoint/trajectory.hpp"

namespace flexjoint {

enum class ProviderKind { constant, planar_2r };
enum class CouplingSource { reference, measured };
enum class ShapingPreset { off, hw_safety };

struct ControllerSelection {
  FeedforwardMode ff = FeedforwardMode::flatness;
  FeedbackMode fb = FeedbackMode::none;

  // "FB-FF", "R-FF", "C-FB", "MB-FB", or combinations such as "FB-FF + MB-FB".
  std::string label() const;
  friend bool operator==(const ControllerSelection&, const ControllerSelection&) = default;
};

struct ScenarioConfig {
  std::vector<JointParams> model;  // what the controllers believe
  std::vector<JointParams> plant;  // ground truth; empty means identical to model
  ProviderKind provider = ProviderKind::constant;
  std::vector<double> gravity_amplitude;  // constant provider, per joint; empty means 0
  Planar2RGeometry geometry;
  std::string trajectory = "demanding";
  double amplitude = 1.0;
  ControllerSelection controller;
  double dt_plant = 1e-4;
  double dt_ctrl = 8e-4;
  std::optional<double> duration;  // defaults to the trajectory duration
  StiffnessLaw plant_stiffness = StiffnessLaw::piecewise;
  FrictionLaw plant_friction = FrictionLaw::piecewise;
  double sensor_resolution = 0.0;  // link encoder [rad]
  ShapingPreset shaping = ShapingPreset::off;
  CouplingSource coupling_source = CouplingSource::reference;

  std::size_t joints() const { return model.size(); }
  const std::vector<JointParams>& plant_params() const { return plant.empty() ? model : plant; }
  // Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

std::shared_ptr<const RigidBodyProvider> make_provider(const ScenarioConfig& cfg,
                                                       const std::vector<JointParams>& params);
std::shared_ptr<const Trajectory> make_trajectory(const ScenarioConfig& cfg);
PlantModel make_plant(const ScenarioConfig& cfg);

// One joint at one control tick.
struct JointRecord {
  double q_ref = 0.0;
  double q_ref_dot = 0.0;
  double q = 0.0;
  double theta = 0.0;
  double theta_dot = 0.0;
  double torsion = 0.0;
  double elastic_torque = 0.0;
  double motor_torque = 0.0;
  double ff_torque = 0.0;
  double fb_torque = 0.0;
  double load_ref = 0.0;  // link load the model predicts along the reference
};

struct SimFault {
  std::size_t joint = 0;
  double time = 0.0;
  std::string message;
};

struct SimLog {
  std::size_t joints = 0;
  double dt_ctrl = 0.0;
  std::vector<double> t;
  std::vector<JointRecord> records;  // tick-major, joints per tick
  std::optional<SimFault> fault;

  std::size_t ticks() const { return t.size(); }
  const JointRecord& at(std::size_t tick, std::size_t joint) const {
    return records[tick * joints + joint];
  }
};

// Runs one scenario. Integration and controller faults stop the run and are
// reported in SimLog::fault with the ticks logged so far.
SimLog run_scenario(const ScenarioConfig& cfg);

struct Window {
  double start = 0.0;
  double end = 0.0;
};

struct JointMetrics {
  double max_abs_error_deg = 0.0;
  double mean_abs_error_deg = 0.0;
  double elastic_oscillation = 0.0;  // worst post-reversal peak-to-peak [N·m]
  double max_torque_rate = 0.0;      // [N·m/s]
};

struct Metrics {
  std::vector<JointMetrics> joints;
};

// Windows of `length` seconds starting where the reference velocity changes
// sign (zero-velocity dwells in between are skipped).
std::vector<std::vector<Window>> reversal_windows(const SimLog& log, double length = 0.5);

// Throws std::domain_error for an empty log.
Metrics compute_metrics(const SimLog& log, const std::vector<std::vector<Window>>& windows);
Metrics compute_metrics(const SimLog& log);

struct VariantResult {
  ControllerSelection selection;
  std::string label;
  SimLog log;
  Metrics metrics;
};

struct ComparisonReport {
  std::vector<VariantResult> variants;
};

// Runs every variant on the same scenario. Throws std::domain_error for
// fewer than two variants. The parallel and serial paths give identical
// results.
ComparisonReport compare(const ScenarioConfig& base, const std::vector<ControllerSelection>& variants,
                         Execution execution = Execution::parallel);

std::string_view to_string(ProviderKind kind);
std::string_view to_string(CouplingSource source);
std::string_view to_string(ShapingPreset preset);
ProviderKind parse_provider_kind(std::string_view name);
CouplingSource parse_coupling_source(std::string_view name);
ShapingPreset parse_shaping_preset(std::string_view name);

}  // namespace flexjoint

#endif  // FLEXJOINT_HARNESS_HPP_
