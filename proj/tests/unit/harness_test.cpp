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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "flexjoint/harness.hpp"
#include "flexjoint/parameter_sets.hpp"

namespace flexjoint {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

ScenarioConfig base() {
  ScenarioConfig cfg;
  cfg.model = parameter_set("kr300-joint1").joints;
  return cfg;
}

// Exact model knowledge: the plant obeys the laws the controller inverts.
ScenarioConfig idealized() {
  ScenarioConfig cfg = base();
  cfg.plant_stiffness = StiffnessLaw::inverse_consistent;
  cfg.plant_friction = FrictionLaw::smooth;
  return cfg;
}

bool same_bits(const SimLog& a, const SimLog& b) {
  return a.ticks() == b.ticks() && a.records.size() == b.records.size() &&
         std::memcmp(a.t.data(), b.t.data(), a.t.size() * sizeof(double)) == 0 &&
         std::memcmp(a.records.data(), b.records.data(), a.records.size() * sizeof(JointRecord)) == 0;
}

// One joint, reference at rest at 0, error pattern supplied per tick.
SimLog synthetic(const std::vector<double>& error, double dt = 1e-3) {
  SimLog log;
  log.joints = 1;
  log.dt_ctrl = dt;
  for (std::size_t k = 0; k < error.size(); ++k) {
    log.t.push_back(static_cast<double>(k) * dt);
    JointRecord r;
    r.q = -error[k];
    log.records.push_back(r);
  }
  return log;
}

TEST(Scenario, ZeroDurationGivesEmptyLog) {
  ScenarioConfig cfg = base();
  cfg.duration = 0.0;
  const SimLog log = run_scenario(cfg);
  EXPECT_EQ(log.ticks(), 0u);
  EXPECT_TRUE(log.records.empty());
  EXPECT_FALSE(log.fault.has_value());
  EXPECT_THROW(compute_metrics(log), std::domain_error);
}

TEST(Scenario, RerunIsBitIdentical) {
  ScenarioConfig cfg = base();
  cfg.controller = {FeedforwardMode::flatness, FeedbackMode::model_based};
  cfg.sensor_resolution = 0.017 * kDeg;
  cfg.duration = 3.0;
  EXPECT_TRUE(same_bits(run_scenario(cfg), run_scenario(cfg)));
}

TEST(Scenario, LogIsCompleteAndFinite) {
  for (FeedforwardMode ff : {FeedforwardMode::flatness, FeedforwardMode::rigid}) {
    ScenarioConfig cfg = base();
    cfg.controller = {ff, FeedbackMode::conventional};
    const SimLog log = run_scenario(cfg);
    ASSERT_FALSE(log.fault.has_value());
    ASSERT_EQ(log.ticks(), static_cast<std::size_t>(std::floor(7.0 / 8e-4 + 1e-9)));
    ASSERT_EQ(log.records.size(), log.ticks());
    for (std::size_t k = 0; k < log.ticks(); ++k) {
      EXPECT_NEAR(log.t[k], static_cast<double>(k) * 8e-4, 1e-12);
      if (k > 0) ASSERT_GT(log.t[k], log.t[k - 1]);
      const JointRecord& r = log.at(k, 0);
      for (double v : {r.q_ref, r.q_ref_dot, r.q, r.theta, r.theta_dot, r.torsion, r.elastic_torque, r.motor_torque,
                       r.ff_torque, r.fb_torque, r.load_ref}) {
        ASSERT_TRUE(std::isfinite(v)) << k;
      }
      ASSERT_EQ(r.motor_torque, r.ff_torque + r.fb_torque);
    }
  }
}

TEST(Scenario, StartsInEquilibriumWithTheLoad) {
  ScenarioConfig cfg = base();
  cfg.gravity_amplitude = {4000.0};
  cfg.trajectory = "step-free-ramp";
  cfg.duration = 0.4;  // inside the lead dwell
  const SimLog log = run_scenario(cfg);
  ASSERT_EQ(log.ticks(), 500u);
  for (std::size_t k = 0; k < log.ticks(); ++k) EXPECT_NEAR(log.at(k, 0).q, 0.0, 1e-6 * kDeg);
}

TEST(Scenario, InvalidConfigsAreRejected) {
  ScenarioConfig cfg = base();
  cfg.dt_ctrl = 2.5e-4;
  cfg.dt_plant = 1e-4;
  EXPECT_THROW(run_scenario(cfg), std::invalid_argument);
  cfg = base();
  cfg.provider = ProviderKind::planar_2r;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = base();
  cfg.duration = -1.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = base();
  cfg.plant = parameter_set("kr300-all").joints;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = base();
  cfg.trajectory = "circle";
  EXPECT_THROW(run_scenario(cfg), std::invalid_argument);
}

TEST(Scenario, IntegrationFaultKeepsPartialLog) {
  // A near-massless motor puts the torsion mode near 1e4 rad/s, far past
  // the RK4 stability limit at this step, so the state overflows.
  ScenarioConfig cfg = base();
  cfg.plant = cfg.model;
  cfg.plant[0].motor_inertia = 1e-6;
  cfg.dt_plant = 1e-3;
  cfg.dt_ctrl = 1e-3;
  const SimLog log = run_scenario(cfg);
  ASSERT_TRUE(log.fault.has_value());
  EXPECT_EQ(log.fault->joint, 0u);
  EXPECT_GT(log.fault->time, 0.0);
  EXPECT_FALSE(log.fault->message.empty());
  EXPECT_LT(log.ticks(), 7000u);
  EXPECT_EQ(log.records.size(), log.ticks());
}

// The coupling torques are tick constants inside the flatness chain, so their
// time derivatives are missing from the motor reference; on this arm that is
// worth several N·m and tenths of a degree. Only a loose bound is checked.
TEST(Scenario, PlanarArmFollowsLemniscate) {
  for (CouplingSource source : {CouplingSource::reference, CouplingSource::measured}) {
    ScenarioConfig cfg = idealized();
    cfg.model = parameter_set("kr300-all").joints;
    cfg.model.resize(2);
    cfg.provider = ProviderKind::planar_2r;
    cfg.trajectory = "lemniscate2r";
    cfg.coupling_source = source;
    cfg.controller = {FeedforwardMode::flatness, FeedbackMode::model_based};
    const SimLog log = run_scenario(cfg);
    ASSERT_FALSE(log.fault.has_value()) << log.fault->message;
    const Metrics m = compute_metrics(log);
    ASSERT_EQ(m.joints.size(), 2u);
    for (const JointMetrics& j : m.joints) EXPECT_LT(j.max_abs_error_deg, 1.0) << to_string(source);
  }
}

TEST(Metrics, ZeroError) {
  const Metrics m = compute_metrics(synthetic(std::vector<double>(100, 0.0)));
  EXPECT_EQ(m.joints[0].max_abs_error_deg, 0.0);
  EXPECT_EQ(m.joints[0].mean_abs_error_deg, 0.0);
}

TEST(Metrics, SquareWaveError) {
  std::vector<double> error;
  for (int k = 0; k < 400; ++k) error.push_back(((k / 25) % 2 == 0 ? 0.1 : -0.1) * kDeg);
  const Metrics m = compute_metrics(synthetic(error));
  EXPECT_NEAR(m.joints[0].max_abs_error_deg, 0.1, 1e-12);
  EXPECT_NEAR(m.joints[0].mean_abs_error_deg, 0.1, 1e-12);
}

TEST(Metrics, OscillationAndTorqueRate) {
  const double dt = 1e-3;
  SimLog log = synthetic(std::vector<double>(3000, 0.0), dt);
  for (std::size_t k = 0; k < log.ticks(); ++k) {
    JointRecord& r = log.records[k];
    const double t = log.t[k];
    r.q_ref_dot = std::cos(2.0 * std::numbers::pi * t / 2.0);  // sign changes at 0.5 s and 1.5 s, 2.5 s
    r.load_ref = 100.0 * t;
    // Residual: a 40 N·m amplitude burst after 1.5 s only.
    r.elastic_torque = r.load_ref + (t >= 1.5 && t < 1.8 ? 40.0 * std::sin(2.0 * std::numbers::pi * 20.0 * t) : 0.0);
    r.motor_torque = 3.0 * t;
  }
  const auto windows = reversal_windows(log);
  ASSERT_EQ(windows.size(), 1u);
  ASSERT_EQ(windows[0].size(), 3u);
  EXPECT_NEAR(windows[0][0].start, 0.5, 1e-3 + 1e-12);
  EXPECT_NEAR(windows[0][1].start, 1.5, 1e-3 + 1e-12);
  EXPECT_NEAR(windows[0][1].end, 2.0, 1e-3 + 1e-12);
  double hi = -1e300;
  double lo = 1e300;
  for (std::size_t k = 0; k < log.ticks(); ++k) {
    if (log.t[k] < windows[0][1].start || log.t[k] >= windows[0][1].end) continue;
    const double residual = log.records[k].elastic_torque - log.records[k].load_ref;
    hi = std::max(hi, residual);
    lo = std::min(lo, residual);
  }
  EXPECT_GT(hi - lo, 79.0);  // the samples miss the crests slightly
  const Metrics m = compute_metrics(log, windows);
  EXPECT_NEAR(m.joints[0].elastic_oscillation, hi - lo, 1e-9);
  EXPECT_NEAR(m.joints[0].max_torque_rate, 3.0, 1e-9);
}

TEST(Compare, NeedsTwoVariants) {
  EXPECT_THROW(compare(base(), {}), std::domain_error);
  EXPECT_THROW(compare(base(), {{FeedforwardMode::flatness, FeedbackMode::none}}), std::domain_error);
}

TEST(Compare, LabelsFollowThePaper) {
  EXPECT_EQ((ControllerSelection{FeedforwardMode::flatness, FeedbackMode::none}).label(), "FB-FF");
  EXPECT_EQ((ControllerSelection{FeedforwardMode::rigid, FeedbackMode::none}).label(), "R-FF");
  EXPECT_EQ((ControllerSelection{FeedforwardMode::none, FeedbackMode::conventional}).label(), "C-FB");
  EXPECT_EQ((ControllerSelection{FeedforwardMode::flatness, FeedbackMode::model_based}).label(), "FB-FF + MB-FB");
  EXPECT_EQ((ControllerSelection{FeedforwardMode::none, FeedbackMode::none}).label(), "open-loop");
}

TEST(Compare, FlatnessBeatsRigidFeedforward) {
  for (const ScenarioConfig& cfg : {base(), idealized()}) {
    const ComparisonReport r =
        compare(cfg, {{FeedforwardMode::flatness, FeedbackMode::none}, {FeedforwardMode::rigid, FeedbackMode::none}});
    ASSERT_EQ(r.variants.size(), 2u);
    EXPECT_EQ(r.variants[0].label, "FB-FF");
    EXPECT_EQ(r.variants[1].label, "R-FF");
    EXPECT_LT(r.variants[0].metrics.joints[0].max_abs_error_deg, r.variants[1].metrics.joints[0].max_abs_error_deg)
        << to_string(cfg.plant_stiffness);
  }
}

TEST(Compare, SerialAndParallelAgree) {
  ScenarioConfig cfg = base();
  cfg.duration = 2.0;
  const std::vector<ControllerSelection> variants = {{FeedforwardMode::flatness, FeedbackMode::none},
                                                     {FeedforwardMode::rigid, FeedbackMode::conventional},
                                                     {FeedforwardMode::flatness, FeedbackMode::model_based}};
  const ComparisonReport a = compare(cfg, variants, Execution::serial);
  const ComparisonReport b = compare(cfg, variants, Execution::parallel);
  ASSERT_EQ(a.variants.size(), b.variants.size());
  for (std::size_t i = 0; i < a.variants.size(); ++i) {
    EXPECT_EQ(a.variants[i].selection, variants[i]);
    EXPECT_TRUE(same_bits(a.variants[i].log, b.variants[i].log)) << i;
  }
}

// Module-level property on the idealized plant (exact stiffness inverse), with
// quantized sensing and a stiffer plant than modelled.
TEST(Compare, IdealizedPlantModelBasedFeedbackNotWorse) {
  for (double scale : {1.05, 0.95}) {
    ScenarioConfig cfg = idealized();
    cfg.plant = cfg.model;
    cfg.plant[0].stiffness.rigidity_stiffness *= scale;
    cfg.sensor_resolution = 0.017 * kDeg;
    const ComparisonReport r = compare(
        cfg, {{FeedforwardMode::flatness, FeedbackMode::model_based}, {FeedforwardMode::flatness, FeedbackMode::conventional}});
    EXPECT_LE(r.variants[0].metrics.joints[0].mean_abs_error_deg, r.variants[1].metrics.joints[0].mean_abs_error_deg)
        << scale;
  }
}

// Adding correct-model feedback to exact feedforward does not increase the
// error.
TEST(Compare, ExactFeedbackNeverIncreasesError) {
  for (const char* preset : {"demanding", "aggressive"}) {
    ScenarioConfig cfg = idealized();
    cfg.trajectory = preset;
    const ComparisonReport r = compare(
        cfg, {{FeedforwardMode::flatness, FeedbackMode::none}, {FeedforwardMode::flatness, FeedbackMode::model_based}});
    EXPECT_LE(r.variants[1].metrics.joints[0].max_abs_error_deg, r.variants[0].metrics.joints[0].max_abs_error_deg)
        << preset;
  }
}

TEST(HarnessNames, RoundTrip) {
  for (ProviderKind k : {ProviderKind::constant, ProviderKind::planar_2r}) EXPECT_EQ(parse_provider_kind(to_string(k)), k);
  for (CouplingSource s : {CouplingSource::reference, CouplingSource::measured}) {
    EXPECT_EQ(parse_coupling_source(to_string(s)), s);
  }
  for (ShapingPreset s : {ShapingPreset::off, ShapingPreset::hw_safety}) EXPECT_EQ(parse_shaping_preset(to_string(s)), s);
  EXPECT_THROW(parse_provider_kind("scara"), std::invalid_argument);
}

}  // namespace
}  // namespace flexjoint
