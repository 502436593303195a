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

#include "flexjoint/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "flexjoint/numerics.hpp"

namespace flexjoint {
namespace {

using Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

JointCoupling joint_coupling(const CouplingTorques& c, std::size_t i) {
  return {c.inertia[idx(i)], c.acceleration[idx(i)], c.coriolis[idx(i)], c.gravity[idx(i)]};
}

double model_load(const JointReference& ref, const JointCoupling& c, const JointParams& p) {
  return c.inertia * ref.acceleration + c.acceleration + c.coriolis + c.gravity +
         friction_smooth(ref.velocity, p.friction);
}

std::vector<FeedforwardShaper> make_shapers(const ScenarioConfig& cfg) {
  std::vector<FeedforwardShaper> shapers;
  for (const JointParams& p : cfg.model) {
    shapers.push_back(cfg.shaping == ShapingPreset::hw_safety ? FeedforwardShaper(p)
                                                              : FeedforwardShaper::disabled());
  }
  return shapers;
}

PlantState initial_state(const ScenarioConfig& cfg, const PlantModel& plant, const ReferenceSample& ref) {
  const std::size_t n = cfg.joints();
  PlantState s = PlantState::zero(n);
  s.q = ref.angles();
  s.q_dot = ref.velocities();
  const CouplingTorques c = plant.provider->coupling(s.q, s.q_dot, ref.accelerations());
  for (std::size_t i = 0; i < n; ++i) {
    const JointParams& p = plant.joints[i];
    const double load = c.inertia[idx(i)] * ref.joints[i].acceleration + c.acceleration[idx(i)] +
                        c.coriolis[idx(i)] + c.gravity[idx(i)] +
                        friction_torque(plant.friction, ref.joints[i].velocity, p.friction);
    const double torsion = static_torsion(plant.stiffness, load, p.stiffness);
    s.theta[idx(i)] = p.gear_ratio * (s.q[idx(i)] + torsion);
    s.theta_dot[idx(i)] = p.gear_ratio * s.q_dot[idx(i)];
  }
  return s;
}

// A fault part way through a tick leaves some joints unrecorded.
void drop_partial_tick(SimLog& log) {
  const std::size_t complete = std::min(log.t.size(), log.records.size() / log.joints);
  log.t.resize(complete);
  log.records.resize(complete * log.joints);
}

}  // namespace

std::string ControllerSelection::label() const {
  std::string ff_label;
  std::string fb_label;
  if (ff == FeedforwardMode::flatness) ff_label = "FB-FF";
  if (ff == FeedforwardMode::rigid) ff_label = "R-FF";
  if (fb == FeedbackMode::conventional) fb_label = "C-FB";
  if (fb == FeedbackMode::model_based) fb_label = "MB-FB";
  if (ff_label.empty() && fb_label.empty()) return "open-loop";
  if (ff_label.empty()) return fb_label;
  if (fb_label.empty()) return ff_label;
  return ff_label + " + " + fb_label;
}

void ScenarioConfig::validate() const {
  if (model.empty()) throw std::invalid_argument("scenario: at least one joint is required");
  for (const JointParams& p : model) p.validate();
  if (!plant.empty()) {
    if (plant.size() != model.size()) {
      throw std::invalid_argument("scenario: plant and model joint counts differ");
    }
    for (const JointParams& p : plant) p.validate();
  }
  if (!gravity_amplitude.empty() && gravity_amplitude.size() != model.size()) {
    throw std::invalid_argument("scenario: gravity amplitude count differs from the joint count");
  }
  if (provider == ProviderKind::planar_2r) {
    if (model.size() != 2) throw std::invalid_argument("scenario: planar-2r needs exactly 2 joints");
    geometry.validate();
  }
  if (!(dt_plant > 0.0) || !(dt_ctrl > 0.0)) {
    throw std::invalid_argument("scenario: time steps must be > 0");
  }
  const double ratio = dt_ctrl / dt_plant;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio || std::round(ratio) < 1.0) {
    throw std::invalid_argument("scenario: dt_ctrl must be an integer multiple of dt_plant");
  }
  if (duration && !(*duration >= 0.0)) throw std::invalid_argument("scenario: duration must be >= 0");
  if (!(sensor_resolution >= 0.0)) throw std::invalid_argument("scenario: sensor resolution must be >= 0");
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
    throw std::invalid_argument("scenario: amplitude must be finite and > 0");
  }
}

std::shared_ptr<const RigidBodyProvider> make_provider(const ScenarioConfig& cfg,
                                                       const std::vector<JointParams>& params) {
  if (cfg.provider == ProviderKind::planar_2r) return std::make_shared<Planar2RProvider>(cfg.geometry);
  std::vector<double> inertia;
  for (const JointParams& p : params) inertia.push_back(p.link_inertia);
  std::vector<double> gravity = cfg.gravity_amplitude;
  if (gravity.empty()) gravity.assign(params.size(), 0.0);
  return std::make_shared<ConstantProvider>(std::move(inertia), std::move(gravity));
}

std::shared_ptr<const Trajectory> make_trajectory(const ScenarioConfig& cfg) {
  return make_trajectory(cfg.trajectory, cfg.joints(), cfg.amplitude, cfg.geometry);
}

PlantModel make_plant(const ScenarioConfig& cfg) {
  PlantModel m;
  m.joints = cfg.plant_params();
  m.stiffness = cfg.plant_stiffness;
  m.friction = cfg.plant_friction;
  m.provider = make_provider(cfg, m.joints);
  m.validate();
  return m;
}

SimLog run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.joints();
  const auto trajectory = make_trajectory(cfg);
  const auto model_provider = make_provider(cfg, cfg.model);
  const PlantModel plant = make_plant(cfg);

  const double duration = cfg.duration.value_or(trajectory->duration());
  const auto ticks = static_cast<std::size_t>(std::floor(duration / cfg.dt_ctrl + 1e-9));
  const auto substeps = static_cast<int>(std::lround(cfg.dt_ctrl / cfg.dt_plant));

  SimLog log;
  log.joints = n;
  log.dt_ctrl = cfg.dt_ctrl;
  log.t.reserve(ticks);
  log.records.reserve(ticks * n);
  if (ticks == 0) return log;

  const ControllerSelection sel = cfg.controller;
  const bool need_flatness = sel.ff == FeedforwardMode::flatness || sel.fb == FeedbackMode::model_based;
  std::vector<FeedforwardShaper> shapers = make_shapers(cfg);

  PlantState state = initial_state(cfg, plant, trajectory->sample(0.0));
  Eigen::VectorXd torque(idx(n));

  for (std::size_t k = 0; k < ticks; ++k) {
    const double t = static_cast<double>(k) * cfg.dt_ctrl;
    std::size_t current_joint = 0;
    try {
      const ReferenceSample ref = trajectory->sample(t);
      const CouplingTorques coupling =
          cfg.coupling_source == CouplingSource::reference
              ? model_provider->coupling(ref.angles(), ref.velocities(), ref.accelerations())
              : model_provider->coupling(state.q, state.q_dot, ref.accelerations());
      const Eigen::VectorXd tau_e = elastic_torques(state, plant);

      log.t.push_back(t);
      for (std::size_t i = 0; i < n; ++i) {
        current_joint = i;
        const JointParams& p = cfg.model[i];
        const JointReference& r = ref.joints[i];
        const JointCoupling c = joint_coupling(coupling, i);

        double raw = 0.0;
        MotorReference motor_ref = rigid_motor_reference(r, p, 0.0);
        if (need_flatness) motor_ref = flatness_ff(r, c, p, i);
        if (sel.ff == FeedforwardMode::flatness) raw = motor_ref.feedforward_torque;
        if (sel.ff == FeedforwardMode::rigid) raw = rigid_ff(r, c, p);

        const double ff = shapers[i](raw, cfg.dt_ctrl);
        const double measured = sensor_quantize(state.q[idx(i)], cfg.sensor_resolution);
        const double fb = feedback(measured, state.theta_dot[idx(i)], r, motor_ref, sel.fb, p);
        torque[idx(i)] = ff + fb;
        if (!std::isfinite(torque[idx(i)])) throw ControllerFault(i, "motor torque is not finite");

        JointRecord rec;
        rec.q_ref = r.angle;
        rec.q_ref_dot = r.velocity;
        rec.q = state.q[idx(i)];
        rec.theta = state.theta[idx(i)];
        rec.theta_dot = state.theta_dot[idx(i)];
        rec.torsion = state.theta[idx(i)] / plant.joints[i].gear_ratio - state.q[idx(i)];
        rec.elastic_torque = tau_e[idx(i)];
        rec.motor_torque = torque[idx(i)];
        rec.ff_torque = ff;
        rec.fb_torque = fb;
        rec.load_ref = model_load(r, c, p);
        log.records.push_back(rec);
      }
      for (int s = 0; s < substeps; ++s) state = plant_step(state, torque, plant, cfg.dt_plant);
    } catch (const ControllerFault& e) {
      drop_partial_tick(log);
      log.fault = SimFault{e.joint(), t, e.what()};
      return log;
    } catch (const IntegrationError& e) {
      log.fault = SimFault{e.joint(), e.time(), e.what()};
      return log;
    } catch (const std::domain_error& e) {
      drop_partial_tick(log);
      log.fault = SimFault{current_joint, t, e.what()};
      return log;
    }
  }
  return log;
}

std::vector<std::vector<Window>> reversal_windows(const SimLog& log, double length) {
  std::vector<std::vector<Window>> windows(log.joints);
  for (std::size_t i = 0; i < log.joints; ++i) {
    // Velocities below this are treated as rest, which keeps roundoff at the
    // ends of a move from registering as a reversal.
    double peak = 0.0;
    for (std::size_t k = 0; k < log.ticks(); ++k) peak = std::max(peak, std::abs(log.at(k, i).q_ref_dot));
    const double rest = 1e-6 * peak;
    int last_sign = 0;
    for (std::size_t k = 0; k < log.ticks(); ++k) {
      const double v = log.at(k, i).q_ref_dot;
      if (std::abs(v) <= rest) continue;
      const int s = v > 0.0 ? 1 : -1;
      if (last_sign != 0 && s != last_sign) windows[i].push_back({log.t[k], log.t[k] + length});
      last_sign = s;
    }
  }
  return windows;
}

Metrics compute_metrics(const SimLog& log, const std::vector<std::vector<Window>>& windows) {
  if (log.ticks() == 0 || log.joints == 0) throw std::domain_error("metrics: empty log");
  Metrics m;
  m.joints.resize(log.joints);
  for (std::size_t i = 0; i < log.joints; ++i) {
    JointMetrics& jm = m.joints[i];
    double sum = 0.0;
    for (std::size_t k = 0; k < log.ticks(); ++k) {
      const JointRecord& r = log.at(k, i);
      const double err = std::abs(rad_to_deg(r.q_ref - r.q));
      jm.max_abs_error_deg = std::max(jm.max_abs_error_deg, err);
      sum += err;
      if (k > 0) {
        const double rate = std::abs(r.motor_torque - log.at(k - 1, i).motor_torque) / log.dt_ctrl;
        jm.max_torque_rate = std::max(jm.max_torque_rate, rate);
      }
    }
    jm.mean_abs_error_deg = sum / static_cast<double>(log.ticks());

    if (i >= windows.size()) continue;
    for (const Window& w : windows[i]) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (std::size_t k = 0; k < log.ticks(); ++k) {
        if (log.t[k] < w.start || log.t[k] > w.end) continue;
        const JointRecord& r = log.at(k, i);
        const double residual = r.elastic_torque - r.load_ref;
        lo = std::min(lo, residual);
        hi = std::max(hi, residual);
      }
      if (hi >= lo) jm.elastic_oscillation = std::max(jm.elastic_oscillation, hi - lo);
    }
  }
  return m;
}

Metrics compute_metrics(const SimLog& log) { return compute_metrics(log, reversal_windows(log)); }

ComparisonReport compare(const ScenarioConfig& base, const std::vector<ControllerSelection>& variants,
                         Execution execution) {
  if (variants.size() < 2) throw std::domain_error("compare: at least two variants are required");
  base.validate();
  ComparisonReport report;
  report.variants.resize(variants.size());
  const auto count = static_cast<long>(variants.size());
  auto run_one = [&](long v) {
    ScenarioConfig cfg = base;
    cfg.controller = variants[static_cast<std::size_t>(v)];
    VariantResult& out = report.variants[static_cast<std::size_t>(v)];
    out.selection = cfg.controller;
    out.label = cfg.controller.label();
    out.log = run_scenario(cfg);
    if (out.log.ticks() > 0) out.metrics = compute_metrics(out.log);
  };
  if (execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long v = 0; v < count; ++v) run_one(v);
  } else {
    for (long v = 0; v < count; ++v) run_one(v);
  }
  return report;
}

std::string_view to_string(ProviderKind kind) {
  return kind == ProviderKind::planar_2r ? "planar-2r" : "constant";
}

std::string_view to_string(CouplingSource source) {
  return source == CouplingSource::measured ? "measured" : "reference";
}

std::string_view to_string(ShapingPreset preset) {
  return preset == ShapingPreset::hw_safety ? "hw-safety" : "off";
}

ProviderKind parse_provider_kind(std::string_view name) {
  if (name == "constant") return ProviderKind::constant;
  if (name == "planar-2r") return ProviderKind::planar_2r;
  throw std::invalid_argument("unknown provider '" + std::string(name) + "'");
}

CouplingSource parse_coupling_source(std::string_view name) {
  if (name == "reference") return CouplingSource::reference;
  if (name == "measured") return CouplingSource::measured;
  throw std::invalid_argument("unknown coupling source '" + std::string(name) + "'");
}

ShapingPreset parse_shaping_preset(std::string_view name) {
  if (name == "off") return ShapingPreset::off;
  if (name == "hw-safety") return ShapingPreset::hw_safety;
  throw std::invalid_argument("unknown shaping preset '" + std::string(name) + "'");
}

}  // namespace flexjoint
