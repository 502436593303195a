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

#include "flexjoint/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <random>

#include "flexjoint/numerics.hpp"
#include "flexjoint/parameter_sets.hpp"
#include "flexjoint/plant.hpp"
#include "flexjoint/report.hpp"

namespace flexjoint {
namespace {

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

double central_difference(const std::function<double(double)>& f, double t, double h) {
  return (f(t - 2 * h) - 8 * f(t - h) + 8 * f(t + h) - f(t + 2 * h)) / (12 * h);
}

JointParams joint1() { return parameter_set("kr300-joint1").joints[0]; }

JointParams linear_spring() {
  JointParams p = joint1();
  p.stiffness.backlash_angle = 0.0;
  p.stiffness.lost_motion_angle = 0.0;
  p.friction = {};
  return p;
}

PlantModel single(const JointParams& p, double gravity, StiffnessLaw law, FrictionLaw friction) {
  return {{p}, law, friction,
          std::make_shared<ConstantProvider>(std::vector<double>{p.link_inertia}, std::vector<double>{gravity})};
}

double linear_energy(const PlantState& s, const JointParams& p) {
  const double dq = s.theta[0] / p.gear_ratio - s.q[0];
  return 0.5 * p.motor_inertia * s.theta_dot[0] * s.theta_dot[0] + 0.5 * p.link_inertia * s.q_dot[0] * s.q_dot[0] +
         0.5 * p.stiffness.rigidity_stiffness * dq * dq;
}

PlantState twisted(const JointParams& p, double torsion) {
  PlantState s = PlantState::zero(1);
  s.theta[0] = p.gear_ratio * torsion;
  return s;
}

double component(const JointReference& r, int k) {
  switch (k) {
    case 0: return r.angle;
    case 1: return r.velocity;
    case 2: return r.acceleration;
    case 3: return r.jerk;
    default: return r.snap;
  }
}

// --- joint model ---------------------------------------------------------

CheckOutcome odd_symmetry(const ValidationOptions&) {
  const JointParams p = joint1();
  const double f_c = p.friction.coulomb;
  const double phi = p.stiffness.effective_backlash();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> exponent(-7.0, 1.0);
  int failures = 0;
  for (int i = 0; i < 20000; ++i) {
    const double x = std::pow(10.0, exponent(rng));
    const double tau = x * 1e4;
    // {f(x), f(-x), rounding floor}; the logistic terms cancel against a
    // constant, so negation holds only to a few ulps of it and of f(x).
    const double triples[][3] = {
        {friction_smooth(x, p.friction), friction_smooth(-x, p.friction), 4 * f_c},
        {friction_piecewise(x, p.friction), friction_piecewise(-x, p.friction), 0.0},
        {stiffness_smooth(x * 1e-2, p.stiffness), stiffness_smooth(-x * 1e-2, p.stiffness), 0.0},
        {stiffness_piecewise(x * 1e-2, p.stiffness), stiffness_piecewise(-x * 1e-2, p.stiffness), 0.0},
        {inverse_stiffness_smooth(tau, p.stiffness), inverse_stiffness_smooth(-tau, p.stiffness), 4 * phi},
        {inverse_stiffness_piecewise(tau, p.stiffness), inverse_stiffness_piecewise(-tau, p.stiffness), 0.0}};
    for (const auto& t : triples) {
      failures += std::abs(t[0] + t[1]) > (t[2] + 4 * std::abs(t[0])) * std::numeric_limits<double>::epsilon();
    }
  }
  return {failures == 0, std::to_string(failures) + " asymmetric samples of 120000"};
}

CheckOutcome friction_convergence(const ValidationOptions&) {
  FrictionParams f = joint1().friction;
  for (double v : {-0.5, -0.01, 0.002, 0.01, 0.5}) {
    double previous = std::numeric_limits<double>::infinity();
    for (double s : {10.0, 1e2, 1e3, 1e4}) {
      f.smoothness = s;
      const double gap = std::abs(friction_smooth(v, f) - friction_piecewise(v, f));
      if (!(gap <= previous)) return {false, fmt("gap grows at v = %g, s_F = %g", v, s)};
      previous = gap;
    }
  }
  return {true, "gap non-increasing over s_F = 10..1e4"};
}

CheckOutcome backlash_flatness(const ValidationOptions&) {
  const StiffnessParams s = joint1().stiffness;
  const double h = 1e-7;
  const double slope = (stiffness_smooth(h, s) - stiffness_smooth(-h, s)) / (2 * h);
  return {std::abs(slope) < 1e-6 * s.rigidity_stiffness, fmt("slope at 0 = %.3e N·m/rad", slope)};
}

CheckOutcome asymptote(const ValidationOptions&) {
  const StiffnessParams s = joint1().stiffness;
  const double phi = s.effective_backlash();
  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double dq = phi * (5.0 + 15.0 * i / 1000.0);
    worst = std::max(worst, std::abs(stiffness_smooth(dq, s) - s.rigidity_stiffness * (dq - phi)));
  }
  const double bound = 1e-3 * s.rigidity_stiffness * phi;
  return {worst <= bound, fmt("worst %.3e N·m, bound %.3e N·m", worst, bound)};
}

CheckOutcome third_order_closed_form(const ValidationOptions&) {
  const StiffnessParams s = joint1().stiffness;
  const double phi = s.effective_backlash();
  double worst = 0.0;
  for (int i = 1; i <= 2000; ++i) {
    const double dq = 10.0 * phi * i / 2000.0;
    const double closed = s.rigidity_stiffness *
                          (dq - phi + std::exp(-3.0 * dq / phi) * (phi + 2.0 * dq + 1.5 * dq * dq / phi));
    // Relative to the asymptote scale where the response itself is tiny.
    const double scale = std::max(std::abs(closed), 1e-6 * s.rigidity_stiffness * phi);
    worst = std::max(worst, std::abs(stiffness_variable_order(dq, 3, s) - closed) / scale);
  }
  return {worst <= 1e-9, fmt("worst relative deviation %.3e", worst)};
}

CheckOutcome inverse_consistency(const ValidationOptions&) {
  const StiffnessParams s = joint1().stiffness;
  const double offset = s.offset_torque();
  double worst = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double tau = offset * (5.0 + 195.0 * i / 2000.0);
    for (double t : {tau, -tau}) {
      worst = std::max(worst, std::abs(stiffness_piecewise(inverse_stiffness_smooth(t, s), s) - t));
    }
  }
  return {worst <= offset * (1.0 + 1e-9), fmt("worst %.3f N·m, bound tau_E0 = %.3f N·m", worst, offset)};
}

CheckOutcome finite_outputs(const ValidationOptions&) {
  const JointParams p = joint1();
  const double big = std::numeric_limits<double>::max();
  const double tiny = std::numeric_limits<double>::denorm_min();
  for (double x : {0.0, tiny, -tiny, 1e-300, 1e300, -1e300, big, -big, 1e5, -1e5}) {
    const double values[] = {friction_piecewise(x, p.friction),
                             friction_smooth(x, p.friction),
                             stiffness_piecewise(x, p.stiffness),
                             stiffness_smooth(x, p.stiffness),
                             stiffness_inverse_consistent(std::clamp(x, -1e3, 1e3), p.stiffness),
                             inverse_stiffness_piecewise(x, p.stiffness),
                             inverse_stiffness_smooth(x, p.stiffness)};
    for (double v : values) {
      // Linear terms overflow legitimately near DBL_MAX; anything else must be finite.
      if (std::isnan(v) || (std::isinf(v) && std::abs(x) < 1e300)) return {false, fmt("non-finite at x = %g", x)};
    }
  }
  return {true, "extreme inputs give finite outputs"};
}

// --- dynamics ------------------------------------------------------------

CheckOutcome plant_determinism(const ValidationOptions&) {
  const JointParams p = joint1();
  const PlantModel model = single(p, 1500.0, StiffnessLaw::piecewise, FrictionLaw::piecewise);
  auto run = [&] {
    PlantState s = twisted(p, 5e-4);
    Eigen::VectorXd tau(1);
    std::vector<double> trace;
    for (int k = 0; k < 5000; ++k) {
      tau[0] = 10.0 * std::sin(1e-3 * k);
      s = plant_step(s, tau, model, 1e-4);
      trace.insert(trace.end(), {s.theta[0], s.theta_dot[0], s.q[0], s.q_dot[0]});
    }
    return trace;
  };
  const std::vector<double> a = run();
  const std::vector<double> b = run();
  const bool same = std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
  return {same, same ? "5000 steps bit-identical" : "runs differ"};
}

CheckOutcome dead_zone(const ValidationOptions&) {
  const JointParams p = joint1();
  const PlantModel model = single(p, 0.0, StiffnessLaw::piecewise, FrictionLaw::piecewise);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> torsion(-0.999 * p.stiffness.backlash_angle, 0.999 * p.stiffness.backlash_angle);
  std::uniform_real_distribution<double> velocity(-1.0, 1.0);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(1);
  for (int i = 0; i < 2000; ++i) {
    PlantState s = twisted(p, torsion(rng));
    s.q_dot[0] = velocity(rng);
    const PlantDerivative d = plant_derivatives(s, zero, model);
    const double expected = -friction_piecewise(s.q_dot[0], p.friction) / p.link_inertia;
    if (elastic_torques(s, model)[0] != 0.0 || d.theta_ddot[0] != 0.0 ||
        std::abs(d.q_ddot[0] - expected) > 1e-15 * std::abs(expected)) {
      return {false, fmt("elastic torque inside the dead zone at dq = %.3e", s.theta[0] / p.gear_ratio)};
    }
  }
  return {true, "2000 random states: zero elastic torque, link coasts under friction"};
}

CheckOutcome passivity(const ValidationOptions&) {
  JointParams p = linear_spring();
  p.friction = joint1().friction;
  const PlantModel model = single(p, 0.0, StiffnessLaw::piecewise, FrictionLaw::smooth);
  PlantState s = twisted(p, 2e-4);
  s.q_dot[0] = 0.02;
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(1);
  const double e0 = linear_energy(s, p);
  double previous = e0;
  for (int k = 0; k < 50000; ++k) {
    s = plant_step(s, zero, model, 1e-4);
    const double e = linear_energy(s, p);
    if (e > previous * (1.0 + 1e-12) + 1e-14 * e0) return {false, fmt("energy rises at t = %.4f s", s.t)};
    previous = e;
  }
  return {true, fmt("energy %.3e -> %.3e J, never rising", e0, previous)};
}

CheckOutcome fourth_order(const ValidationOptions&) {
  JointParams p = linear_spring();
  p.friction = joint1().friction;
  const PlantModel model = single(p, 2000.0, StiffnessLaw::piecewise, FrictionLaw::smooth);
  Eigen::VectorXd tau(1);
  tau << 5.0;
  auto final_state = [&](double dt) {
    PlantState s = twisted(p, 1e-4);
    const int steps = static_cast<int>(std::lround(0.2 / dt));
    for (int k = 0; k < steps; ++k) s = plant_step(s, tau, model, dt);
    return Eigen::Vector4d(s.theta[0], s.theta_dot[0], s.q[0], s.q_dot[0]);
  };
  const Eigen::Vector4d a = final_state(1e-3);
  const Eigen::Vector4d b = final_state(5e-4);
  const Eigen::Vector4d c = final_state(2.5e-4);
  const double ratio = (a - b).norm() / (b - c).norm();
  return {ratio > 14.0 && ratio < 18.0, fmt("error ratio on halving dt = %.3f (16 expected)", ratio)};
}

// --- trajectory ----------------------------------------------------------

CheckOutcome reference_chain(const ValidationOptions&) {
  const double h = 1e-4;
  for (const char* preset : {"demanding", "aggressive", "step-free-ramp"}) {
    const ProfileTrajectory trajectory(profile_preset(preset, 1, 1.0));
    for (int k = 0; k < 4; ++k) {
      auto f = [&](double t) { return component(trajectory.sample(t).joints[0], k); };
      double peak = 0.0;
      for (double t = 0.0; t <= trajectory.duration(); t += 1e-3) {
        peak = std::max(peak, std::abs(component(trajectory.sample(t).joints[0], k + 1)));
      }
      for (double t = 2 * h; t <= trajectory.duration() - 2 * h; t += 0.0137) {
        const double expected = component(trajectory.sample(t).joints[0], k + 1);
        if (std::abs(central_difference(f, t, h) - expected) > 1e-3 * std::abs(expected) + 1e-6 * peak) {
          return {false, std::string(preset) + fmt(": order %g mismatch at t = %.4f", k + 1, t)};
        }
      }
    }
  }
  return {true, "orders 1-4 match finite differences on every profile preset"};
}

CheckOutcome profile_monotone(const ValidationOptions&) {
  double previous = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double s = smooth_profile(i * 1e-5, 1.0).s;
    if (s < previous || s < 0.0 || s > 1.0) return {false, fmt("s(%.5f) = %.17g", i * 1e-5, s)};
    previous = s;
  }
  return {true, "monotone and within [0, 1] on 100001 samples"};
}

CheckOutcome reversals(const ValidationOptions&) {
  const ProfileSpec spec = profile_preset("demanding", 1, 1.0);
  int changes = 0;
  double last = 0.0;
  for (double t = 0.0; t <= spec.total_duration(); t += 1e-3) {
    const double v = joint_reference(spec, t).joints[0].velocity;
    if (v != 0.0) {
      if (last != 0.0 && (v > 0) != (last > 0)) ++changes;
      last = v;
    }
  }
  return {changes >= 2, std::to_string(changes) + " velocity sign changes"};
}

CheckOutcome finite_difference_exactness(const ValidationOptions&) {
  const double T = 0x1p-10;
  for (double slope : {0.0, 1.0, -3.5}) {
    std::array<double, 5> h{};
    for (int i = 0; i < 5; ++i) h[i] = 0.25 + slope * T * i;
    const auto d = finite_differences(h, T);
    if (d[0] != slope || d[1] != 0.0 || d[2] != 0.0 || d[3] != 0.0) return {false, fmt("ramp slope %g", slope)};
  }
  const double factorial[] = {1, 2, 6, 24};
  for (int k = 1; k <= 4; ++k) {
    std::array<double, 5> h{};
    for (int i = 0; i < 5; ++i) h[i] = std::pow((i - 4) * T, k);
    const double got = finite_differences(h, T)[k - 1];
    if (std::abs(got - factorial[k - 1]) > 1e-9 * factorial[k - 1]) {
      return {false, fmt("order %g: leading coefficient %.17g", k, got)};
    }
  }
  return {true, "ramps exact at all orders; t^k gives k! at order k"};
}

// --- controllers ---------------------------------------------------------

CheckOutcome flatness_consistency(const ValidationOptions& o) {
  const SimLog log = run_scenario(flatness_consistency_scenario(o.plant_rigidity_scale));
  if (log.fault) return {false, "fault: " + log.fault->message};
  const double err = compute_metrics(log).joints[0].max_abs_error_deg;
  return {err <= 1e-3, fmt("max |q_R - q| = %.3e deg (bound 1e-3), plant c_TR x %g", err, o.plant_rigidity_scale)};
}

CheckOutcome motor_chain(const ValidationOptions&) {
  const JointParams p = joint1();
  const ChainCheck c =
      motor_chain_check(ProfileTrajectory(profile_preset("demanding", 1, 1.0)), p, {p.link_inertia, 15.0, -4.0, 1200.0});
  return {c.passed(), fmt("worst error/allowance: theta_R' %.3f, theta_R'' %.3f", c.velocity_ratio,
                          c.acceleration_ratio)};
}

CheckOutcome rigid_limit(const ValidationOptions&) {
  JointParams p = joint1();
  p.stiffness.backlash_angle = 0.0;
  p.stiffness.lost_motion_angle = 0.0;
  p.stiffness.rigidity_stiffness = 1e12;
  const ProfileTrajectory trajectory(profile_preset("aggressive", 1, 1.0));
  const JointCoupling coupling{p.link_inertia, 0.0, 0.0, 800.0};
  double peak = 0.0;
  double worst = 0.0;
  for (double t = 0.0; t <= trajectory.duration(); t += 1e-3) {
    const JointReference r = trajectory.sample(t).joints[0];
    const double flat = flatness_ff(r, coupling, p).feedforward_torque;
    peak = std::max(peak, std::abs(flat));
    worst = std::max(worst, std::abs(flat - rigid_ff(r, coupling, p)));
  }
  return {worst <= 1e-6 * peak, fmt("max |FB-FF - R-FF| = %.3e N·m, peak %.3e N·m", worst, peak)};
}

CheckOutcome equivariance(const ValidationOptions&) {
  JointParams p = joint1();
  p.speed_gain = 1.0;
  const JointReference ref{};
  const MotorReference motor{};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> error(-1e-2, 1e-2);
  for (int i = 0; i < 1000; ++i) {
    const double e = error(rng);
    const double base = feedback(-e, 0.0, ref, motor, FeedbackMode::conventional, p);
    // Powers of two keep every product exact.
    for (double lambda : {0.5, 2.0, 4.0, 0.125}) {
      const double scaled = feedback(-lambda * e, 0.0, ref, motor, FeedbackMode::conventional, p);
      if (scaled != lambda * base) return {false, fmt("lambda %g, error %.3e", lambda, e)};
    }
  }
  return {true, "velocity command scales exactly with the position error"};
}

CheckOutcome shaper_bounds(const ValidationOptions&) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> raw(-100.0, 100.0);
  std::uniform_real_distribution<double> step(1e-4, 5e-3);
  for (int run = 0; run < 50; ++run) {
    const double dt = step(rng);
    FeedforwardShaper shaper(20.0, 200.0, run % 2 ? 4e-3 : 0.0);
    double previous = 0.0;
    for (int k = 0; k < 2000; ++k) {
      const double out = shaper(raw(rng), dt);
      if (std::abs(out) > 20.0 || std::abs(out - previous) > 200.0 * dt * (1.0 + 1e-12)) {
        return {false, fmt("run %g tick %g violates a bound", run, k)};
      }
      previous = out;
    }
  }
  return {true, "50 random sequences within |tau| <= 20 N·m and 200 N·m/s"};
}

// --- harness -------------------------------------------------------------

CheckOutcome scenario_determinism(const ValidationOptions&) {
  ScenarioConfig cfg;
  cfg.model = parameter_set("kr300-joint1").joints;
  cfg.controller = {FeedforwardMode::flatness, FeedbackMode::model_based};
  cfg.sensor_resolution = deg_to_rad(0.017);
  const SimLog a = run_scenario(cfg);
  const SimLog b = run_scenario(cfg);
  const bool same = a.ticks() == b.ticks() &&
                    std::memcmp(a.t.data(), b.t.data(), a.t.size() * sizeof(double)) == 0 &&
                    std::memcmp(a.records.data(), b.records.data(), a.records.size() * sizeof(JointRecord)) == 0;
  return {same, same ? std::to_string(a.ticks()) + " ticks bit-identical" : "reruns differ"};
}

CheckOutcome exact_feedback_monotone(const ValidationOptions&) {
  std::string detail;
  bool ok = true;
  for (const char* preset : {"demanding", "aggressive"}) {
    const ComparisonReport r = compare(idealized_scenario(preset), {{FeedforwardMode::flatness, FeedbackMode::none},
                                                                    {FeedforwardMode::flatness, FeedbackMode::model_based}});
    const double open = r.variants[0].metrics.joints[0].max_abs_error_deg;
    const double closed = r.variants[1].metrics.joints[0].max_abs_error_deg;
    ok = ok && closed <= open;
    detail += std::string(detail.empty() ? "" : "; ") + preset + fmt(" %.3e -> %.3e deg", open, closed);
  }
  return {ok, detail};
}

CheckOutcome log_complete(const ValidationOptions&) {
  for (const char* preset : {"demanding", "aggressive"}) {
    ScenarioConfig cfg;
    cfg.model = parameter_set("kr300-joint1").joints;
    cfg.trajectory = preset;
    const SimLog log = run_scenario(cfg);
    const double duration = make_trajectory(cfg)->duration();
    const auto expected = static_cast<std::size_t>(std::llround(duration / cfg.dt_ctrl));
    if (log.fault) return {false, std::string(preset) + ": fault " + log.fault->message};
    if (log.ticks() < expected || log.ticks() > expected + 1) {
      return {false, std::string(preset) + fmt(": %g ticks, expected %g", log.ticks(), expected)};
    }
    for (std::size_t k = 0; k < log.ticks(); ++k) {
      const JointRecord& r = log.at(k, 0);
      for (double v : {log.t[k], r.q_ref, r.q_ref_dot, r.q, r.theta, r.theta_dot, r.torsion, r.elastic_torque,
                       r.motor_torque, r.ff_torque, r.fb_torque, r.load_ref}) {
        if (!std::isfinite(v)) return {false, std::string(preset) + fmt(": non-finite at tick %g", k)};
      }
    }
  }
  return {true, "every tick logged and finite on demanding and aggressive"};
}

// --- cli -----------------------------------------------------------------

CheckOutcome csv_round_trip(const ValidationOptions&) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::uint64_t> bits;
  int checked = 0;
  while (checked < 100000) {
    const std::uint64_t b = bits(rng);
    double v;
    std::memcpy(&v, &b, sizeof v);
    if (!std::isfinite(v)) continue;
    ++checked;
    const std::string s = format_double(v);
    const double back = std::strtod(s.c_str(), nullptr);
    if (std::memcmp(&back, &v, sizeof v) != 0) return {false, "no round trip for " + s};
  }
  return {true, "100000 random doubles round-trip exactly"};
}

CheckOutcome parameter_sets_valid(const ValidationOptions&) {
  for (std::string_view name : parameter_set_names()) {
    try {
      for (const JointParams& p : parameter_set(name).joints) p.validate();
    } catch (const std::exception& e) {
      return {false, std::string(name) + ": " + e.what()};
    }
  }
  return {true, std::to_string(parameter_set_names().size()) + " sets pass"};
}

}  // namespace

ScenarioConfig idealized_scenario(std::string_view preset) {
  ScenarioConfig cfg;
  cfg.model = parameter_set("kr300-joint1").joints;
  cfg.trajectory = std::string(preset);
  cfg.plant_stiffness = StiffnessLaw::inverse_consistent;
  cfg.plant_friction = FrictionLaw::smooth;
  return cfg;
}

ScenarioConfig flatness_consistency_scenario(double plant_rigidity_scale) {
  ScenarioConfig cfg = idealized_scenario("demanding");
  cfg.controller = {FeedforwardMode::flatness, FeedbackMode::none};
  cfg.shaping = ShapingPreset::off;
  cfg.dt_plant = 1e-5;
  cfg.dt_ctrl = 1e-5;
  if (plant_rigidity_scale != 1.0) {
    cfg.plant = cfg.model;
    for (JointParams& p : cfg.plant) p.stiffness.rigidity_stiffness *= plant_rigidity_scale;
  }
  return cfg;
}

ChainCheck motor_chain_check(const ProfileTrajectory& trajectory, const JointParams& p,
                             const JointCoupling& coupling) {
  auto motor = [&](double t) { return flatness_ff(trajectory.sample(t).joints[0], coupling, p); };
  double peak_velocity = 0.0;
  double peak_acceleration = 0.0;
  for (double t = 0.0; t <= trajectory.duration(); t += 1e-3) {
    const MotorReference m = motor(t);
    peak_velocity = std::max(peak_velocity, std::abs(m.velocity));
    peak_acceleration = std::max(peak_acceleration, std::abs(m.acceleration));
  }
  // The fifth derivative of the reference jumps where moves start and stop.
  std::vector<double> joins{trajectory.spec().lead_dwell};
  for (const ProfileSegment& s : trajectory.spec().segments) {
    joins.push_back(joins.back() + s.duration);
    joins.push_back(joins.back() + s.dwell);
  }
  const double h = 1e-4;
  ChainCheck out;
  for (double t = 2 * h; t <= trajectory.duration() - 2 * h; t += 1.1e-3) {
    if (std::any_of(joins.begin(), joins.end(), [&](double j) { return std::abs(t - j) <= 2 * h; })) continue;
    ++out.checked;
    const MotorReference m = motor(t);
    const double velocity = central_difference([&](double s) { return motor(s).angle; }, t, h);
    const double acceleration = central_difference([&](double s) { return motor(s).velocity; }, t, h);
    out.velocity_ratio = std::max(
        out.velocity_ratio, std::abs(velocity - m.velocity) / (1e-6 * std::abs(m.velocity) + 1e-9 * peak_velocity));
    out.acceleration_ratio =
        std::max(out.acceleration_ratio, std::abs(acceleration - m.acceleration) /
                                             (1e-5 * std::abs(m.acceleration) + 1e-8 * peak_acceleration));
  }
  return out;
}

const std::vector<Check>& validation_checks() {
  static const std::vector<Check> checks = {
      {"JM-ODD", "friction, stiffness and inverse laws are odd", odd_symmetry},
      {"JM-FRICTION-LIMIT", "smooth friction approaches the piecewise law as s_F grows", friction_convergence},
      {"JM-BACKLASH-FLAT", "smooth stiffness has zero slope at zero torsion", backlash_flatness},
      {"JM-ASYMPTOTE", "smooth stiffness follows c_TR (dq - phi_B) beyond 5 phi_B", asymptote},
      {"JM-ORDER3", "variable-order response at n = 3 equals the closed form", third_order_closed_form},
      {"JM-INVERSE", "smooth inverse stays within tau_E0 of the piecewise law", inverse_consistency},
      {"JM-FINITE", "finite inputs give finite outputs", finite_outputs},
      {"DS-DETERMINISM", "plant steps are bit-reproducible", plant_determinism},
      {"DS-DEAD-ZONE", "no elastic torque inside the backlash", dead_zone},
      {"DS-PASSIVITY", "unforced plant with friction never gains energy", passivity},
      {"DS-RK4-ORDER", "integrator converges at fourth order", fourth_order},
      {"TR-CHAIN", "reference derivatives match finite differences", reference_chain},
      {"TR-MONOTONE", "blend profile is monotone and bounded", profile_monotone},
      {"TR-REVERSALS", "demanding preset reverses at least twice", reversals},
      {"TR-FD-EXACT", "backward differences are exact on polynomials", finite_difference_exactness},
      {"CT-FLATNESS", "open-loop flatness feedforward tracks the idealized plant", flatness_consistency},
      {"CT-MOTOR-CHAIN", "theta_R, theta_R', theta_R'' are consistent", motor_chain},
      {"CT-RIGID-LIMIT", "flatness feedforward reduces to the rigid one for stiff gears", rigid_limit},
      {"CT-EQUIVARIANCE", "feedback scales with the position error", equivariance},
      {"CT-SHAPER", "shaped torque respects magnitude and rate limits", shaper_bounds},
      {"HN-DETERMINISM", "scenario reruns are bit-identical", scenario_determinism},
      {"HN-FEEDBACK-MONOTONE", "exact feedback never increases the error", exact_feedback_monotone},
      {"HN-LOG-COMPLETE", "every control tick is logged and finite", log_complete},
      {"CLI-CSV-ROUND-TRIP", "CSV numbers round-trip exactly", csv_round_trip},
      {"CLI-PARAMETER-SETS", "built-in parameter sets are valid", parameter_sets_valid},
  };
  return checks;
}

}  // namespace flexjoint
