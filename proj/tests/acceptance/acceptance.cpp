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

// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.
// Arguments select criteria by number; none runs all nine.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "flexjoint/cli.hpp"
#include "flexjoint/harness.hpp"
#include "flexjoint/numerics.hpp"
#include "flexjoint/parameter_sets.hpp"
#include "flexjoint/plant.hpp"
#include "flexjoint/validation.hpp"

namespace flexjoint {
namespace {

using Real = boost::multiprecision::cpp_bin_float_50;

struct Result {
  bool passed = false;
  std::string detail;
  std::vector<std::string> info;
};

std::string fmt(const char* format, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

struct Timed {
  SimLog log;
  double seconds = 0.0;
};

Timed timed_run(const ScenarioConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Timed t{run_scenario(cfg), 0.0};
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return t;
}

JointParams joint1() { return parameter_set("kr300-joint1").joints[0]; }

// Worst post-reversal oscillation, or NaN when the run has no reversal.
double oscillation(const SimLog& log) {
  const auto windows = reversal_windows(log);
  if (windows[0].empty()) return std::nan("");
  return compute_metrics(log, windows).joints[0].elastic_oscillation;
}

double flatness_error_deg() {
  static const double err = [] {
    const SimLog log = run_scenario(flatness_consistency_scenario());
    return log.fault ? std::nan("") : compute_metrics(log).joints[0].max_abs_error_deg;
  }();
  return err;
}

Result flatness_exactness() {
  const Timed run = timed_run(flatness_consistency_scenario());
  if (run.log.fault) return {false, "fault: " + run.log.fault->message};
  const double err = compute_metrics(run.log).joints[0].max_abs_error_deg;
  return {err <= 1e-3, fmt("FB-FF open loop, idealized plant, dt 1e-5 s: max |q_R - q| = %.3e deg (<= 1e-3), wall %.2f s",
                           err, run.seconds)};
}

Result rigid_residual() {
  ScenarioConfig cfg = flatness_consistency_scenario();
  cfg.controller = {FeedforwardMode::rigid, FeedbackMode::none};
  const Timed run = timed_run(cfg);
  if (run.log.fault) return {false, "fault: " + run.log.fault->message};
  const double err = compute_metrics(run.log).joints[0].max_abs_error_deg;
  const double ratio = err / flatness_error_deg();
  const bool band = err >= 0.005 && err <= 0.5;
  return {band && ratio >= 20.0,
          fmt("R-FF max error %.4f deg (band [0.005, 0.5]), %.0fx the FB-FF error (>= 20), wall %.2f s", err, ratio,
              run.seconds)};
}

Result oscillation_suppression() {
  ScenarioConfig cfg;
  cfg.model = parameter_set("kr300-joint1").joints;
  cfg.plant_stiffness = StiffnessLaw::piecewise;
  cfg.trajectory = "aggressive";
  auto pair = [](ScenarioConfig c) {
    c.controller = {FeedforwardMode::flatness, FeedbackMode::none};
    const double flat = oscillation(run_scenario(c));
    c.controller = {FeedforwardMode::rigid, FeedbackMode::none};
    const double rigid = oscillation(run_scenario(c));
    return std::array<double, 2>{flat, rigid};
  };
  const auto [flat, rigid] = pair(cfg);
  Result r;
  if (std::isnan(flat) || std::isnan(rigid)) return {false, "no velocity reversal in the scenario"};
  const double ratio = rigid / flat;
  const double amplitude = 0.5 * rigid;
  const bool amplitude_ok = amplitude >= 100.0 && amplitude < 1e4;
  r.passed = ratio >= 10.0 && amplitude_ok;
  r.detail = fmt("piecewise plant, aggressive: post-reversal p-p R-FF %.1f N·m vs FB-FF %.1f N·m, ratio %.2f (>= 10); "
                 "R-FF amplitude %.0f N·m (order 1e2-1e3)",
                 rigid, flat, ratio, amplitude);

  ScenarioConfig demanding = cfg;
  demanding.trajectory = "demanding";
  const auto d = pair(demanding);
  r.info.push_back(fmt("piecewise plant, demanding: ratio %.2f (R-FF %.1f / FB-FF %.1f N·m)", d[1] / d[0], d[1], d[0]));
  for (const char* preset : {"aggressive", "demanding"}) {
    const auto i = pair(idealized_scenario(preset));
    r.info.push_back(std::string("idealized plant, ") + preset +
                     fmt(": ratio %.3g (R-FF %.1f / FB-FF %.3f N·m)", i[1] / i[0], i[1], i[0]));
  }
  return r;
}

Result derivative_chain() {
  const JointParams p = joint1();
  const ChainCheck c = motor_chain_check(ProfileTrajectory(profile_preset("demanding", 1, 1.0)), p,
                                         {p.link_inertia, 0.0, 0.0, 0.0});
  return {c.passed(), fmt("demanding preset, %.0f points: worst FD error / allowance theta_R' %.3f (rel 1e-6), "
                          "theta_R'' %.3f (rel 1e-5)",
                          c.checked, c.velocity_ratio, c.acceleration_ratio)};
}

// Oracles in 50-digit arithmetic, so the closed forms do not cancel near 0.
Real third_order(Real dq, Real c, Real phi) {
  using boost::multiprecision::exp;
  return c * (dq - phi + exp(-3 * dq / phi) * (phi + 2 * dq + 3 * dq * dq / (2 * phi)));
}

Real first_order(Real dq, Real c, Real phi) {
  using boost::multiprecision::exp;
  return c * (dq - phi + phi * exp(-dq / phi));
}

Result variable_order() {
  const StiffnessParams s = joint1().stiffness;
  const double c = s.rigidity_stiffness;
  const double phi = s.effective_backlash();
  double worst3 = 0.0;
  double worst1 = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    const double dq = 10.0 * phi * i / 1000.0;
    const double y3 = static_cast<double>(third_order(dq, c, phi));
    const double y1 = static_cast<double>(first_order(dq, c, phi));
    worst3 = std::max(worst3, std::abs(stiffness_variable_order(dq, 3, s) - y3) / std::abs(y3));
    worst1 = std::max(worst1, std::abs(stiffness_variable_order(dq, 1, s) - y1) / std::abs(y1));
  }
  const bool zero = stiffness_variable_order(0.0, 3, s) == 0.0 && stiffness_variable_order(0.0, 1, s) == 0.0;
  // Far from the origin every order is on its asymptote c_TR (dq - phi_B).
  double worst_slope = 0.0;
  double worst_offset = 0.0;
  for (int n = 1; n <= 8; ++n) {
    const double dq = 40.0 * phi;
    const double h = 1e-3 * phi;
    const double slope = (stiffness_variable_order(dq + h, n, s) - stiffness_variable_order(dq - h, n, s)) / (2 * h);
    worst_slope = std::max(worst_slope, std::abs(slope / c - 1.0));
    worst_offset = std::max(worst_offset, std::abs(stiffness_variable_order(dq, n, s) - c * (dq - phi)) / (c * phi));
  }
  const bool ok = zero && worst3 <= 1e-9 && worst1 <= 1e-9 && worst_slope <= 1e-6 && worst_offset <= 1e-9;
  return {ok, fmt("rel. error n=3 %.2e, n=1 %.2e (<= 1e-9); asymptote n=1..8: slope/c_TR - 1 %.1e, offset %.1e phi_B",
                  worst3, worst1, worst_slope, worst_offset)};
}

Result two_mass_physics() {
  JointParams p = joint1();
  p.stiffness.backlash_angle = 0.0;
  p.stiffness.lost_motion_angle = 0.0;
  p.friction = {};
  const PlantModel model{{p}, StiffnessLaw::piecewise, FrictionLaw::piecewise,
                         std::make_shared<ConstantProvider>(std::vector<double>{p.link_inertia},
                                                            std::vector<double>{0.0})};
  const double c = p.stiffness.rigidity_stiffness;
  const double u = p.gear_ratio;
  const double expected = std::sqrt(c * (1.0 / (p.motor_inertia * u * u) + 1.0 / p.link_inertia)) / (2.0 * std::numbers::pi);
  auto energy = [&](const PlantState& st) {
    const double dq = st.theta[0] / u - st.q[0];
    return 0.5 * p.motor_inertia * st.theta_dot[0] * st.theta_dot[0] +
           0.5 * p.link_inertia * st.q_dot[0] * st.q_dot[0] + 0.5 * c * dq * dq;
  };
  PlantState s = PlantState::zero(1);
  s.theta[0] = u * 1e-4;
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(1);
  const double dt = 1e-4;
  const double e0 = energy(s);
  double drift = 0.0;
  // Upward zero crossings of the torsion, interpolated linearly.
  std::vector<double> crossings;
  double previous = s.theta[0] / u - s.q[0];
  for (int k = 0; k < 100000; ++k) {
    const PlantState next = plant_step(s, zero, model, dt);
    const double torsion = next.theta[0] / u - next.q[0];
    if (previous < 0.0 && torsion >= 0.0) crossings.push_back(s.t + dt * previous / (previous - torsion));
    previous = torsion;
    s = next;
    drift = std::max(drift, std::abs(energy(s) - e0) / e0);
  }
  if (crossings.size() < 2) return {false, "no oscillation observed"};
  const double measured = (crossings.size() - 1) / (crossings.back() - crossings.front());
  const double rel = std::abs(measured / expected - 1.0);
  return {rel <= 0.01 && drift < 1e-6,
          fmt("frequency %.4f Hz vs %.4f Hz (rel %.1e <= 1e-2); energy drift %.1e over 10 s (< 1e-6)", measured,
              expected, rel, drift)};
}

Result finite_difference_fallback() {
  bool ok = true;
  // Power-of-two steps and integer multiples keep every sample exact.
  for (double T : {0x1p-4, 0x1p-10}) {
    for (double slope : {1.0, -3.0, 0.5}) {
      std::array<double, 5> h{};
      for (int i = 0; i < 5; ++i) h[i] = 2.0 + slope * (i + 7) * T;
      const auto d = finite_differences(h, T);
      ok = ok && d[0] == slope && d[1] == 0.0 && d[2] == 0.0 && d[3] == 0.0;
    }
  }
  const double T = 0x1p-4;
  std::array<double, 5> quartic{};
  for (int i = 0; i < 5; ++i) quartic[i] = std::pow((i + 3) * T, 4);
  const double fourth = finite_differences(quartic, T)[3];
  ok = ok && fourth == 24.0;
  return {ok, fmt("ramps exact at orders 1-4; q'''' on t^4 samples = %.17g (24)", fourth)};
}

Result feedback_comparison() {
  ScenarioConfig cfg;
  cfg.model = parameter_set("kr300-joint1").joints;
  cfg.plant = cfg.model;
  cfg.plant[0].stiffness.rigidity_stiffness *= 1.05;
  cfg.sensor_resolution = deg_to_rad(0.017);
  const std::vector<ControllerSelection> variants = {{FeedforwardMode::flatness, FeedbackMode::model_based},
                                                     {FeedforwardMode::flatness, FeedbackMode::conventional}};
  const ComparisonReport r = compare(cfg, variants);
  const double mb = r.variants[0].metrics.joints[0].mean_abs_error_deg;
  const double cfb = r.variants[1].metrics.joints[0].mean_abs_error_deg;
  Result out{mb <= cfb, fmt("piecewise plant, c_TR x 1.05, 0.017 deg encoder, demanding: mean error MB-FB %.4f deg vs "
                            "C-FB %.4f deg",
                            mb, cfb)};
  ScenarioConfig ideal = cfg;
  ideal.plant_stiffness = StiffnessLaw::inverse_consistent;
  ideal.plant_friction = FrictionLaw::smooth;
  const ComparisonReport i = compare(ideal, variants);
  out.info.push_back(fmt("idealized plant, same perturbation: MB-FB %.4f deg vs C-FB %.4f deg",
                         i.variants[0].metrics.joints[0].mean_abs_error_deg,
                         i.variants[1].metrics.joints[0].mean_abs_error_deg));
  return out;
}

Result determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("flexjoint_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string config = (dir / "scenario.ini").string();
  std::ofstream(config) << "[model]\nset = kr300-joint1\n[trajectory]\npreset = demanding\n"
                           "[sim]\nsensor_resolution = 2.9670597283903604e-4\n"
                           "[controller]\nff = flatness\nfb = model_based\n";
  std::ostringstream out;
  std::ostringstream err;
  const std::string a = (dir / "a.csv").string();
  const std::string b = (dir / "b.csv").string();
  const int ca = cmd_simulate(config, {}, a, out, err);
  const int cb = cmd_simulate(config, {}, b, out, err);
  auto slurp = [](const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  };
  const std::string first = slurp(a);
  const std::string second = slurp(b);
  fs::remove_all(dir);
  if (ca != 0 || cb != 0) return {false, "simulate failed: " + err.str()};
  return {first == second && !first.empty(),
          fmt("two simulate runs: %.0f bytes each, ", static_cast<double>(first.size())) +
              (first == second ? "byte-identical" : "different")};
}

struct Criterion {
  int number;
  const char* name;
  std::function<Result()> run;
};

}  // namespace
}  // namespace flexjoint

int main(int argc, char** argv) {
  using namespace flexjoint;
  const std::vector<Criterion> criteria = {
      {1, "flatness exactness", flatness_exactness},
      {2, "R-FF residual error", rigid_residual},
      {3, "oscillation suppression", oscillation_suppression},
      {4, "derivative-chain oracle", derivative_chain},
      {5, "variable-order stiffness", variable_order},
      {6, "two-mass physics", two_mass_physics},
      {7, "finite differences", finite_difference_fallback},
      {8, "feedback comparison", feedback_comparison},
      {9, "determinism", determinism},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.number) == selected.end()) continue;
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what(), {}};
    }
    failed += !r.passed;
    std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << c.number << " (" << c.name << "): " << r.detail
              << '\n';
    for (const std::string& line : r.info) std::cout << "     info: " << line << '\n';
    std::cout.flush();
  }
  return failed == 0 ? 0 : 1;
}
