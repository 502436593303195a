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

// Reference trajectories that are four times continuously differentiable, as
// required by a feedforward that inverts an elastic joint.

#ifndef FLEXJOINT_TRAJECTORY_HPP_
#define FLEXJOINT_TRAJECTORY_HPP_

#include <array>
#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "flexjoint/rigid_body.hpp"

namespace flexjoint {

struct JointReference {
  double angle = 0.0;         // q_R    [rad]
  double velocity = 0.0;      // q_R'   [rad/s]
  double acceleration = 0.0;  // q_R''  [rad/s²]
  double jerk = 0.0;          // q_R''' [rad/s³]
  double snap = 0.0;          // q_R''''[rad/s⁴]
};

struct ReferenceSample {
  double t = 0.0;
  std::vector<JointReference> joints;

  Eigen::VectorXd angles() const;
  Eigen::VectorXd velocities() const;
  Eigen::VectorXd accelerations() const;
};

// s(t) and its first four derivatives.
struct ProfileValue {
  double s = 0.0;
  double ds = 0.0;
  double dds = 0.0;
  double d3s = 0.0;
  double d4s = 0.0;
};

// Rest-to-rest blend from 0 to 1 over [0, duration]: the degree-9 polynomial
// with vanishing derivatives through order 4 at both ends. Outside the
// interval the endpoint value is held.
ProfileValue smooth_profile(double t, double duration);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Lemniscate of Gerono: x = a cos(phi), y = b sin(phi) cos(phi).
Point2 lemniscate(double phi, double a, double b);

struct ProfileSegment {
  double target = 0.0;    // angle reached at the end of the move [rad]
  double duration = 1.0;  // move time [s]
  double dwell = 0.0;     // rest after the move [s]
};

struct ProfileSpec {
  double start = 0.0;       // initial angle [rad]
  double lead_dwell = 0.0;  // rest before the first move [s]
  std::vector<ProfileSegment> segments;
  double amplitude = 1.0;   // scales start and targets
  std::size_t joints = 1;   // every joint follows the same profile

  double total_duration() const;
  // Throws std::domain_error for an empty spec or non-positive durations.
  void validate() const;
};

ReferenceSample joint_reference(const ProfileSpec& spec, double t);

// Elbow-up inverse kinematics of a planar two-link arm (q2 <= 0). Throws
// std::domain_error for unreachable points.
std::array<double, 2> planar_2r_ik(double x, double y, double length1, double length2);
Point2 planar_2r_fk(double q1, double q2, double length1, double length2);

struct DerivativeLimits {
  std::array<double, 4> lower{-std::numeric_limits<double>::infinity(),
                              -std::numeric_limits<double>::infinity(),
                              -std::numeric_limits<double>::infinity(),
                              -std::numeric_limits<double>::infinity()};
  std::array<double, 4> upper{std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity()};
};

// Backward differences of orders 1..4 from the five most recent samples,
// oldest first (history[4] is q_k). Each result is clamped to the limits.
std::array<double, 4> finite_differences(std::span<const double, 5> history, double sample_time,
                                         const DerivativeLimits& limits = {});

class Trajectory {
 public:
  virtual ~Trajectory() = default;
  virtual std::size_t joints() const = 0;
  virtual double duration() const = 0;
  virtual ReferenceSample sample(double t) const = 0;
};

class ProfileTrajectory final : public Trajectory {
 public:
  explicit ProfileTrajectory(ProfileSpec spec);

  std::size_t joints() const override { return spec_.joints; }
  double duration() const override { return spec_.total_duration(); }
  ReferenceSample sample(double t) const override { return joint_reference(spec_, t); }

  const ProfileSpec& spec() const { return spec_; }

 private:
  ProfileSpec spec_;
};

struct LemniscateSpec {
  double a = 0.5;          // horizontal half-length [m]
  double b = 0.5;          // vertical length parameter [m]
  double center_x = 1.4;   // [m]
  double center_y = 0.6;
  double loop_time = 6.0;  // one traversal, phi from 0 to 2 pi [s]
  double lead_dwell = 0.5;
  double tail_dwell = 0.5;
};

// Cartesian figure-eight mapped to joint space through planar_2r_ik. Joint
// derivatives are exact (Taylor-jet propagation through the kinematics).
class LemniscateTrajectory final : public Trajectory {
 public:
  LemniscateTrajectory(LemniscateSpec spec, double length1, double length2);

  std::size_t joints() const override { return 2; }
  double duration() const override;
  ReferenceSample sample(double t) const override;

 private:
  LemniscateSpec spec_;
  double length1_;
  double length2_;
};

// Named profiles: "demanding", "aggressive", "step-free-ramp".
ProfileSpec profile_preset(std::string_view name, std::size_t joints, double amplitude);

// Adds "lemniscate2r" to the profile presets; the 2R geometry supplies the
// link lengths for the inverse kinematics.
std::shared_ptr<const Trajectory> make_trajectory(std::string_view preset, std::size_t joints,
                                                  double amplitude,
                                                  const Planar2RGeometry& geometry = {});

const std::vector<std::string_view>& trajectory_preset_names();

}  // namespace flexjoint

#endif  // FLEXJOINT_TRAJECTORY_HPP_
