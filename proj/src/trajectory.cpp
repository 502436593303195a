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

#include "flexjoint/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "flexjoint/jet.hpp"

namespace flexjoint {
namespace {

// s(x) = sum kProfile[k] x^k on [0, 1].
constexpr std::array<double, 10> kProfile = {0, 0, 0, 0, 0, 126, -420, 540, -315, 70};

double polynomial_derivative(double x, int order) {
  double result = 0.0;
  for (int k = static_cast<int>(kProfile.size()) - 1; k >= order; --k) {
    double falling = 1.0;
    for (int j = 0; j < order; ++j) falling *= k - j;
    result = result * x + kProfile[k] * falling;
  }
  return result;
}

template <typename Fn>
Eigen::VectorXd collect(const std::vector<JointReference>& joints, Fn field) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(joints.size()));
  for (std::size_t i = 0; i < joints.size(); ++i) v[static_cast<Eigen::Index>(i)] = field(joints[i]);
  return v;
}

}  // namespace

Eigen::VectorXd ReferenceSample::angles() const {
  return collect(joints, [](const JointReference& r) { return r.angle; });
}
Eigen::VectorXd ReferenceSample::velocities() const {
  return collect(joints, [](const JointReference& r) { return r.velocity; });
}
Eigen::VectorXd ReferenceSample::accelerations() const {
  return collect(joints, [](const JointReference& r) { return r.acceleration; });
}

ProfileValue smooth_profile(double t, double duration) {
  if (!(duration > 0.0)) throw std::domain_error("smooth profile: duration must be > 0");
  if (t <= 0.0) return {};
  if (t >= duration) return {1.0, 0.0, 0.0, 0.0, 0.0};
  const double inv = 1.0 / duration;
  // s(x) = 1 - s(1 - x); evaluating the second half by reflection keeps s
  // within [0, 1] and monotone to the last ulp.
  double x = t / duration;
  const bool reflect = x > 0.5;
  if (reflect) x = 1.0 - x;
  const double odd = reflect ? -1.0 : 1.0;
  const double s0 = polynomial_derivative(x, 0);
  return {reflect ? 1.0 - s0 : s0, polynomial_derivative(x, 1) * inv,
          odd * polynomial_derivative(x, 2) * inv * inv, polynomial_derivative(x, 3) * inv * inv * inv,
          odd * polynomial_derivative(x, 4) * inv * inv * inv * inv};
}

Point2 lemniscate(double phi, double a, double b) {
  const double c = std::cos(phi);
  return {a * c, b * std::sin(phi) * c};
}

double ProfileSpec::total_duration() const {
  double total = lead_dwell;
  for (const ProfileSegment& s : segments) total += s.duration + s.dwell;
  return total;
}

void ProfileSpec::validate() const {
  if (segments.empty()) throw std::domain_error("profile: no segments");
  if (joints == 0) throw std::domain_error("profile: joint count must be >= 1");
  if (!(lead_dwell >= 0.0)) throw std::domain_error("profile: lead dwell must be >= 0");
  for (const ProfileSegment& s : segments) {
    if (!(s.duration > 0.0)) throw std::domain_error("profile: move durations must be > 0");
    if (!(s.dwell >= 0.0)) throw std::domain_error("profile: dwell must be >= 0");
    if (!std::isfinite(s.target)) throw std::domain_error("profile: target must be finite");
  }
}

ReferenceSample joint_reference(const ProfileSpec& spec, double t) {
  spec.validate();
  if (!(t >= 0.0)) throw std::domain_error("profile: t must be >= 0");
  JointReference ref;
  double from = spec.start;
  double t0 = spec.lead_dwell;
  ref.angle = from;
  if (t >= t0) {
    for (const ProfileSegment& seg : spec.segments) {
      if (t < t0 + seg.duration) {
        const ProfileValue p = smooth_profile(t - t0, seg.duration);
        const double delta = seg.target - from;
        ref = {from + delta * p.s, delta * p.ds, delta * p.dds, delta * p.d3s, delta * p.d4s};
        break;
      }
      from = seg.target;
      ref = {from, 0.0, 0.0, 0.0, 0.0};
      t0 += seg.duration + seg.dwell;
      if (t < t0) break;
    }
  }
  const double k = spec.amplitude;
  const JointReference scaled{k * ref.angle, k * ref.velocity, k * ref.acceleration, k * ref.jerk,
                              k * ref.snap};
  return {t, std::vector<JointReference>(spec.joints, scaled)};
}

std::array<double, 2> planar_2r_ik(double x, double y, double length1, double length2) {
  const double c2 = (x * x + y * y - length1 * length1 - length2 * length2) / (2.0 * length1 * length2);
  if (!std::isfinite(c2) || std::abs(c2) > 1.0 + 1e-12) {
    throw std::domain_error("planar 2R: point outside the workspace");
  }
  const double q2 = -std::acos(std::clamp(c2, -1.0, 1.0));
  const double q1 =
      std::atan2(y, x) - std::atan2(length2 * std::sin(q2), length1 + length2 * std::cos(q2));
  return {q1, q2};
}

Point2 planar_2r_fk(double q1, double q2, double length1, double length2) {
  return {length1 * std::cos(q1) + length2 * std::cos(q1 + q2),
          length1 * std::sin(q1) + length2 * std::sin(q1 + q2)};
}

std::array<double, 4> finite_differences(std::span<const double, 5> h, double sample_time,
                                         const DerivativeLimits& limits) {
  const double T = sample_time;
  // Repeated backward differences; the k-th one expands to the binomial
  // stencil q_k - 4 q_{k-1} + 6 q_{k-2} - 4 q_{k-3} + q_{k-4} for k = 4.
  std::array<double, 5> diff{h[0], h[1], h[2], h[3], h[4]};
  std::array<double, 4> d{};
  double scale = 1.0;
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t i = 4; i > k; --i) diff[i] = diff[i] - diff[i - 1];
    scale *= T;
    d[k] = diff[4] / scale;
  }
  for (std::size_t k = 0; k < 4; ++k) d[k] = std::clamp(d[k], limits.lower[k], limits.upper[k]);
  return d;
}

ProfileTrajectory::ProfileTrajectory(ProfileSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

LemniscateTrajectory::LemniscateTrajectory(LemniscateSpec spec, double length1, double length2)
    : spec_(spec), length1_(length1), length2_(length2) {
  if (!(spec_.loop_time > 0.0)) throw std::domain_error("lemniscate: loop time must be > 0");
  // Reject a curve that leaves the workspace anywhere along the loop.
  for (int i = 0; i <= 720; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / 720.0;
    const Point2 p = lemniscate(phi, spec_.a, spec_.b);
    planar_2r_ik(spec_.center_x + p.x, spec_.center_y + p.y, length1_, length2_);
  }
}

double LemniscateTrajectory::duration() const {
  return spec_.lead_dwell + spec_.loop_time + spec_.tail_dwell;
}

ReferenceSample LemniscateTrajectory::sample(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("lemniscate: t must be >= 0");
  using J = Jet<4>;
  const ProfileValue p = smooth_profile(t - spec_.lead_dwell, spec_.loop_time);
  const double turn = 2.0 * std::numbers::pi;
  const J phi = J::from_derivatives({turn * p.s, turn * p.ds, turn * p.dds, turn * p.d3s, turn * p.d4s});
  const JetSinCos<4> sc = sincos(phi);
  const J x = spec_.a * sc.cos + spec_.center_x;
  const J y = spec_.b * (sc.sin * sc.cos) + spec_.center_y;

  const double l1 = length1_;
  const double l2 = length2_;
  const J c2 = (1.0 / (2.0 * l1 * l2)) * (x * x + y * y + (-(l1 * l1) - l2 * l2));
  const J q2 = -acos(c2);
  const JetSinCos<4> sc2 = sincos(q2);
  const J q1 = atan2(y, x) - atan2(l2 * sc2.sin, l2 * sc2.cos + l1);

  ReferenceSample out{t, {}};
  for (const J* q : {&q1, &q2}) {
    out.joints.push_back({q->derivative(0), q->derivative(1), q->derivative(2), q->derivative(3),
                          q->derivative(4)});
  }
  return out;
}

ProfileSpec profile_preset(std::string_view name, std::size_t joints, double amplitude) {
  ProfileSpec spec;
  spec.joints = joints;
  spec.amplitude = amplitude;
  if (name == "demanding") {
    spec.lead_dwell = 0.5;
    spec.segments = {{0.5, 1.5, 0.5}, {-0.5, 1.5, 0.5}, {0.0, 1.5, 1.0}};
  } else if (name == "aggressive") {
    spec.lead_dwell = 0.25;
    spec.segments = {{0.3, 0.6, 0.3}, {-0.3, 0.8, 0.3}, {0.3, 0.8, 0.3}, {0.0, 0.6, 0.75}};
  } else if (name == "step-free-ramp") {
    spec.lead_dwell = 0.5;
    spec.segments = {{1.0, 3.0, 1.0}};
  } else {
    throw std::invalid_argument("unknown trajectory preset '" + std::string(name) + "'");
  }
  spec.validate();
  return spec;
}

std::shared_ptr<const Trajectory> make_trajectory(std::string_view preset, std::size_t joints,
                                                  double amplitude, const Planar2RGeometry& geometry) {
  if (preset == "lemniscate2r") {
    if (joints != 2) throw std::invalid_argument("lemniscate2r needs exactly 2 joints");
    LemniscateSpec spec;
    spec.a *= amplitude;
    spec.b *= amplitude;
    return std::make_shared<LemniscateTrajectory>(spec, geometry.length1, geometry.length2);
  }
  return std::make_shared<ProfileTrajectory>(profile_preset(preset, joints, amplitude));
}

const std::vector<std::string_view>& trajectory_preset_names() {
  static const std::vector<std::string_view> names = {"demanding", "aggressive", "step-free-ramp",
                                                      "lemniscate2r"};
  return names;
}

}  // namespace flexjoint
