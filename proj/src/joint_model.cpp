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

#include "flexjoint/joint_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "flexjoint/numerics.hpp"

namespace flexjoint {
namespace {

void require(bool condition, const char* what) {
  if (!condition) throw std::invalid_argument(what);
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::domain_error(std::string(what) + " is not finite");
}

// Ramp response of 1/(1 + T s)^n, y(t) = c T r(t/T, n). For small and
// moderate x the positive series
//   r = e^-x sum_{m>n} (m-n) x^m / m!
// avoids the cancellation in the closed form x - n + e^-x sum_{m<n} (n-m) x^m/m!,
// which is used once x is far past the transient.
double ramp_response(double x, int n) {
  if (x <= 0.0) return 0.0;
  if (x < n + 40.0 && x < 600.0) {
    double term = 1.0;
    double sum = 0.0;
    for (int m = 1; m < 2000; ++m) {
      term *= x / m;
      if (m <= n) continue;
      const double contribution = (m - n) * term;
      sum += contribution;
      if (m > x && contribution < 1e-17 * sum) break;
    }
    return std::exp(-x) * sum;
  }
  if (x > 745.0) return x - n;  // exp(-x) underflows; skip the 0 * inf product
  double term = 1.0;
  double poly = n;
  for (int m = 1; m < n; ++m) {
    term *= x / m;
    poly += (n - m) * term;
  }
  return x - n + std::exp(-x) * poly;
}

}  // namespace

void FrictionParams::validate() const {
  require(std::isfinite(viscous) && viscous >= 0.0, "friction: f_v must be >= 0");
  require(std::isfinite(coulomb) && coulomb >= 0.0, "friction: f_c must be >= 0");
  require(smoothness > 0.0, "friction: s_F must be > 0");
}

void StiffnessParams::validate() const {
  require(std::isfinite(lost_motion_stiffness) && lost_motion_stiffness > 0.0,
          "stiffness: c_LM must be > 0");
  require(std::isfinite(rigidity_stiffness) && rigidity_stiffness > lost_motion_stiffness,
          "stiffness: c_TR must exceed c_LM");
  require(std::isfinite(backlash_angle) && backlash_angle >= 0.0,
          "stiffness: phi_B_star must be >= 0");
  require(std::isfinite(lost_motion_angle) && lost_motion_angle >= 0.0,
          "stiffness: phi_LM must be >= 0");
  require(inverse_smoothness > 0.0, "stiffness: s_E2 must be > 0");
  const double phi_b = effective_backlash();
  if (phi_b > 0.0) {
    require(tanh_slope >= 30.0 / phi_b * (1.0 - 1e-12), "stiffness: s_E1 must be >= 30 / phi_B");
  } else {
    require(tanh_slope > 0.0, "stiffness: s_E1 must be > 0");
  }
}

void JointParams::validate() const {
  require(std::isfinite(motor_inertia) && motor_inertia > 0.0, "joint: J must be > 0");
  require(std::isfinite(gear_ratio) && gear_ratio > 0.0, "joint: u must be > 0");
  require(std::isfinite(link_inertia) && link_inertia > 0.0, "joint: M must be > 0");
  friction.validate();
  stiffness.validate();
  require(std::isfinite(position_gain) && position_gain >= 0.0, "joint: K_P must be >= 0");
  require(std::isfinite(speed_gain) && speed_gain >= 0.0, "joint: K_V must be >= 0");
  require(torque_limit > 0.0, "joint: tau_lim must be > 0");
  require(torque_rate_limit > 0.0, "joint: tau_rate_lim must be > 0");
  require(std::isfinite(lowpass_time_constant) && lowpass_time_constant >= 0.0,
          "joint: lp_time_constant must be >= 0");
}

double friction_piecewise(double velocity, const FrictionParams& p) {
  require_finite(velocity, "velocity");
  if (velocity == 0.0) return 0.0;
  return p.viscous * velocity + p.coulomb * sign(velocity);
}

double friction_smooth(double velocity, const FrictionParams& p) {
  const Logistic s = logistic(p.smoothness * velocity);
  return p.viscous * velocity + 2.0 * p.coulomb * s.value - p.coulomb;
}

FrictionRates friction_smooth_rates(double velocity, double acceleration, double jerk,
                                    const FrictionParams& p) {
  const Logistic s = logistic(p.smoothness * velocity);
  // d tau / d v and d² tau / d v²
  const double slope = p.viscous + 2.0 * p.coulomb * p.smoothness * s.d1;
  const double curvature = 2.0 * p.coulomb * p.smoothness * p.smoothness * s.d2;
  return {slope * acceleration, curvature * acceleration * acceleration + slope * jerk};
}

double stiffness_piecewise(double torsion, const StiffnessParams& p) {
  const double a = std::abs(torsion);
  if (a <= p.backlash_angle) return 0.0;
  const double s = sign(torsion);
  const double phi_b = p.effective_backlash();
  if (a <= phi_b) return s * p.lost_motion_stiffness * (a - p.backlash_angle);
  return s * (p.rigidity_stiffness * (a - phi_b) + p.offset_torque());
}

double stiffness_variable_order(double torsion, int order, const StiffnessParams& p) {
  if (order < 1) throw std::domain_error("variable-order stiffness: order must be >= 1");
  if (!(torsion >= 0.0)) throw std::domain_error("variable-order stiffness: torsion must be >= 0");
  const double phi_b = p.effective_backlash();
  if (phi_b == 0.0) return p.rigidity_stiffness * torsion;
  const double time_constant = phi_b / order;
  return p.rigidity_stiffness * time_constant * ramp_response(torsion / time_constant, order);
}

double stiffness_smooth(double torsion, const StiffnessParams& p) {
  // Evaluated on |dq| and reflected, which is exact because the law is odd.
  const double a = std::abs(torsion);
  if (a == 0.0) return 0.0;
  const double blend = std::tanh(p.tanh_slope * a);
  return sign(torsion) * blend * stiffness_variable_order(a * blend, 3, p);
}

double inverse_stiffness_piecewise(double torque, const StiffnessParams& p) {
  const double t = std::abs(torque);
  if (t == 0.0) return 0.0;
  const double s = sign(torque);
  const double offset = p.offset_torque();
  if (t <= offset) return s * (t / p.lost_motion_stiffness + p.backlash_angle);
  return s * ((t - offset) / p.rigidity_stiffness + p.effective_backlash());
}

double inverse_stiffness_smooth(double torque, const StiffnessParams& p) {
  return inverse_stiffness_smooth_jet(torque, p).torsion;
}

InverseStiffnessJet inverse_stiffness_smooth_jet(double torque, const StiffnessParams& p) {
  const double phi_b = p.effective_backlash();
  const double se = p.inverse_smoothness;
  const Logistic s = logistic(se * torque);
  return {torque / p.rigidity_stiffness + 2.0 * phi_b * s.value - phi_b,
          1.0 / p.rigidity_stiffness + 2.0 * phi_b * se * s.d1,
          2.0 * phi_b * se * se * s.d2};
}

double stiffness_inverse_consistent(double torsion, const StiffnessParams& p) {
  const double c = p.rigidity_stiffness;
  const double phi_b = p.effective_backlash();
  if (phi_b == 0.0) return c * torsion;
  // dq - tau/c lies in (-phi_B, phi_B), which brackets the root.
  double lo = c * (torsion - phi_b);
  double hi = c * (torsion + phi_b);
  double tau = c * torsion;
  // Newton steps that do not halve the step taken two iterations earlier
  // are replaced by bisection, so the bracket always contracts.
  double step_old = hi - lo;
  double step = step_old;
  for (int it = 0; it < 200; ++it) {
    const InverseStiffnessJet jet = inverse_stiffness_smooth_jet(tau, p);
    const double residual = jet.torsion - torsion;
    if (residual == 0.0) return tau;
    if (residual > 0.0) {
      hi = tau;
    } else {
      lo = tau;
    }
    const double newton = tau - residual / jet.d1;
    if (!(newton > lo && newton < hi) || std::abs(2.0 * residual / jet.d1) > std::abs(step_old)) {
      step_old = step;
      step = 0.5 * (hi - lo);
      tau = lo + step;
    } else {
      step_old = step;
      step = newton - tau;
      tau = newton;
    }
    const double tol = 1e-13 * std::max(std::abs(tau), 1.0);
    if (std::abs(step) <= tol || hi - lo <= tol) break;
  }
  return tau;
}

double elastic_torque(StiffnessLaw law, double torsion, const StiffnessParams& p) {
  switch (law) {
    case StiffnessLaw::piecewise:
      return stiffness_piecewise(torsion, p);
    case StiffnessLaw::smooth:
      return stiffness_smooth(torsion, p);
    case StiffnessLaw::inverse_consistent:
      return stiffness_inverse_consistent(torsion, p);
  }
  return 0.0;
}

double friction_torque(FrictionLaw law, double velocity, const FrictionParams& p) {
  return law == FrictionLaw::piecewise ? friction_piecewise(velocity, p)
                                       : friction_smooth(velocity, p);
}

double static_torsion(StiffnessLaw law, double torque, const StiffnessParams& p) {
  if (torque == 0.0) return 0.0;
  switch (law) {
    case StiffnessLaw::piecewise:
      return inverse_stiffness_piecewise(torque, p);
    case StiffnessLaw::inverse_consistent:
      return inverse_stiffness_smooth(torque, p);
    case StiffnessLaw::smooth:
      break;
  }
  // stiffness_smooth is odd and non-decreasing; bisect on |tau|.
  const double target = std::abs(torque);
  double lo = 0.0;
  double hi = target / p.rigidity_stiffness + p.effective_backlash() + 1e-12;
  while (stiffness_smooth(hi, p) < target) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (stiffness_smooth(mid, p) < target ? lo : hi) = mid;
  }
  return sign(torque) * 0.5 * (lo + hi);
}

std::string_view to_string(StiffnessLaw law) {
  switch (law) {
    case StiffnessLaw::piecewise:
      return "piecewise";
    case StiffnessLaw::smooth:
      return "smooth";
    case StiffnessLaw::inverse_consistent:
      return "inverse-consistent";
  }
  return "?";
}

std::string_view to_string(FrictionLaw law) {
  return law == FrictionLaw::piecewise ? "piecewise" : "smooth";
}

StiffnessLaw parse_stiffness_law(std::string_view name) {
  if (name == "piecewise") return StiffnessLaw::piecewise;
  if (name == "smooth") return StiffnessLaw::smooth;
  if (name == "inverse-consistent") return StiffnessLaw::inverse_consistent;
  throw std::invalid_argument("unknown stiffness law '" + std::string(name) + "'");
}

FrictionLaw parse_friction_law(std::string_view name) {
  if (name == "piecewise") return FrictionLaw::piecewise;
  if (name == "smooth") return FrictionLaw::smooth;
  throw std::invalid_argument("unknown friction law '" + std::string(name) + "'");
}

}  // namespace flexjoint
