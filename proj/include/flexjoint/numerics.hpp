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

#ifndef FLEXJOINT_NUMERICS_HPP_
#define FLEXJOINT_NUMERICS_HPP_

#include <cmath>
#include <numbers>

namespace flexjoint {

// Every exponential in the controller and the smooth laws saturates here so
// that divisions by (1 + e^x) never see inf.
inline constexpr double kExpLimit = 1e30;

inline double clamped_exp(double x) { return std::fmin(kExpLimit, std::exp(x)); }

inline double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

// Logistic function 1 / (1 + e^-x) together with its first two derivatives
// with respect to x. Written in terms of e = min(e^-x, 1e30) so the result is
// finite for every finite x.
struct Logistic {
  double value;
  double d1;
  double d2;
};

inline Logistic logistic(double x) {
  const double e = clamped_exp(-x);
  const double den = 1.0 + e;
  const double inv = 1.0 / den;
  const double d1 = e * inv * inv;
  return {inv, d1, d1 * (e - 1.0) * inv};
}

}  // namespace flexjoint

#endif  // FLEXJOINT_NUMERICS_HPP_
