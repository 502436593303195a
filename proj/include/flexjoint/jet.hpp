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

// Truncated Taylor series in one variable. c[k] holds f^(k)(t0) / k!, so
// arithmetic on jets propagates all time derivatives up to Order exactly.

#ifndef FLEXJOINT_JET_HPP_
#define FLEXJOINT_JET_HPP_

#include <array>
#include <cmath>

namespace flexjoint {

template <int Order>
struct Jet {
  std::array<double, Order + 1> c{};

  static Jet constant(double v) {
    Jet j;
    j.c[0] = v;
    return j;
  }

  // Builds a jet from derivatives f, f', f'', ...
  static Jet from_derivatives(const std::array<double, Order + 1>& d) {
    Jet j;
    double factorial = 1.0;
    for (int k = 0; k <= Order; ++k) {
      if (k > 0) factorial *= k;
      j.c[k] = d[k] / factorial;
    }
    return j;
  }

  double value() const { return c[0]; }

  double derivative(int k) const {
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= i;
    return c[k] * factorial;
  }

  Jet operator-() const {
    Jet r;
    for (int k = 0; k <= Order; ++k) r.c[k] = -c[k];
    return r;
  }
  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= Order; ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
  }
  friend Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }
  friend Jet operator+(const Jet& a, double s) {
    Jet r = a;
    r.c[0] += s;
    return r;
  }
  friend Jet operator*(double s, const Jet& a) {
    Jet r;
    for (int k = 0; k <= Order; ++k) r.c[k] = s * a.c[k];
    return r;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= Order; ++k) {
      double sum = 0.0;
      for (int j = 0; j <= k; ++j) sum += a.c[j] * b.c[k - j];
      r.c[k] = sum;
    }
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= Order; ++k) {
      double sum = a.c[k];
      for (int j = 1; j <= k; ++j) sum -= b.c[j] * r.c[k - j];
      r.c[k] = sum / b.c[0];
    }
    return r;
  }
};

template <int Order>
struct JetSinCos {
  Jet<Order> sin;
  Jet<Order> cos;
};

template <int Order>
JetSinCos<Order> sincos(const Jet<Order>& x) {
  JetSinCos<Order> r;
  r.sin.c[0] = std::sin(x.c[0]);
  r.cos.c[0] = std::cos(x.c[0]);
  for (int k = 1; k <= Order; ++k) {
    double s = 0.0;
    double c = 0.0;
    for (int j = 1; j <= k; ++j) {
      s += j * x.c[j] * r.cos.c[k - j];
      c -= j * x.c[j] * r.sin.c[k - j];
    }
    r.sin.c[k] = s / k;
    r.cos.c[k] = c / k;
  }
  return r;
}

template <int Order>
Jet<Order> sqrt(const Jet<Order>& x) {
  Jet<Order> r;
  r.c[0] = std::sqrt(x.c[0]);
  for (int k = 1; k <= Order; ++k) {
    double sum = x.c[k];
    for (int j = 1; j < k; ++j) sum -= r.c[j] * r.c[k - j];
    r.c[k] = sum / (2.0 * r.c[0]);
  }
  return r;
}

// atan2 via its derivative (x y' - y x') / (x² + y²), integrated term by term.
template <int Order>
Jet<Order> atan2(const Jet<Order>& y, const Jet<Order>& x) {
  Jet<Order> dy;
  Jet<Order> dx;
  for (int k = 0; k < Order; ++k) {
    dy.c[k] = (k + 1) * y.c[k + 1];
    dx.c[k] = (k + 1) * x.c[k + 1];
  }
  const Jet<Order> rate = (x * dy - y * dx) / (x * x + y * y);
  Jet<Order> r;
  r.c[0] = std::atan2(y.c[0], x.c[0]);
  for (int k = 1; k <= Order; ++k) r.c[k] = rate.c[k - 1] / k;
  return r;
}

template <int Order>
Jet<Order> acos(const Jet<Order>& x) {
  return atan2(sqrt(Jet<Order>::constant(1.0) - x * x), x);
}

}  // namespace flexjoint

#endif  // FLEXJOINT_JET_HPP_
