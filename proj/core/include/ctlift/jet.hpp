/* Copyright 2026 the ctlift authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

//! \file jet.hpp
//! Truncated Taylor arithmetic on scalar functions of one variable, carrying
//! a value and its first three derivatives.  Coefficient profiles evaluate to
//! jets, so every derived coefficient (and the t-derivatives the connection
//! and curvature assemblies need) comes out of exact chain rules instead of
//! stacked finite differences.

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace ctlift {

struct Jet {
  double f = 0.0;   // value
  double d1 = 0.0;  // first derivative
  double d2 = 0.0;  // second derivative
  double d3 = 0.0;  // third derivative

  static Jet constant(double v) { return {v, 0.0, 0.0, 0.0}; }
  static Jet variable(double t) { return {t, 1.0, 0.0, 0.0}; }

  // Jet of the derivative function; the third-order slot is lost.
  Jet derivative() const { return {d1, d2, d3, 0.0}; }
};

inline Jet operator+(const Jet& a, const Jet& b) {
  return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}
inline Jet operator-(const Jet& a, const Jet& b) {
  return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}
inline Jet operator-(const Jet& a) { return {-a.f, -a.d1, -a.d2, -a.d3}; }

// Leibniz rule through third order.
inline Jet operator*(const Jet& a, const Jet& b) {
  return {a.f * b.f,
          a.d1 * b.f + a.f * b.d1,
          a.d2 * b.f + 2.0 * a.d1 * b.d1 + a.f * b.d2,
          a.d3 * b.f + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.f * b.d3};
}

inline Jet operator*(double s, const Jet& a) {
  return {s * a.f, s * a.d1, s * a.d2, s * a.d3};
}
inline Jet operator*(const Jet& a, double s) { return s * a; }

inline Jet operator+(const Jet& a, double s) {
  return {a.f + s, a.d1, a.d2, a.d3};
}
inline Jet operator+(double s, const Jet& a) { return a + s; }
inline Jet operator-(const Jet& a, double s) { return a + (-s); }
inline Jet operator-(double s, const Jet& a) { return -a + s; }

// Solve f = q*g order by order.
inline Jet operator/(const Jet& a, const Jet& b) {
  if (b.f == 0.0) throw std::domain_error("jet division by zero value");
  Jet q;
  q.f = a.f / b.f;
  q.d1 = (a.d1 - q.f * b.d1) / b.f;
  q.d2 = (a.d2 - 2.0 * q.d1 * b.d1 - q.f * b.d2) / b.f;
  q.d3 = (a.d3 - 3.0 * q.d2 * b.d1 - 3.0 * q.d1 * b.d2 - q.f * b.d3) / b.f;
  return q;
}

inline Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
inline Jet operator/(double s, const Jet& a) { return Jet::constant(s) / a; }

// Solve f = s^2 order by order.
inline Jet sqrt(const Jet& a) {
  if (a.f < 0.0) throw std::domain_error("jet sqrt of negative value");
  Jet s;
  s.f = std::sqrt(a.f);
  if (s.f == 0.0) throw std::domain_error("jet sqrt: derivative singular at 0");
  s.d1 = a.d1 / (2.0 * s.f);
  s.d2 = (a.d2 - 2.0 * s.d1 * s.d1) / (2.0 * s.f);
  s.d3 = (a.d3 - 6.0 * s.d1 * s.d2) / (2.0 * s.f);
  return s;
}

// A scalar function of t evaluated together with its first three
// derivatives.
using JetFn = std::function<Jet(double)>;

}  // namespace ctlift
