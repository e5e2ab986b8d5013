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

//! \file fd.hpp
//! Central-difference helpers shared by the numerical oracles.  Scheme:
//! central differences with one Richardson extrapolation level, step
//! h = cbrt(machine epsilon) * max(1, |x|).

#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "ctlift/tensor.hpp"

namespace ctlift {

inline double fd_step(double x) {
  static const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
  return h0 * std::max(1.0, std::abs(x));
}

// d/ds f(s) at s = x, one Richardson level on top of central differences.
template <class F>
double central_derivative(F&& f, double x, double h) {
  auto slope = [&](double step) { return (f(x + step) - f(x - step)) / (2.0 * step); };
  return (4.0 * slope(h / 2.0) - slope(h)) / 3.0;
}

template <class F>
double central_derivative(F&& f, double x) {
  return central_derivative(std::forward<F>(f), x, fd_step(x));
}

// Directional derivative d/ds f(z + s*dir) at s = 0 for a scalar-valued f of
// a coordinate vector.
template <class F>
double directional_derivative(F&& f, const Vec& z, const Vec& dir, double h) {
  auto g = [&](double s) {
    Vec zs = z;
    for (std::size_t i = 0; i < z.size(); ++i) zs[i] += s * dir[i];
    return f(zs);
  };
  return central_derivative(g, 0.0, h);
}

// Vector-valued variant; f returns a Vec of fixed length.
template <class F>
Vec directional_derivative_vec(F&& f, const Vec& z, const Vec& dir, double h) {
  auto eval = [&](double s) {
    Vec zs = z;
    for (std::size_t i = 0; i < z.size(); ++i) zs[i] += s * dir[i];
    return f(zs);
  };
  const Vec ph = eval(h), mh = eval(-h);
  const Vec ph2 = eval(h / 2.0), mh2 = eval(-h / 2.0);
  Vec out(ph.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double dh = (ph[i] - mh[i]) / (2.0 * h);
    const double dh2 = (ph2[i] - mh2[i]) / h;
    out[i] = (4.0 * dh2 - dh) / 3.0;
  }
  return out;
}

}  // namespace ctlift
