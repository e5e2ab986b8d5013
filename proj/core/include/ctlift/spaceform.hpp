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

//! \file spaceform.hpp
//! Constant-curvature base manifolds realized in a single conformal-to-flat
//! chart family
//!
//!     g_ij(x) = delta_ij / (1 + (c/4)|x|^2)^2,
//!
//! valid for every sign of the sectional curvature c.  Supplies the metric,
//! its inverse, the Christoffel symbols and the curvature tensor in closed
//! form, plus a finite-difference oracle for cross-checking all of them.
//! Index slot orders follow docs/conventions.md:
//!   gamma(k,i,j)      = Gamma^k_ij   (symmetric in i,j)
//!   riemann(h,k,i,j)  = R^h_kij      = c (delta^h_i g_kj - delta^h_j g_ki)

#pragma once

#include <functional>

#include "ctlift/errors.hpp"
#include "ctlift/tensor.hpp"

namespace ctlift {

struct SpaceForm {
  int n = 2;                 // base dimension, n >= 2
  double c = 0.0;            // constant sectional curvature
  double chart_radius = 1.0; // admissible coordinate-ball radius

  SpaceForm(int n_, double c_, double chart_radius_);

  // Picks a radius that keeps the conformal factor comfortably positive:
  // 1 for c >= 0, 0.9 * 2/sqrt(|c|) capped at 1 for c < 0.
  static SpaceForm with_default_radius(int n, double c);
};

struct BaseGeometry {
  Mat g;        // g_ij
  Mat g_inv;    // g^ij
  Ten3 gamma;   // Gamma^k_ij, slots [k][i][j]
  Ten4 riemann; // R^h_kij, slots [h][k][i][j]
};

// Closed-form chart geometry at x.  Throws OutOfChart when |x| >= chart
// radius or the conformal factor is not positive.
BaseGeometry base_geometry_at(const SpaceForm& M, const Vec& x);

// Independent oracle: Christoffels by central differences of the metric via
// the standard formula, curvature by central differences of those
// Christoffels.  Requires margin for two finite-difference steps inside the
// chart.
BaseGeometry base_geometry_fd_oracle(const SpaceForm& M, const Vec& x);

using MetricFn = std::function<Mat(const Vec&)>;

// The oracle machinery over an arbitrary smooth metric callback; also the
// perturbed-metric hook the integrability negative tests inject.
BaseGeometry fd_geometry_from_metric(const MetricFn& metric, const Vec& x);

// max_k |partial_k g_ij - Gamma^l_ki g_lj - Gamma^l_kj g_il| at x, evaluated
// numerically; zero for a Levi-Civita connection.
double covariant_constancy_residual(const SpaceForm& M, const Vec& x);

}  // namespace ctlift
