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

//! \file integrability.hpp
//! Pointwise verification of the bracket relations of the adapted frame, the
//! Nijenhuis tensor of J (closed form and finite-difference oracle), and the
//! numerical exterior derivative of the fundamental 2-form phi.
//!
//! Frame fields are extended off the evaluation point by their defining
//! formulas.  The numerical brackets work in the induced chart: a vector
//! field is a function z = (q, p) -> R^{2n} and
//! [V, W] = d/ds W(z + s V(z)) - d/ds V(z + s W(z)) at s = 0.
//!
//! All entry points exist in two flavors: the space-form API, and a variant
//! over an arbitrary GeometryFn used by negative tests that perturb the base
//! metric away from constant curvature.

#pragma once

#include "ctlift/lifts.hpp"
#include "ctlift/profiles.hpp"
#include "ctlift/spaceform.hpp"
#include "ctlift/tensor.hpp"

namespace ctlift {

using GeometryFn = std::function<BaseGeometry(const Vec&)>;

inline GeometryFn closed_form_geometry(const SpaceForm& M) {
  return [M](const Vec& x) { return base_geometry_at(M, x); };
}

// One of the 2n adapted frame fields.
struct FrameField {
  bool vertical = false;
  int index = 0;

  static FrameField delta(int i) { return {false, i}; }
  static FrameField del(int i) { return {true, i}; }
};

inline AdaptedVector frame_unit(int n, const FrameField& f) {
  return f.vertical ? AdaptedVector::vertical_unit(n, f.index)
                    : AdaptedVector::horizontal_unit(n, f.index);
}

// Chart representation (dq components then dp components) of an adapted
// vector at (q, p), and back.
Vec adapted_to_chart(const BaseGeometry& geo, const Vec& p,
                     const AdaptedVector& x);
AdaptedVector chart_to_adapted(const BaseGeometry& geo, const Vec& p,
                               const Vec& chart);

// [A, B] for two adapted frame fields, computed by finite differences in the
// induced chart and returned in adapted components at pt.
AdaptedVector frame_bracket_fd(const GeometryFn& geometry,
                               const CotangentPoint& pt, const FrameField& A,
                               const FrameField& B);

// Max deviations of the finite-difference frame brackets from their closed
// forms: [del^i, del^j] = 0,  [del^i, delta_j] = Gamma^i_jk del^k,
// [delta_i, delta_j] = R^0_kij del^k.
struct BracketReport {
  double pp_max = 0.0;  // vertical-vertical pairs
  double pd_max = 0.0;  // vertical-horizontal pairs
  double dd_max = 0.0;  // horizontal-horizontal pairs

  double max() const { return std::max({pp_max, pd_max, dd_max}); }
};

BracketReport bracket_check(const SpaceForm& M, const CotangentPoint& pt);
BracketReport bracket_check(const GeometryFn& geometry,
                            const CotangentPoint& pt);

// Vertical block of N(delta_i, delta_j) in closed form:
//   components[k][i][j] = coeff (p_i g_jk - p_j g_ik) - R^0_kij,
//   coeff = a1 a1' + 2t a1' b1 - a1 b1.
struct NijenhuisBlock {
  double coeff = 0.0;
  Ten3 components;  // slots [k][i][j], antisymmetric in (i, j)
};

NijenhuisBlock nijenhuis_delta_delta_closed(const SpaceForm& M,
                                            const CoefficientProfile& P,
                                            const CotangentPoint& pt);

// N(X, Y) = [JX, JY] - J[JX, Y] - J[X, JY] - [X, Y] evaluated with
// finite-difference brackets of the J-transformed frame fields; returns
// adapted components.
AdaptedVector nijenhuis_numeric(const SpaceForm& M,
                                const CoefficientProfile& P,
                                const CotangentPoint& pt, const FrameField& X,
                                const FrameField& Y);
AdaptedVector nijenhuis_numeric(const GeometryFn& geometry,
                                const CoefficientProfile& P,
                                const CotangentPoint& pt, const FrameField& X,
                                const FrameField& Y);

// d phi(X, Y, Z) by the alternating-sum formula
//   X phi(Y,Z) - Y phi(X,Z) + Z phi(X,Y)
//   - phi([X,Y],Z) + phi([X,Z],Y) - phi([Y,Z],X)
// with finite-difference directional derivatives and brackets.  The wedge
// normalization implied by this convention is fixed here; callers compare
// against zero and against other dphi_numeric values, never against an
// absolute prefactor.
double dphi_numeric(const SpaceForm& M, const CoefficientProfile& P,
                    const CotangentPoint& pt, const FrameField& X,
                    const FrameField& Y, const FrameField& Z);
double dphi_numeric(const GeometryFn& geometry, const CoefficientProfile& P,
                    const CotangentPoint& pt, const FrameField& X,
                    const FrameField& Y, const FrameField& Z);

}  // namespace ctlift
