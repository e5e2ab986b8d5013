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

//! \file lifts.hpp
//! Pointwise structure on the cotangent bundle: the adapted frame
//! (delta_i = d/dq^i + Gamma^0_ih d/dp_h, del^i = d/dp_i), the diagonal
//! almost complex structure J, the diagonal metric G, their inverse blocks H
//! and the fundamental 2-form phi.  Vectors live in adapted components
//! (h on delta_i, v on del^i); chart-basis vectors appear only inside the
//! numerical oracles via adapted_frame_in_chart.
//!
//! Block shapes (see docs/conventions.md):
//!   J1(i,j) = a1 g_ij + b1 p_i p_j          J delta_i =  J1(i,j) del^j
//!   J2(i,j) = a2 g^ij + b2 g0^i g0^j        J del^i   = -J2(i,j) delta_j
//!   G1(i,j) = c1 g_ij + d1 p_i p_j          G(delta_i, delta_j)
//!   G2(i,j) = c2 g^ij + d2 g0^i g0^j        G(del^i, del^j)
//!   H1 = G1^{-1}, H2 = G2^{-1} in closed form
//!   phi(i,j) = lambda delta^i_j + mu g0^i p_j  = phi(del^i, delta_j)

#pragma once

#include "ctlift/profiles.hpp"
#include "ctlift/spaceform.hpp"
#include "ctlift/tensor.hpp"

namespace ctlift {

struct CotangentPoint {
  Vec q;          // base chart coordinates
  Vec p;          // covector components
  double t = 0.0; // cached energy density, (1/2) g^ik(q) p_i p_k
};

// Builds a point with the energy density cached.
CotangentPoint make_cotangent_point(const SpaceForm& M, Vec q, Vec p);

// Returns (1/2) g^ik(q) p_i p_k and refreshes pt.t.
double energy_density(const SpaceForm& M, CotangentPoint& pt);

struct AdaptedVector {
  Vec h;  // components on delta_i
  Vec v;  // components on del^i

  static AdaptedVector zero(int n) { return {Vec(n, 0.0), Vec(n, 0.0)}; }
  static AdaptedVector horizontal_unit(int n, int i) {
    AdaptedVector x = zero(n);
    x.h[i] = 1.0;
    return x;
  }
  static AdaptedVector vertical_unit(int n, int i) {
    AdaptedVector x = zero(n);
    x.v[i] = 1.0;
    return x;
  }
};

inline double max_abs(const AdaptedVector& x) {
  return std::max(max_abs(x.h), max_abs(x.v));
}

inline AdaptedVector operator+(const AdaptedVector& a, const AdaptedVector& b) {
  AdaptedVector r = a;
  for (std::size_t i = 0; i < r.h.size(); ++i) r.h[i] += b.h[i];
  for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] += b.v[i];
  return r;
}

inline AdaptedVector operator-(const AdaptedVector& a, const AdaptedVector& b) {
  AdaptedVector r = a;
  for (std::size_t i = 0; i < r.h.size(); ++i) r.h[i] -= b.h[i];
  for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] -= b.v[i];
  return r;
}

inline AdaptedVector operator*(double s, const AdaptedVector& a) {
  AdaptedVector r = a;
  for (double& x : r.h) x *= s;
  for (double& x : r.v) x *= s;
  return r;
}

struct StructureBlocks {
  int n = 0;
  double t = 0.0;
  Mat J1, J2;   // almost complex structure blocks
  Mat G1, G2;   // metric blocks
  Mat H1, H2;   // closed-form inverses of G1, G2
  Mat phi;      // phi(del^i, delta_j)
  Vec g0;       // g0^i = p_h g^hi
  double lambda = 0.0, mu = 0.0;
};

// Assembles all blocks at a point.  The H blocks come from the closed forms
//   H1^jk = (1/c1) g^jk - d1/(c1(c1+2t d1)) g0^j g0^k
//   H2_jk = (1/c2) g_jk - d2/(c2(c2+2t d2)) p_j p_k
// and are verified against G1, G2 to 1e-10 before returning.  Throws when
// the profile is singular at t or the positivity conditions
// c1, c2, c1+2t d1, c2+2t d2 > 0 fail.
StructureBlocks structure_blocks_at(const SpaceForm& M,
                                    const CoefficientProfile& P,
                                    const CotangentPoint& pt);

// Same assembly from an externally supplied base geometry; used by the
// numerical oracles which displace points themselves.
StructureBlocks structure_blocks_from_geometry(const BaseGeometry& geo,
                                               const CoefficientProfile& P,
                                               const Vec& p);

// (h, v) -> (-J2 v, J1 h); applying twice negates the argument.
AdaptedVector apply_J(const StructureBlocks& B, const AdaptedVector& X);

// G(X, Y) = hX' G1 hY + vX' G2 vY.
double inner_product(const StructureBlocks& B, const AdaptedVector& X,
                     const AdaptedVector& Y);

// phi(X, Y) = G(X, JY); antisymmetric.
double phi_value(const StructureBlocks& B, const AdaptedVector& X,
                 const AdaptedVector& Y);

// Columns are the 2n adapted frame vectors (delta_1..delta_n, del^1..del^n)
// in the induced chart basis (d/dq, d/dp); rows 0..n-1 hold d/dq components,
// rows n..2n-1 hold d/dp components.  Unipotent block structure, so always
// invertible.
Mat adapted_frame_in_chart(const SpaceForm& M, const CotangentPoint& pt);

}  // namespace ctlift
