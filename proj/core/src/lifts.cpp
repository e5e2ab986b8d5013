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

#include "ctlift/lifts.hpp"

#include <cmath>
#include <stdexcept>

namespace ctlift {

namespace {

double energy_from_geometry(const BaseGeometry& geo, const Vec& p) {
  const int n = geo.g.dim();
  double t = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) t += 0.5 * geo.g_inv(i, k) * p[i] * p[k];
  return t;
}

}  // namespace

CotangentPoint make_cotangent_point(const SpaceForm& M, Vec q, Vec p) {
  if (static_cast<int>(q.size()) != M.n || static_cast<int>(p.size()) != M.n)
    throw std::invalid_argument("cotangent point dimensions do not match n");
  CotangentPoint pt{std::move(q), std::move(p), 0.0};
  energy_density(M, pt);
  return pt;
}

double energy_density(const SpaceForm& M, CotangentPoint& pt) {
  const BaseGeometry geo = base_geometry_at(M, pt.q);
  pt.t = energy_from_geometry(geo, pt.p);
  return pt.t;
}

StructureBlocks structure_blocks_from_geometry(const BaseGeometry& geo,
                                               const CoefficientProfile& P,
                                               const Vec& p) {
  const int n = geo.g.dim();
  const double t = energy_from_geometry(geo, p);
  const DerivedCoefficients dc = coefficients_at(P, t);

  if (!(dc.c1 > 0.0 && dc.c2 > 0.0 && dc.c1 + 2.0 * t * dc.d1 > 0.0 &&
        dc.c2 + 2.0 * t * dc.d2 > 0.0))
    throw std::domain_error(
        "metric blocks not positive definite: requires c1, c2, c1+2td1, "
        "c2+2td2 > 0");

  StructureBlocks B;
  B.n = n;
  B.t = t;
  B.lambda = dc.lambda;
  B.mu = dc.mu;

  B.g0 = Vec(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int h = 0; h < n; ++h) B.g0[i] += p[h] * geo.g_inv(h, i);

  B.J1 = Mat(n);
  B.J2 = Mat(n);
  B.G1 = Mat(n);
  B.G2 = Mat(n);
  B.H1 = Mat(n);
  B.H2 = Mat(n);
  B.phi = Mat(n);

  const double inv_c1 = 1.0 / dc.c1;
  const double inv_c2 = 1.0 / dc.c2;
  const double h1_coef = dc.d1 / (dc.c1 * (dc.c1 + 2.0 * t * dc.d1));
  const double h2_coef = dc.d2 / (dc.c2 * (dc.c2 + 2.0 * t * dc.d2));

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      B.J1(i, j) = dc.a1 * geo.g(i, j) + dc.b1 * p[i] * p[j];
      B.J2(i, j) = dc.a2 * geo.g_inv(i, j) + dc.b2 * B.g0[i] * B.g0[j];
      B.G1(i, j) = dc.c1 * geo.g(i, j) + dc.d1 * p[i] * p[j];
      B.G2(i, j) = dc.c2 * geo.g_inv(i, j) + dc.d2 * B.g0[i] * B.g0[j];
      B.H1(i, j) = inv_c1 * geo.g_inv(i, j) - h1_coef * B.g0[i] * B.g0[j];
      B.H2(i, j) = inv_c2 * geo.g(i, j) - h2_coef * p[i] * p[j];
      B.phi(i, j) = dc.lambda * (i == j ? 1.0 : 0.0) + dc.mu * B.g0[i] * p[j];
    }

  if (identity_residual(B.G1, B.H1) > 1e-10 ||
      identity_residual(B.G2, B.H2) > 1e-10)
    throw std::runtime_error(
        "closed-form H blocks disagree with matrix inversion beyond 1e-10");
  return B;
}

StructureBlocks structure_blocks_at(const SpaceForm& M,
                                    const CoefficientProfile& P,
                                    const CotangentPoint& pt) {
  return structure_blocks_from_geometry(base_geometry_at(M, pt.q), P, pt.p);
}

AdaptedVector apply_J(const StructureBlocks& B, const AdaptedVector& X) {
  const int n = B.n;
  if (static_cast<int>(X.h.size()) != n || static_cast<int>(X.v.size()) != n)
    throw std::invalid_argument("apply_J: dimension mismatch");
  AdaptedVector out = AdaptedVector::zero(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      out.h[j] -= B.J2(i, j) * X.v[i];
      out.v[j] += B.J1(i, j) * X.h[i];
    }
  return out;
}

double inner_product(const StructureBlocks& B, const AdaptedVector& X,
                     const AdaptedVector& Y) {
  const int n = B.n;
  if (static_cast<int>(X.h.size()) != n || static_cast<int>(Y.h.size()) != n)
    throw std::invalid_argument("inner_product: dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s += X.h[i] * B.G1(i, j) * Y.h[j] + X.v[i] * B.G2(i, j) * Y.v[j];
  return s;
}

double phi_value(const StructureBlocks& B, const AdaptedVector& X,
                 const AdaptedVector& Y) {
  return inner_product(B, X, apply_J(B, Y));
}

Mat adapted_frame_in_chart(const SpaceForm& M, const CotangentPoint& pt) {
  const int n = M.n;
  const BaseGeometry geo = base_geometry_at(M, pt.q);
  Mat frame(2 * n);
  for (int i = 0; i < n; ++i) {
    frame(i, i) = 1.0;  // delta_i has d/dq^i component 1
    for (int h = 0; h < n; ++h) {
      double gamma0 = 0.0;  // Gamma^0_ih = p_k Gamma^k_ih
      for (int k = 0; k < n; ++k) gamma0 += pt.p[k] * geo.gamma(k, i, h);
      frame(n + h, i) = gamma0;
    }
    frame(n + i, n + i) = 1.0;  // del^i has d/dp_i component 1
  }
  return frame;
}

}  // namespace ctlift
