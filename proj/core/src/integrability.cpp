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

#include "ctlift/integrability.hpp"

#include <cmath>

#include "ctlift/fd.hpp"

namespace ctlift {

namespace {

// A vector field on T*M in the induced chart: z = (q_0..q_{n-1},
// p_0..p_{n-1}) -> R^{2n}.
using ChartField = std::function<Vec(const Vec&)>;

Vec pack(const Vec& q, const Vec& p) {
  Vec z;
  z.reserve(q.size() + p.size());
  z.insert(z.end(), q.begin(), q.end());
  z.insert(z.end(), p.begin(), p.end());
  return z;
}

Vec q_of(const Vec& z) {
  return Vec(z.begin(), z.begin() + static_cast<long>(z.size() / 2));
}
Vec p_of(const Vec& z) {
  return Vec(z.begin() + static_cast<long>(z.size() / 2), z.end());
}

double chart_scale(const Vec& z) {
  double m = 1.0;
  for (double v : z) m = std::max(m, std::abs(v));
  return m;
}

ChartField frame_chart_field(const GeometryFn& geometry, const FrameField& f) {
  return [geometry, f](const Vec& z) {
    const int n = static_cast<int>(z.size() / 2);
    Vec out(2 * n, 0.0);
    if (f.vertical) {
      out[n + f.index] = 1.0;
      return out;
    }
    const Vec q = q_of(z), p = p_of(z);
    const BaseGeometry geo = geometry(q);
    out[f.index] = 1.0;
    for (int h = 0; h < n; ++h) {
      double gamma0 = 0.0;
      for (int k = 0; k < n; ++k) gamma0 += p[k] * geo.gamma(k, f.index, h);
      out[n + h] = gamma0;
    }
    return out;
  };
}

// z -> J_z(F(z)) in chart components, for a frame field F.
ChartField j_frame_chart_field(const GeometryFn& geometry,
                               const CoefficientProfile& P,
                               const FrameField& f) {
  return [geometry, &P, f](const Vec& z) {
    const int n = static_cast<int>(z.size() / 2);
    const Vec q = q_of(z), p = p_of(z);
    const BaseGeometry geo = geometry(q);
    const StructureBlocks blocks = structure_blocks_from_geometry(geo, P, p);
    const AdaptedVector jx = apply_J(blocks, frame_unit(n, f));
    return adapted_to_chart(geo, p, jx);
  };
}

// [V, W](z0) = d/ds W(z0 + s V(z0)) - d/ds V(z0 + s W(z0)).
Vec fd_bracket(const ChartField& V, const ChartField& W, const Vec& z0) {
  const double h = fd_step(chart_scale(z0));
  const Vec v0 = V(z0), w0 = W(z0);
  const Vec dW = directional_derivative_vec(W, z0, v0, h);
  const Vec dV = directional_derivative_vec(V, z0, w0, h);
  Vec out(z0.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = dW[i] - dV[i];
  return out;
}

void check_fd_margin(const SpaceForm& M, const CotangentPoint& pt) {
  double r = 0.0;
  for (double qi : pt.q) r += qi * qi;
  r = std::sqrt(r);
  const double h = fd_step(chart_scale(pack(pt.q, pt.p)));
  if (r + 2.0 * h >= M.chart_radius) throw OutOfChart(r + 2.0 * h, M.chart_radius);
}

}  // namespace

Vec adapted_to_chart(const BaseGeometry& geo, const Vec& p,
                     const AdaptedVector& x) {
  const int n = geo.g.dim();
  Vec out(2 * n, 0.0);
  for (int i = 0; i < n; ++i) out[i] = x.h[i];
  for (int h = 0; h < n; ++h) {
    double s = x.v[h];
    for (int i = 0; i < n; ++i) {
      double gamma0 = 0.0;
      for (int k = 0; k < n; ++k) gamma0 += p[k] * geo.gamma(k, i, h);
      s += gamma0 * x.h[i];
    }
    out[n + h] = s;
  }
  return out;
}

AdaptedVector chart_to_adapted(const BaseGeometry& geo, const Vec& p,
                               const Vec& chart) {
  const int n = geo.g.dim();
  AdaptedVector x = AdaptedVector::zero(n);
  for (int i = 0; i < n; ++i) x.h[i] = chart[i];
  for (int h = 0; h < n; ++h) {
    double s = chart[n + h];
    for (int i = 0; i < n; ++i) {
      double gamma0 = 0.0;
      for (int k = 0; k < n; ++k) gamma0 += p[k] * geo.gamma(k, i, h);
      s -= gamma0 * chart[i];
    }
    x.v[h] = s;
  }
  return x;
}

AdaptedVector frame_bracket_fd(const GeometryFn& geometry,
                               const CotangentPoint& pt, const FrameField& A,
                               const FrameField& B) {
  const Vec z0 = pack(pt.q, pt.p);
  const BaseGeometry geo = geometry(pt.q);
  const Vec br = fd_bracket(frame_chart_field(geometry, A),
                            frame_chart_field(geometry, B), z0);
  return chart_to_adapted(geo, pt.p, br);
}

BracketReport bracket_check(const GeometryFn& geometry,
                            const CotangentPoint& pt) {
  const int n = static_cast<int>(pt.q.size());
  const Vec z0 = pack(pt.q, pt.p);
  const BaseGeometry geo = geometry(pt.q);

  BracketReport report;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // [del^i, del^j] = 0
      if (i < j) {
        const Vec br = fd_bracket(frame_chart_field(geometry, FrameField::del(i)),
                                  frame_chart_field(geometry, FrameField::del(j)),
                                  z0);
        report.pp_max = std::max(report.pp_max, max_abs(br));
      }

      // [del^i, delta_j] = Gamma^i_jk del^k
      {
        const Vec br =
            fd_bracket(frame_chart_field(geometry, FrameField::del(i)),
                       frame_chart_field(geometry, FrameField::delta(j)), z0);
        const AdaptedVector ad = chart_to_adapted(geo, pt.p, br);
        double resid = max_abs(ad.h);
        for (int k = 0; k < n; ++k)
          resid = std::max(resid, std::abs(ad.v[k] - geo.gamma(i, j, k)));
        report.pd_max = std::max(report.pd_max, resid);
      }

      // [delta_i, delta_j] = R^0_kij del^k
      if (i < j) {
        const Vec br =
            fd_bracket(frame_chart_field(geometry, FrameField::delta(i)),
                       frame_chart_field(geometry, FrameField::delta(j)), z0);
        const AdaptedVector ad = chart_to_adapted(geo, pt.p, br);
        double resid = max_abs(ad.h);
        for (int k = 0; k < n; ++k) {
          double r0 = 0.0;
          for (int h = 0; h < n; ++h) r0 += pt.p[h] * geo.riemann(h, k, i, j);
          resid = std::max(resid, std::abs(ad.v[k] - r0));
        }
        report.dd_max = std::max(report.dd_max, resid);
      }
    }
  return report;
}

BracketReport bracket_check(const SpaceForm& M, const CotangentPoint& pt) {
  check_fd_margin(M, pt);
  return bracket_check(closed_form_geometry(M), pt);
}

NijenhuisBlock nijenhuis_delta_delta_closed(const SpaceForm& M,
                                            const CoefficientProfile& P,
                                            const CotangentPoint& pt) {
  const int n = M.n;
  const BaseGeometry geo = base_geometry_at(M, pt.q);
  const DerivedJets dj = derived_jets_at(P, pt.t);
  const double a1 = dj.a1.f, a1p = dj.a1.d1, b1 = dj.b1.f;

  NijenhuisBlock block;
  block.coeff = a1 * a1p + 2.0 * pt.t * a1p * b1 - a1 * b1;
  block.components = Ten3(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double r0 = 0.0;
        for (int h = 0; h < n; ++h) r0 += pt.p[h] * geo.riemann(h, k, i, j);
        block.components(k, i, j) =
            block.coeff * (pt.p[i] * geo.g(j, k) - pt.p[j] * geo.g(i, k)) - r0;
      }
  return block;
}

AdaptedVector nijenhuis_numeric(const GeometryFn& geometry,
                                const CoefficientProfile& P,
                                const CotangentPoint& pt, const FrameField& X,
                                const FrameField& Y) {
  const Vec z0 = pack(pt.q, pt.p);
  const BaseGeometry geo = geometry(pt.q);
  const StructureBlocks blocks = structure_blocks_from_geometry(geo, P, pt.p);

  const ChartField fX = frame_chart_field(geometry, X);
  const ChartField fY = frame_chart_field(geometry, Y);
  const ChartField fJX = j_frame_chart_field(geometry, P, X);
  const ChartField fJY = j_frame_chart_field(geometry, P, Y);

  const AdaptedVector jxjy = chart_to_adapted(geo, pt.p, fd_bracket(fJX, fJY, z0));
  const AdaptedVector jxy = chart_to_adapted(geo, pt.p, fd_bracket(fJX, fY, z0));
  const AdaptedVector xjy = chart_to_adapted(geo, pt.p, fd_bracket(fX, fJY, z0));
  const AdaptedVector xy = chart_to_adapted(geo, pt.p, fd_bracket(fX, fY, z0));

  return jxjy - apply_J(blocks, jxy) - apply_J(blocks, xjy) - xy;
}

AdaptedVector nijenhuis_numeric(const SpaceForm& M,
                                const CoefficientProfile& P,
                                const CotangentPoint& pt, const FrameField& X,
                                const FrameField& Y) {
  check_fd_margin(M, pt);
  return nijenhuis_numeric(closed_form_geometry(M), P, pt, X, Y);
}

double dphi_numeric(const GeometryFn& geometry, const CoefficientProfile& P,
                    const CotangentPoint& pt, const FrameField& X,
                    const FrameField& Y, const FrameField& Z) {
  const int n = static_cast<int>(pt.q.size());
  const Vec z0 = pack(pt.q, pt.p);
  const BaseGeometry geo = geometry(pt.q);
  const StructureBlocks blocks = structure_blocks_from_geometry(geo, P, pt.p);
  const double h = fd_step(chart_scale(z0));

  // Frame fields have constant adapted components, so the scalar
  // z -> phi_z(A, B) only needs the blocks at z.
  auto phi_scalar = [&](const FrameField& A, const FrameField& B) {
    return [&geometry, &P, A, B](const Vec& z) {
      const int m = static_cast<int>(z.size() / 2);
      const Vec q = q_of(z), p = p_of(z);
      const BaseGeometry g = geometry(q);
      const StructureBlocks bl = structure_blocks_from_geometry(g, P, p);
      return phi_value(bl, frame_unit(m, A), frame_unit(m, B));
    };
  };

  auto dir_term = [&](const FrameField& A, const FrameField& B,
                      const FrameField& C) {
    const Vec dir = frame_chart_field(geometry, A)(z0);
    return directional_derivative(phi_scalar(B, C), z0, dir, h);
  };

  auto bracket_term = [&](const FrameField& A, const FrameField& B,
                          const FrameField& C) {
    const AdaptedVector br = chart_to_adapted(
        geo, pt.p,
        fd_bracket(frame_chart_field(geometry, A), frame_chart_field(geometry, B),
                   z0));
    return phi_value(blocks, br, frame_unit(n, C));
  };

  return dir_term(X, Y, Z) - dir_term(Y, X, Z) + dir_term(Z, X, Y) -
         bracket_term(X, Y, Z) + bracket_term(X, Z, Y) - bracket_term(Y, Z, X);
}

double dphi_numeric(const SpaceForm& M, const CoefficientProfile& P,
                    const CotangentPoint& pt, const FrameField& X,
                    const FrameField& Y, const FrameField& Z) {
  check_fd_margin(M, pt);
  return dphi_numeric(closed_form_geometry(M), P, pt, X, Y, Z);
}

}  // namespace ctlift
