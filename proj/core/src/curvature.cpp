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

#include "ctlift/curvature.hpp"

#include <cmath>

#include "ctlift/fd.hpp"

namespace ctlift {

namespace {

// Scalar coefficients of the connection blocks and their t-derivatives.
// Each block is a sum of coefficient(t) * index pattern:
//   Q(i,j,h) = q1 g^ij p_h + q2 (d^j_h g0^i + d^i_h g0^j) + q3 p_h g0^i g0^j
//   P(h,i,j) = p1 g^hi p_j + p2 d^i_j g0^h + p3 d^h_j g0^i
//              + p4 p_j g0^h g0^i
//   S(h,i,j) = s1 g_ij p_h + s2 g_hj p_i + s3 g_hi p_j + s4 p_h p_i p_j
struct ConnCoeffs {
  Jet q1, q2, q3;
  Jet p1, p2, p3, p4;
  Jet s1, s2, s3, s4;
};

ConnCoeffs connection_coefficients(const CoefficientProfile& prof, double t) {
  const DerivedJets dj = derived_jets_at(prof, t);
  const Jet tv = Jet::variable(t);
  const double c = prof.c;

  const Jet c1 = dj.c1, c2 = dj.c2, d1 = dj.d1, d2 = dj.d2;
  const Jet c1p = c1.derivative();
  const Jet c2p = c2.derivative();
  const Jet d1p = d1.derivative();
  const Jet d2p = d2.derivative();
  const Jet den1 = c1 + 2.0 * d1 * tv;  // c1 + 2 d1 t  (> 0 when validated)
  const Jet den2 = c2 + 2.0 * d2 * tv;  // c2 + 2 d2 t

  ConnCoeffs k;
  k.q1 = -(c2p - 2.0 * d2) / (2.0 * den2);
  k.q2 = c2p / (2.0 * c2);
  k.q3 = (-2.0 * c2p * d2 + c2 * d2p) / (2.0 * c2 * den2);

  k.p1 = -(c * c2 - d1) / (2.0 * c1);
  k.p2 = (c * c2 + d1) / (2.0 * den1);
  k.p3 = c1p / (2.0 * c1);
  k.p4 = (-c1p * d1 + c * c2 * d1 - d1 * d1 + c1 * d1p) / (2.0 * c1 * den1);

  k.s1 = -c1p / (2.0 * den2);
  k.s2 = (c * c2 - d1) / (2.0 * c2);
  k.s3 = -(c * c2 + d1) / (2.0 * c2);
  k.s4 = -(c2 * d1p - 2.0 * d1 * d2) / (2.0 * c2 * den2);
  return k;
}

struct PointData {
  int n = 0;
  double t = 0.0;
  BaseGeometry geo;
  Vec p;
  Vec g0;                   // g0^i = p_h g^hi
  Ten3 r0;                  // R^0_kij = p_h R^h_kij
  StructureBlocks blocks;   // enforces positivity
  ConnCoeffs coeffs;
};

PointData point_data(const SpaceForm& M, const CoefficientProfile& prof,
                     const CotangentPoint& pt) {
  PointData d;
  d.n = M.n;
  d.geo = base_geometry_at(M, pt.q);
  d.p = pt.p;
  d.blocks = structure_blocks_from_geometry(d.geo, prof, pt.p);
  d.t = d.blocks.t;
  d.g0 = d.blocks.g0;
  d.coeffs = connection_coefficients(prof, d.t);

  d.r0 = Ten3(d.n);
  for (int k = 0; k < d.n; ++k)
    for (int i = 0; i < d.n; ++i)
      for (int j = 0; j < d.n; ++j) {
        double v = 0.0;
        for (int h = 0; h < d.n; ++h) v += pt.p[h] * d.geo.riemann(h, k, i, j);
        d.r0(k, i, j) = v;
      }
  return d;
}

ConnectionBlocks assemble_connection(const PointData& d) {
  const int n = d.n;
  const auto& g = d.geo.g;
  const auto& gu = d.geo.g_inv;
  const auto& p = d.p;
  const auto& g0 = d.g0;
  const ConnCoeffs& k = d.coeffs;
  auto kd = [](int a, int b) { return a == b ? 1.0 : 0.0; };

  ConnectionBlocks out;
  out.Q = Ten3(n);
  out.P = Ten3(n);
  out.S = Ten3(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        // a=i, b=j, c=h
        out.Q(a, b, c) = k.q1.f * gu(a, b) * p[c] +
                         k.q2.f * (kd(c, b) * g0[a] + kd(c, a) * g0[b]) +
                         k.q3.f * p[c] * g0[a] * g0[b];
        // a=h, b=i, c=j
        out.P(a, b, c) = k.p1.f * gu(a, b) * p[c] + k.p2.f * kd(b, c) * g0[a] +
                         k.p3.f * kd(a, c) * g0[b] +
                         k.p4.f * p[c] * g0[a] * g0[b];
        // a=h, b=i, c=j
        out.S(a, b, c) = k.s1.f * g(b, c) * p[a] + k.s2.f * g(a, c) * p[b] +
                         k.s3.f * g(a, b) * p[c] + k.s4.f * p[a] * p[b] * p[c];
      }
  return out;
}

// The generic H-contracted forms of the connection blocks, used as an
// internal consistency check on the explicit ones.
ConnectionBlocks assemble_connection_generic(const PointData& d,
                                             const CoefficientProfile& prof) {
  const int n = d.n;
  const auto& g = d.geo.g;
  const auto& gu = d.geo.g_inv;
  const auto& p = d.p;
  const auto& g0 = d.g0;
  const DerivedJets dj = derived_jets_at(prof, d.t);
  const double c1p = dj.c1.d1, c2p = dj.c2.d1, d1 = dj.d1.f, d2 = dj.d2.f,
               d1p = dj.d1.d1, d2p = dj.d2.d1, c1v = dj.c1.f, c2v = dj.c2.f;
  auto kd = [](int a, int b) { return a == b ? 1.0 : 0.0; };

  // del^k G2^ij and del^k G1_ij by the exact rules.
  Ten3 dG2(n), dG1(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        dG2(k, i, j) = c2p * g0[k] * gu(i, j) + d2p * g0[k] * g0[i] * g0[j] +
                       d2 * (gu(k, i) * g0[j] + g0[i] * gu(k, j));
        dG1(k, i, j) = c1p * g0[k] * g(i, j) + d1p * g0[k] * p[i] * p[j] +
                       d1 * (kd(k, i) * p[j] + p[i] * kd(k, j));
      }
  (void)c1v;
  (void)c2v;

  ConnectionBlocks out;
  out.Q = Ten3(n);
  out.P = Ten3(n);
  out.S = Ten3(n);
  const Mat& H1 = d.blocks.H1;
  const Mat& H2 = d.blocks.H2;
  const Mat& G2 = d.blocks.G2;

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int h = 0; h < n; ++h) {
        double q = 0.0;
        for (int k = 0; k < n; ++k)
          q += 0.5 * H2(h, k) * (dG2(i, j, k) + dG2(j, i, k) - dG2(k, i, j));
        out.Q(i, j, h) = q;
      }

  for (int h = 0; h < n; ++h)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = 0.0;
        for (int k = 0; k < n; ++k) {
          double inner = dG1(i, j, k);
          for (int l = 0; l < n; ++l) inner -= G2(i, l) * d.r0(l, j, k);
          v += 0.5 * H1(h, k) * inner;
        }
        out.P(h, i, j) = v;

        double s = 0.5 * d.r0(h, i, j);
        for (int k = 0; k < n; ++k) s -= 0.5 * H2(h, k) * dG1(k, i, j);
        out.S(h, i, j) = s;
      }
  return out;
}

ConnectionDerivatives assemble_connection_derivatives(const PointData& d) {
  const int n = d.n;
  const auto& g = d.geo.g;
  const auto& gu = d.geo.g_inv;
  const auto& p = d.p;
  const auto& g0 = d.g0;
  const ConnCoeffs& kc = d.coeffs;
  auto kd = [](int a, int b) { return a == b ? 1.0 : 0.0; };

  ConnectionDerivatives out;
  out.dQ = Ten4(n);
  out.dP = Ten4(n);
  out.dS = Ten4(n);

  // del^k of coefficient(t) = coefficient'(t) g0^k; del^k p_h = d^k_h;
  // del^k g0^i = g^ki.
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          // dQ(k; i=a, j=b, h=c)
          out.dQ(k, a, b, c) =
              kc.q1.d1 * g0[k] * gu(a, b) * p[c] + kc.q1.f * gu(a, b) * kd(k, c) +
              kc.q2.d1 * g0[k] * (kd(c, b) * g0[a] + kd(c, a) * g0[b]) +
              kc.q2.f * (kd(c, b) * gu(k, a) + kd(c, a) * gu(k, b)) +
              kc.q3.d1 * g0[k] * p[c] * g0[a] * g0[b] +
              kc.q3.f * (kd(k, c) * g0[a] * g0[b] + p[c] * gu(k, a) * g0[b] +
                         p[c] * g0[a] * gu(k, b));
          // dP(k; h=a, i=b, j=c)
          out.dP(k, a, b, c) =
              kc.p1.d1 * g0[k] * gu(a, b) * p[c] + kc.p1.f * gu(a, b) * kd(k, c) +
              kc.p2.d1 * g0[k] * kd(b, c) * g0[a] + kc.p2.f * kd(b, c) * gu(k, a) +
              kc.p3.d1 * g0[k] * kd(a, c) * g0[b] + kc.p3.f * kd(a, c) * gu(k, b) +
              kc.p4.d1 * g0[k] * p[c] * g0[a] * g0[b] +
              kc.p4.f * (kd(k, c) * g0[a] * g0[b] + p[c] * gu(k, a) * g0[b] +
                         p[c] * g0[a] * gu(k, b));
          // dS(k; h=a, i=b, j=c)
          out.dS(k, a, b, c) =
              kc.s1.d1 * g0[k] * g(b, c) * p[a] + kc.s1.f * g(b, c) * kd(k, a) +
              kc.s2.d1 * g0[k] * g(a, c) * p[b] + kc.s2.f * g(a, c) * kd(k, b) +
              kc.s3.d1 * g0[k] * g(a, b) * p[c] + kc.s3.f * g(a, b) * kd(k, c) +
              kc.s4.d1 * g0[k] * p[a] * p[b] * p[c] +
              kc.s4.f * (kd(k, a) * p[b] * p[c] + p[a] * kd(k, b) * p[c] +
                         p[a] * p[b] * kd(k, c));
        }
  return out;
}

// Connection table from the closed-form blocks, frame order delta then del.
std::vector<std::vector<AdaptedVector>> closed_connection_table(
    const PointData& d, const ConnectionBlocks& cb) {
  const int n = d.n;
  std::vector<std::vector<AdaptedVector>> table(
      2 * n, std::vector<AdaptedVector>(2 * n, AdaptedVector::zero(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // nabla_{delta_i} delta_j
      AdaptedVector dd = AdaptedVector::zero(n);
      for (int h = 0; h < n; ++h) {
        dd.h[h] = d.geo.gamma(h, i, j);
        dd.v[h] = cb.S(h, i, j);
      }
      table[i][j] = dd;

      // nabla_{delta_i} del^j
      AdaptedVector dp = AdaptedVector::zero(n);
      for (int h = 0; h < n; ++h) {
        dp.h[h] = cb.P(h, j, i);
        dp.v[h] = -d.geo.gamma(j, i, h);
      }
      table[i][n + j] = dp;

      // nabla_{del^i} delta_j
      AdaptedVector pd = AdaptedVector::zero(n);
      for (int h = 0; h < n; ++h) pd.h[h] = cb.P(h, i, j);
      table[n + i][j] = pd;

      // nabla_{del^i} del^j
      AdaptedVector pp = AdaptedVector::zero(n);
      for (int h = 0; h < n; ++h) pp.v[h] = cb.Q(i, j, h);
      table[n + i][n + j] = pp;
    }
  return table;
}

FrameField frame_of(int a, int n) {
  return a < n ? FrameField::delta(a) : FrameField::del(a - n);
}

// 2n x 2n Gram matrix of the adapted frame: blockdiag(G1, G2).
Mat adapted_gram(const StructureBlocks& blocks) {
  const int n = blocks.n;
  Mat gram(2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      gram(i, j) = blocks.G1(i, j);
      gram(n + i, n + j) = blocks.G2(i, j);
    }
  return gram;
}

Vec pack_adapted(const AdaptedVector& x) {
  Vec out;
  out.reserve(x.h.size() + x.v.size());
  out.insert(out.end(), x.h.begin(), x.h.end());
  out.insert(out.end(), x.v.begin(), x.v.end());
  return out;
}

AdaptedVector unpack_adapted(const Vec& x) {
  const int n = static_cast<int>(x.size() / 2);
  AdaptedVector out = AdaptedVector::zero(n);
  for (int i = 0; i < n; ++i) {
    out.h[i] = x[i];
    out.v[i] = x[n + i];
  }
  return out;
}

// Chart representation of the frame field F at (q, p).
Vec frame_chart_direction(const BaseGeometry& geo, const Vec& p,
                          const FrameField& f) {
  const int n = geo.g.dim();
  return adapted_to_chart(geo, p, frame_unit(n, f));
}

std::vector<std::vector<AdaptedVector>> koszul_table_impl(
    const SpaceForm& M, const CoefficientProfile& prof, const Vec& q,
    const Vec& p) {
  const int n = M.n;
  const int m = 2 * n;
  const GeometryFn geometry = closed_form_geometry(M);
  const BaseGeometry geo = geometry(q);
  const StructureBlocks blocks = structure_blocks_from_geometry(geo, prof, p);
  const Mat gram = adapted_gram(blocks);

  double scale = 1.0;
  for (double v : q) scale = std::max(scale, std::abs(v));
  for (double v : p) scale = std::max(scale, std::abs(v));
  const double h = fd_step(scale);

  // Gram matrix of the frame fields at a chart displacement.
  auto gram_at = [&](const Vec& z) {
    const Vec qq(z.begin(), z.begin() + n);
    const Vec pp(z.begin() + n, z.end());
    const BaseGeometry g2 = geometry(qq);
    return adapted_gram(structure_blocks_from_geometry(g2, prof, pp));
  };

  Vec z0(q);
  z0.insert(z0.end(), p.begin(), p.end());

  // dGram[a](b,c) = directional derivative of G(F_b, F_c) along F_a.
  std::vector<Mat> dgram(m, Mat(m));
  for (int a = 0; a < m; ++a) {
    const Vec dir = frame_chart_direction(geo, p, frame_of(a, n));
    auto shift = [&](double s) {
      Vec z = z0;
      for (int i = 0; i < m; ++i) z[i] += s * dir[i];
      return gram_at(z);
    };
    const Mat gp = shift(h), gm = shift(-h);
    const Mat gp2 = shift(h / 2.0), gm2 = shift(-h / 2.0);
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        const double d1 = (gp(b, c) - gm(b, c)) / (2.0 * h);
        const double d2 = (gp2(b, c) - gm2(b, c)) / h;
        dgram[a](b, c) = (4.0 * d2 - d1) / 3.0;
      }
  }

  // Finite-difference frame brackets, antisymmetric.
  CotangentPoint pt{q, p, blocks.t};
  std::vector<std::vector<AdaptedVector>> bracket(
      m, std::vector<AdaptedVector>(m, AdaptedVector::zero(n)));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      bracket[a][b] = frame_bracket_fd(geometry, pt, frame_of(a, n), frame_of(b, n));
      bracket[b][a] = -1.0 * bracket[a][b];
    }

  auto pair_with_frame = [&](const AdaptedVector& u, int c) {
    const Vec packed = pack_adapted(u);
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += gram(c, i) * packed[i];
    return s;
  };

  std::vector<std::vector<AdaptedVector>> table(
      m, std::vector<AdaptedVector>(m, AdaptedVector::zero(n)));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      Vec rhs(m, 0.0);
      for (int c = 0; c < m; ++c) {
        rhs[c] = 0.5 * (dgram[a](b, c) + dgram[b](a, c) - dgram[c](a, b) +
                        pair_with_frame(bracket[a][b], c) -
                        pair_with_frame(bracket[a][c], b) -
                        pair_with_frame(bracket[b][c], a));
      }
      table[a][b] = unpack_adapted(solve_linear(gram, rhs));
    }
  return table;
}

}  // namespace

ConnectionBlocks connection_blocks_at(const SpaceForm& M,
                                      const CoefficientProfile& prof,
                                      const CotangentPoint& pt) {
  const PointData d = point_data(M, prof, pt);
  ConnectionBlocks out = assemble_connection(d);
  const ConnectionBlocks generic = assemble_connection_generic(d, prof);
  const double mismatch =
      std::max({max_abs_diff(out.Q, generic.Q), max_abs_diff(out.P, generic.P),
                max_abs_diff(out.S, generic.S)});
  if (mismatch > 1e-10)
    throw std::logic_error(
        "explicit connection blocks disagree with the generic H-contracted "
        "forms beyond 1e-10");
  return out;
}

double connection_form_residual(const SpaceForm& M,
                                const CoefficientProfile& prof,
                                const CotangentPoint& pt) {
  const PointData d = point_data(M, prof, pt);
  const ConnectionBlocks explicit_blocks = assemble_connection(d);
  const ConnectionBlocks generic = assemble_connection_generic(d, prof);
  return std::max({max_abs_diff(explicit_blocks.Q, generic.Q),
                   max_abs_diff(explicit_blocks.P, generic.P),
                   max_abs_diff(explicit_blocks.S, generic.S)});
}

std::vector<std::vector<AdaptedVector>> connection_table_closed(
    const SpaceForm& M, const CoefficientProfile& prof,
    const CotangentPoint& pt) {
  const PointData d = point_data(M, prof, pt);
  return closed_connection_table(d, assemble_connection(d));
}

ConnectionDerivatives connection_vertical_derivatives_at(
    const SpaceForm& M, const CoefficientProfile& prof,
    const CotangentPoint& pt) {
  return assemble_connection_derivatives(point_data(M, prof, pt));
}

ConnectionDerivatives connection_vertical_derivatives_fd(
    const SpaceForm& M, const CoefficientProfile& prof,
    const CotangentPoint& pt) {
  const int n = M.n;
  ConnectionDerivatives out;
  out.dQ = Ten4(n);
  out.dP = Ten4(n);
  out.dS = Ten4(n);

  double scale = 1.0;
  for (double v : pt.p) scale = std::max(scale, std::abs(v));
  const double h = fd_step(scale);

  for (int k = 0; k < n; ++k) {
    auto blocks_at = [&](double s) {
      Vec p = pt.p;
      p[k] += s;
      const PointData d = point_data(M, prof, {pt.q, p, 0.0});
      return assemble_connection(d);
    };
    const ConnectionBlocks bp = blocks_at(h), bm = blocks_at(-h);
    const ConnectionBlocks bp2 = blocks_at(h / 2.0), bm2 = blocks_at(-h / 2.0);
    auto deriv = [&](const Ten3& tp, const Ten3& tm, const Ten3& tp2,
                     const Ten3& tm2, int a, int b, int c) {
      const double d1 = (tp(a, b, c) - tm(a, b, c)) / (2.0 * h);
      const double d2 = (tp2(a, b, c) - tm2(a, b, c)) / h;
      return (4.0 * d2 - d1) / 3.0;
    };
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          out.dQ(k, a, b, c) = deriv(bp.Q, bm.Q, bp2.Q, bm2.Q, a, b, c);
          out.dP(k, a, b, c) = deriv(bp.P, bm.P, bp2.P, bm2.P, a, b, c);
          out.dS(k, a, b, c) = deriv(bp.S, bm.S, bp2.S, bm2.S, a, b, c);
        }
  }
  return out;
}

std::vector<std::vector<AdaptedVector>> koszul_connection_table(
    const SpaceForm& M, const CoefficientProfile& prof,
    const CotangentPoint& pt) {
  return koszul_table_impl(M, prof, pt.q, pt.p);
}

AdaptedVector koszul_connection_oracle(const SpaceForm& M,
                                       const CoefficientProfile& prof,
                                       const CotangentPoint& pt,
                                       const FrameField& X,
                                       const FrameField& Y) {
  const auto table = koszul_connection_table(M, prof, pt);
  const int n = M.n;
  const int a = X.vertical ? n + X.index : X.index;
  const int b = Y.vertical ? n + Y.index : Y.index;
  return table[a][b];
}

CurvatureBlocks curvature_blocks_at(const SpaceForm& M,
                                    const CoefficientProfile& prof,
                                    const CotangentPoint& pt) {
  const PointData d = point_data(M, prof, pt);
  const int n = d.n;
  const ConnectionBlocks cb = assemble_connection(d);
  const ConnectionDerivatives cd = assemble_connection_derivatives(d);
  const auto& Q = cb.Q;
  const auto& P = cb.P;
  const auto& S = cb.S;

  CurvatureBlocks out;
  out.PPP = Ten4(n);
  out.PPQ = Ten4(n);
  out.QQP = Ten4(n);
  out.QQQ = Ten4(n);
  out.PQQ = Ten4(n);
  out.PQP = Ten4(n);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int h = 0; h < n; ++h) {
          // K(del^i, del^j) del^k
          double ppp = cd.dQ(i, j, k, h) - cd.dQ(j, i, k, h);
          for (int l = 0; l < n; ++l)
            ppp += Q(j, k, l) * Q(i, l, h) - Q(i, k, l) * Q(j, l, h);
          out.PPP(i, j, k, h) = ppp;

          // K(del^i, del^j) delta_k
          double ppq = cd.dP(i, h, j, k) - cd.dP(j, h, i, k);
          for (int l = 0; l < n; ++l)
            ppq += P(l, j, k) * P(h, i, l) - P(l, i, k) * P(h, j, l);
          out.PPQ(i, j, h, k) = ppq;

          // K(delta_i, delta_j) del^k
          double qqp = -d.geo.riemann(k, h, i, j);
          for (int l = 0; l < n; ++l)
            qqp += -d.r0(l, i, j) * Q(l, k, h) + S(h, i, l) * P(l, k, j) -
                   S(h, j, l) * P(l, k, i);
          out.QQP(k, i, j, h) = qqp;

          // K(delta_i, delta_j) delta_k
          double qqq = d.geo.riemann(h, k, i, j);
          for (int l = 0; l < n; ++l)
            qqq += S(l, j, k) * P(h, l, i) - S(l, i, k) * P(h, l, j) -
                   d.r0(l, i, j) * P(h, l, k);
          out.QQQ(i, j, k, h) = qqq;

          // K(del^i, delta_j) delta_k
          double pqq = cd.dS(i, h, j, k);
          for (int l = 0; l < n; ++l)
            pqq += S(l, j, k) * Q(i, l, h) - S(h, j, l) * P(l, i, k);
          out.PQQ(i, j, k, h) = pqq;

          // K(del^i, delta_j) del^k
          double pqp = cd.dP(i, h, k, j);
          for (int l = 0; l < n; ++l)
            pqp += P(h, i, l) * P(l, k, j) - Q(i, k, l) * P(h, l, j);
          out.PQP(j, i, k, h) = pqp;
        }
  return out;
}

CurvatureOracleResult curvature_fd_oracle(const SpaceForm& M,
                                          const CoefficientProfile& prof,
                                          const CotangentPoint& pt) {
  const int n = M.n;
  const int m = 2 * n;
  const GeometryFn geometry = closed_form_geometry(M);
  const BaseGeometry geo = base_geometry_at(M, pt.q);

  double scale = 1.0;
  for (double v : pt.q) scale = std::max(scale, std::abs(v));
  for (double v : pt.p) scale = std::max(scale, std::abs(v));
  const double H = 5e-4 * scale;

  const auto t0 = koszul_table_impl(M, prof, pt.q, pt.p);

  // Koszul tables displaced along each frame direction.
  std::vector<std::vector<std::vector<AdaptedVector>>> tp(m), tm(m);
  for (int a = 0; a < m; ++a) {
    const Vec dir = frame_chart_direction(geo, pt.p, frame_of(a, n));
    auto displaced = [&](double s) {
      Vec q = pt.q, p = pt.p;
      for (int i = 0; i < n; ++i) {
        q[i] += s * dir[i];
        p[i] += s * dir[n + i];
      }
      return koszul_table_impl(M, prof, q, p);
    };
    tp[a] = displaced(H);
    tm[a] = displaced(-H);
  }

  CotangentPoint pt0 = pt;
  std::vector<std::vector<AdaptedVector>> bracket(
      m, std::vector<AdaptedVector>(m, AdaptedVector::zero(n)));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      bracket[a][b] =
          frame_bracket_fd(geometry, pt0, frame_of(a, n), frame_of(b, n));
      bracket[b][a] = -1.0 * bracket[a][b];
    }

  // nabla_A (nabla_B F_C) = sum_b d/dA(w_b) F_b + w_b nabla_A F_b with
  // w = table[B][C] components.
  auto covariant_of_table = [&](int A, int B, int C) {
    AdaptedVector out = AdaptedVector::zero(n);
    const AdaptedVector w0 = t0[B][C];
    for (int b = 0; b < m; ++b) {
      const AdaptedVector& wp = tp[A][B][C];
      const AdaptedVector& wm = tm[A][B][C];
      const double dwb =
          ((b < n ? wp.h[b] : wp.v[b - n]) - (b < n ? wm.h[b] : wm.v[b - n])) /
          (2.0 * H);
      if (b < n)
        out.h[b] += dwb;
      else
        out.v[b - n] += dwb;
      const double w0b = b < n ? w0.h[b] : w0.v[b - n];
      if (w0b != 0.0) out = out + w0b * t0[A][b];
    }
    return out;
  };

  auto khat = [&](int A, int B, int C) {
    AdaptedVector k = covariant_of_table(A, B, C) - covariant_of_table(B, A, C);
    const AdaptedVector& br = bracket[A][B];
    for (int b = 0; b < m; ++b) {
      const double cb = b < n ? br.h[b] : br.v[b - n];
      if (cb != 0.0) k = k - cb * t0[b][C];
    }
    return k;
  };

  CurvatureOracleResult res;
  res.blocks.PPP = Ten4(n);
  res.blocks.PPQ = Ten4(n);
  res.blocks.QQP = Ten4(n);
  res.blocks.QQQ = Ten4(n);
  res.blocks.PQQ = Ten4(n);
  res.blocks.PQP = Ten4(n);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const AdaptedVector ppp = khat(n + i, n + j, n + k);
        const AdaptedVector ppq = khat(n + i, n + j, k);
        const AdaptedVector qqp = khat(i, j, n + k);
        const AdaptedVector qqq = khat(i, j, k);
        const AdaptedVector pqq = khat(n + i, j, k);
        const AdaptedVector pqp = khat(n + i, j, n + k);
        for (int h = 0; h < n; ++h) {
          res.blocks.PPP(i, j, k, h) = ppp.v[h];
          res.blocks.PPQ(i, j, h, k) = ppq.h[h];
          res.blocks.QQP(k, i, j, h) = qqp.v[h];
          res.blocks.QQQ(i, j, k, h) = qqq.h[h];
          res.blocks.PQQ(i, j, k, h) = pqq.v[h];
          res.blocks.PQP(j, i, k, h) = pqp.h[h];
        }
        res.off_block_max = std::max(
            {res.off_block_max, max_abs(ppp.h), max_abs(ppq.v), max_abs(qqp.h),
             max_abs(qqq.v), max_abs(pqq.h), max_abs(pqp.v)});
      }

  // Mixed Ricci trace Ric(del^j, delta_k): lives entirely in components the
  // block structure says vanish.
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int h = 0; h < n; ++h) {
        s += khat(n + h, n + j, k).v[h];
        s += khat(h, n + j, k).h[h];
      }
      res.mixed_ricci_max = std::max(res.mixed_ricci_max, std::abs(s));
    }
  return res;
}

RicciBlocks ricci_from_blocks(const CurvatureBlocks& blocks) {
  const int n = blocks.PPP.dim();
  RicciBlocks out;
  out.RicPP = Mat(n);
  out.RicQQ = Mat(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double pp = 0.0, qq = 0.0;
      for (int h = 0; h < n; ++h) {
        pp += blocks.PPP(h, j, k, h) - blocks.PQP(h, j, k, h);
        qq += blocks.QQQ(h, j, k, h) + blocks.PQQ(h, j, k, h);
      }
      out.RicPP(j, k) = pp;
      out.RicQQ(j, k) = qq;
    }
  out.mixed_max = 0.0;  // structurally zero in the block assembly
  return out;
}

RicciBlocks ricci_blocks_at(const SpaceForm& M, const CoefficientProfile& prof,
                            const CotangentPoint& pt) {
  return ricci_from_blocks(curvature_blocks_at(M, prof, pt));
}

double einstein_factor(const CoefficientProfile& prof, double t, int n) {
  const Jet a1 = prof.a1_jet(t);
  const Jet lam = prof.lambda_jet(t);
  const double a = a1.f, ap = a1.d1, app = a1.d2;
  const double l = lam.f, lp = lam.d1, lpp = lam.d2;
  const double c = prof.c;

  const double den_a = a - 2.0 * ap * t;
  const double den_l = l + 2.0 * lp * t;
  if (std::abs(den_a) <= kSingularGuard) throw SingularProfile(t, "a1 - 2t a1'");
  if (std::abs(l) <= kSingularGuard) throw SingularProfile(t, "lambda");
  if (std::abs(den_l) <= kSingularGuard)
    throw SingularProfile(t, "lambda + 2t lambda'");

  const double term1 =
      -n *
      (a * a * ap * l - 2.0 * a * c * l + a * a * a * lp + 2.0 * ap * c * l * t -
       2.0 * a * c * lp * t) /
      (2.0 * a * l * l * den_a);

  const double bracket =
      a * ap * l * l + a * a * l * lp - ap * ap * l * l * t +
      a * app * l * l * t - a * a * lp * lp * t + a * a * l * lpp * t -
      2.0 * ap * ap * l * lp * t * t + 2.0 * a * app * l * lp * t * t +
      2.0 * a * ap * lp * lp * t * t - 2.0 * a * ap * l * lpp * t * t;

  const double term2 =
      -(a * a - 2.0 * c * t) * bracket / (a * l * l * den_a * den_a * den_l);

  return term1 + term2;
}

EinsteinResidual einstein_residual_at(const SpaceForm& M,
                                      const CoefficientProfile& prof,
                                      const CotangentPoint& pt) {
  const StructureBlocks blocks = structure_blocks_at(M, prof, pt);
  const RicciBlocks ric = ricci_blocks_at(M, prof, pt);
  const double ef = einstein_factor(prof, blocks.t, M.n);

  const int n = M.n;
  EinsteinResidual out;
  out.diff_qq = Mat(n);
  out.diff_pp = Mat(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      out.diff_qq(j, k) = ric.RicQQ(j, k) - ef * blocks.G1(j, k);
      out.diff_pp(j, k) = ric.RicPP(j, k) - ef * blocks.G2(j, k);
    }
  return out;
}

double cn_at(const CoefficientProfile& prof, double t) {
  const Jet a1 = prof.a1_jet(t);
  const Jet lam = prof.lambda_jet(t);
  const double a = a1.f, ap = a1.d1, app = a1.d2;
  const double l = lam.f, lp = lam.d1, lpp = lam.d2;
  const double c = prof.c;

  const double pre = (a - 2.0 * ap * t) * (a * a - 2.0 * c * t) *
                     (l + 2.0 * lp * t) * (l + 2.0 * lp * t);
  const double bracket =
      2.0 * a * ap * ap * l * l + a * a * app * l * l +
      2.0 * a * a * ap * l * lp - 2.0 * a * a * a * lp * lp +
      a * a * a * l * lpp - 2.0 * ap * ap * ap * l * l * t -
      2.0 * a * ap * ap * l * lp * t + 2.0 * a * a * app * l * lp * t +
      4.0 * a * a * ap * lp * lp * t - 2.0 * a * a * ap * l * lpp * t;
  return -pre * bracket;
}

CurvatureBlocks holomorphic_model_blocks_at(const SpaceForm& M,
                                            const CoefficientProfile& prof,
                                            const CotangentPoint& pt,
                                            double k_hol) {
  const StructureBlocks b = structure_blocks_at(M, prof, pt);
  const int n = M.n;
  const double q = 0.25 * k_hol;
  auto kd = [](int a, int bb) { return a == bb ? 1.0 : 0.0; };

  CurvatureBlocks out;
  out.PPP = Ten4(n);
  out.PPQ = Ten4(n);
  out.QQP = Ten4(n);
  out.QQQ = Ten4(n);
  out.PQQ = Ten4(n);
  out.PQP = Ten4(n);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int h = 0; h < n; ++h) {
          out.QQQ(i, j, k, h) = q * (b.G1(j, k) * kd(h, i) - b.G1(i, k) * kd(h, j));
          out.PPP(i, j, k, h) = q * (b.G2(k, j) * kd(h, i) - b.G2(k, i) * kd(h, j));

          double qqp = 0.0, ppq = 0.0, pqp = 0.0, pqq = 0.0;
          for (int l = 0; l < n; ++l) {
            qqp += (b.J1(i, h) * b.J1(j, l) - b.J1(i, l) * b.J1(j, h)) * b.G2(k, l);
            ppq += (b.J2(i, h) * b.J2(j, l) - b.J2(i, l) * b.J2(j, h)) * b.G1(k, l);
            pqp += -b.J1(j, l) * b.J2(i, h) * b.G2(k, l) -
                   2.0 * b.J1(j, l) * b.J2(k, h) * b.G2(i, l);
            pqq += b.G1(k, l) * b.J2(i, l) * b.J1(j, h) +
                   2.0 * b.G2(i, l) * b.J1(j, l) * b.J1(k, h);
          }
          pqp -= b.G2(k, i) * kd(h, j);
          pqq += b.G1(k, j) * kd(h, i);

          out.QQP(k, i, j, h) = q * qqp;
          out.PPQ(i, j, h, k) = q * ppq;
          out.PQP(j, i, k, h) = q * pqp;
          out.PQQ(i, j, k, h) = q * pqq;
        }
  return out;
}

std::array<double, 6> holomorphic_residual_at(const SpaceForm& M,
                                              const CoefficientProfile& prof,
                                              const CotangentPoint& pt,
                                              double k_hol) {
  const CurvatureBlocks actual = curvature_blocks_at(M, prof, pt);
  const CurvatureBlocks model = holomorphic_model_blocks_at(M, prof, pt, k_hol);
  return {max_abs_diff(actual.PPP, model.PPP), max_abs_diff(actual.PPQ, model.PPQ),
          max_abs_diff(actual.QQP, model.QQP), max_abs_diff(actual.QQQ, model.QQQ),
          max_abs_diff(actual.PQQ, model.PQQ), max_abs_diff(actual.PQP, model.PQP)};
}

namespace {

// K(F_A, F_B) F_C assembled from the six blocks; components outside the
// blocks vanish identically for a diagonal lift.
AdaptedVector khat_from_blocks(const CurvatureBlocks& blocks, int n, int A,
                               int B, int C) {
  AdaptedVector out = AdaptedVector::zero(n);
  const bool av = A >= n, bv = B >= n, cv = C >= n;
  const int i = av ? A - n : A, j = bv ? B - n : B, k = cv ? C - n : C;
  if (av && bv) {
    if (cv)
      for (int h = 0; h < n; ++h) out.v[h] = blocks.PPP(i, j, k, h);
    else
      for (int h = 0; h < n; ++h) out.h[h] = blocks.PPQ(i, j, h, k);
  } else if (!av && !bv) {
    if (cv)
      for (int h = 0; h < n; ++h) out.v[h] = blocks.QQP(k, i, j, h);
    else
      for (int h = 0; h < n; ++h) out.h[h] = blocks.QQQ(i, j, k, h);
  } else if (av && !bv) {
    if (cv)
      for (int h = 0; h < n; ++h) out.h[h] = blocks.PQP(j, i, k, h);
    else
      for (int h = 0; h < n; ++h) out.v[h] = blocks.PQQ(i, j, k, h);
  } else {
    out = -1.0 * khat_from_blocks(blocks, n, B, A, C);
  }
  return out;
}

}  // namespace

double first_bianchi_residual(const CurvatureBlocks& blocks) {
  const int n = blocks.PPP.dim();
  const int m = 2 * n;
  double worst = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        const AdaptedVector cyc = khat_from_blocks(blocks, n, a, b, c) +
                                  khat_from_blocks(blocks, n, b, c, a) +
                                  khat_from_blocks(blocks, n, c, a, b);
        worst = std::max(worst, max_abs(cyc));
      }
  return worst;
}

double metric_compatibility_residual(const SpaceForm& M,
                                     const CoefficientProfile& prof,
                                     const CotangentPoint& pt) {
  const int n = M.n;
  const int m = 2 * n;
  const PointData d = point_data(M, prof, pt);
  const ConnectionBlocks cb = assemble_connection(d);
  const auto table = closed_connection_table(d, cb);
  const Mat gram = adapted_gram(d.blocks);

  double scale = 1.0;
  for (double v : pt.q) scale = std::max(scale, std::abs(v));
  for (double v : pt.p) scale = std::max(scale, std::abs(v));
  const double h = fd_step(scale);

  const GeometryFn geometry = closed_form_geometry(M);
  auto gram_at = [&](const Vec& z) {
    const Vec qq(z.begin(), z.begin() + n);
    const Vec pp(z.begin() + n, z.end());
    return adapted_gram(
        structure_blocks_from_geometry(geometry(qq), prof, pp));
  };
  Vec z0(pt.q);
  z0.insert(z0.end(), pt.p.begin(), pt.p.end());

  auto pair_with = [&](const AdaptedVector& u, int c) {
    const Vec packed = pack_adapted(u);
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += gram(c, i) * packed[i];
    return s;
  };

  double worst = 0.0;
  for (int a = 0; a < m; ++a) {
    const Vec dir = frame_chart_direction(d.geo, pt.p, frame_of(a, n));
    auto shift = [&](double s) {
      Vec z = z0;
      for (int i = 0; i < m; ++i) z[i] += s * dir[i];
      return gram_at(z);
    };
    const Mat gp = shift(h), gm = shift(-h);
    const Mat gp2 = shift(h / 2.0), gm2 = shift(-h / 2.0);
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        const double d1 = (gp(b, c) - gm(b, c)) / (2.0 * h);
        const double d2 = (gp2(b, c) - gm2(b, c)) / h;
        const double dg = (4.0 * d2 - d1) / 3.0;
        const double resid =
            dg - pair_with(table[a][b], c) - pair_with(table[a][c], b);
        worst = std::max(worst, std::abs(resid));
      }
  }
  return worst;
}

double torsion_residual(const SpaceForm& M, const CoefficientProfile& prof,
                        const CotangentPoint& pt) {
  const int n = M.n;
  const int m = 2 * n;
  const PointData d = point_data(M, prof, pt);
  const ConnectionBlocks cb = assemble_connection(d);
  const auto table = closed_connection_table(d, cb);
  const GeometryFn geometry = closed_form_geometry(M);

  double worst = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const AdaptedVector br =
          frame_bracket_fd(geometry, pt, frame_of(a, n), frame_of(b, n));
      const AdaptedVector resid = table[a][b] - table[b][a] - br;
      worst = std::max(worst, max_abs(resid));
    }
  return worst;
}

}  // namespace ctlift
