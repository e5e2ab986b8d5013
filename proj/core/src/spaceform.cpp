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

#include "ctlift/spaceform.hpp"

#include <cmath>

#include "ctlift/fd.hpp"

namespace ctlift {

namespace {

double norm2(const Vec& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

// Conformal factor f(x) = 1 + (c/4)|x|^2; the metric is delta / f^2.
double conformal_factor(const SpaceForm& M, const Vec& x) {
  return 1.0 + 0.25 * M.c * norm2(x);
}

void check_in_chart(const SpaceForm& M, const Vec& x) {
  if (static_cast<int>(x.size()) != M.n)
    throw std::invalid_argument("coordinate vector length does not match n");
  const double r = std::sqrt(norm2(x));
  if (r >= M.chart_radius) throw OutOfChart(r, M.chart_radius);
  if (conformal_factor(M, x) <= 0.0) throw OutOfChart(r, M.chart_radius);
}

Mat metric_at(const SpaceForm& M, const Vec& x) {
  const double f = conformal_factor(M, x);
  Mat g(M.n);
  const double s = 1.0 / (f * f);
  for (int i = 0; i < M.n; ++i) g(i, i) = s;
  return g;
}

}  // namespace

SpaceForm::SpaceForm(int n_, double c_, double chart_radius_)
    : n(n_), c(c_), chart_radius(chart_radius_) {
  if (n < 2) throw std::invalid_argument("SpaceForm requires n >= 2");
  if (chart_radius <= 0.0)
    throw std::invalid_argument("SpaceForm requires chart_radius > 0");
  // For c < 0 the conformal factor 1 + (c/4)r^2 must stay positive on the
  // chart, i.e. r^2 < 4/|c|.
  if (c < 0.0 && chart_radius * chart_radius >= 4.0 / std::abs(c))
    throw std::invalid_argument(
        "SpaceForm with c < 0 requires chart_radius^2 < 4/|c|");
}

SpaceForm SpaceForm::with_default_radius(int n, double c) {
  double r = 1.0;
  if (c < 0.0) r = std::min(1.0, 0.9 * 2.0 / std::sqrt(std::abs(c)));
  return SpaceForm(n, c, r);
}

BaseGeometry base_geometry_at(const SpaceForm& M, const Vec& x) {
  check_in_chart(M, x);
  const int n = M.n;
  const double f = conformal_factor(M, x);
  const double inv_f2 = 1.0 / (f * f);

  BaseGeometry out;
  out.g = Mat(n);
  out.g_inv = Mat(n);
  for (int i = 0; i < n; ++i) {
    out.g(i, i) = inv_f2;
    out.g_inv(i, i) = f * f;
  }

  // For g = e^{2phi} delta with phi = -log f:
  //   Gamma^k_ij = d_i(phi) delta^k_j + d_j(phi) delta^k_i - d_k(phi) delta_ij
  // and d_i(phi) = -(c/2) x_i / f.
  out.gamma = Ten3(n);
  const double a = -0.5 * M.c / f;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = 0.0;
        if (k == i) v += a * x[j];
        if (k == j) v += a * x[i];
        if (i == j) v -= a * x[k];
        out.gamma(k, i, j) = v;
      }

  // R^h_kij = c (delta^h_i g_kj - delta^h_j g_ki), the constant-curvature
  // identity the chart realizes.
  out.riemann = Ten4(n);
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = 0.0;
          if (h == i) v += M.c * out.g(k, j);
          if (h == j) v -= M.c * out.g(k, i);
          out.riemann(h, k, i, j) = v;
        }
  return out;
}

BaseGeometry fd_geometry_from_metric(const MetricFn& metric, const Vec& x) {
  const int n = static_cast<int>(x.size());

  BaseGeometry out;
  out.g = metric(x);
  out.g_inv = invert(out.g);

  // dg[k](i,j) = partial_k g_ij by central differences.
  auto metric_derivatives = [&](const Vec& at) {
    std::vector<Mat> dg(n, Mat(n));
    for (int k = 0; k < n; ++k) {
      Vec dir(n, 0.0);
      dir[k] = 1.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          auto entry = [&](const Vec& y) { return metric(y)(i, j); };
          dg[k](i, j) = directional_derivative(entry, at, dir, fd_step(at[k]));
        }
    }
    return dg;
  };

  auto christoffel_at = [&](const Vec& at) {
    const Mat g_inv = invert(metric(at));
    const std::vector<Mat> dg = metric_derivatives(at);
    Ten3 gamma(n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l)
            s += 0.5 * g_inv(k, l) * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
          gamma(k, i, j) = s;
        }
    return gamma;
  };

  out.gamma = christoffel_at(x);

  // R^m_kij = d_i Gamma^m_jk - d_j Gamma^m_ik
  //           + Gamma^m_ih Gamma^h_jk - Gamma^m_jh Gamma^h_ik.
  // The Christoffel evaluations are themselves finite differences, so the
  // outer step is widened to keep the stacked error near 1e-7.
  const double H = 5e-4 * std::max(1.0, std::sqrt(norm2(x)));
  std::vector<Ten3> dgamma(n);
  for (int k = 0; k < n; ++k) {
    Vec xp = x, xm = x;
    xp[k] += H;
    xm[k] -= H;
    const Ten3 gp = christoffel_at(xp), gm = christoffel_at(xm);
    dgamma[k] = Ten3(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d)
          dgamma[k](a, b, d) = (gp(a, b, d) - gm(a, b, d)) / (2.0 * H);
  }

  out.riemann = Ten4(n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double v = dgamma[i](m, j, k) - dgamma[j](m, i, k);
          for (int h = 0; h < n; ++h)
            v += out.gamma(m, i, h) * out.gamma(h, j, k) -
                 out.gamma(m, j, h) * out.gamma(h, i, k);
          out.riemann(m, k, i, j) = v;
        }
  return out;
}

BaseGeometry base_geometry_fd_oracle(const SpaceForm& M, const Vec& x) {
  check_in_chart(M, x);
  double hmax = fd_step(0.0);
  for (double xi : x) hmax = std::max(hmax, fd_step(xi));
  const double r = std::sqrt(norm2(x));
  if (r + 2.0 * hmax >= M.chart_radius)
    throw OutOfChart(r + 2.0 * hmax, M.chart_radius);
  return fd_geometry_from_metric(
      [&M](const Vec& y) { return metric_at(M, y); }, x);
}

double covariant_constancy_residual(const SpaceForm& M, const Vec& x) {
  const int n = M.n;
  const BaseGeometry geo = base_geometry_at(M, x);
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    Vec dir(n, 0.0);
    dir[k] = 1.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto entry = [&](const Vec& y) { return metric_at(M, y)(i, j); };
        double v = directional_derivative(entry, x, dir, fd_step(x[k]));
        for (int l = 0; l < n; ++l)
          v -= geo.gamma(l, k, i) * geo.g(l, j) +
               geo.gamma(l, k, j) * geo.g(i, l);
        worst = std::max(worst, std::abs(v));
      }
  }
  return worst;
}

}  // namespace ctlift
