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

#include <doctest.h>

#include <cmath>
#include <random>

#include "ctlift/spaceform.hpp"

using namespace ctlift;

namespace {

// Deterministic in-chart coordinates for the property checks.
std::vector<Vec> chart_points(const SpaceForm& M, int count,
                              std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  auto unit = [&] { return static_cast<double>(eng() >> 11) * 0x1.0p-53; };
  std::vector<Vec> pts;
  while (static_cast<int>(pts.size()) < count) {
    Vec x(M.n);
    double r2 = 0.0;
    for (int i = 0; i < M.n; ++i) {
      x[i] = (2.0 * unit() - 1.0) * 0.4 * M.chart_radius;
      r2 += x[i] * x[i];
    }
    if (r2 < 0.16 * M.chart_radius * M.chart_radius) pts.push_back(x);
  }
  return pts;
}

}  // namespace

TEST_CASE("flat chart is Euclidean") {
  const SpaceForm M(2, 0.0, 1.0);
  const BaseGeometry geo = base_geometry_at(M, {0.3, -0.1});
  CHECK(identity_residual(geo.g, Mat::identity(2)) == 0.0);
  CHECK(max_abs(geo.gamma) == 0.0);
  CHECK(max_abs(geo.riemann) == 0.0);
}

TEST_CASE("unit curvature at the origin") {
  const SpaceForm M(2, 1.0, 1.0);
  const BaseGeometry geo = base_geometry_at(M, {0.0, 0.0});
  CHECK(geo.g(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(geo.g(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(max_abs(geo.gamma) == 0.0);
  // R^1_212 = c (d^1_1 g_22 - d^1_2 g_21) = 1 at the origin (0-based: 0,1,0,1)
  CHECK(geo.riemann(0, 1, 0, 1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("conformal factor scales the metric at |x|^2 = 4") {
  const SpaceForm M(2, 1.0, 2.5);
  const BaseGeometry geo = base_geometry_at(M, {2.0, 0.0});
  CHECK(geo.g(0, 0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(geo.g(1, 1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(geo.g_inv(0, 0) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("constant-curvature identity and antisymmetry hold on the chart") {
  for (double c : {-1.0, 0.0, 1.0})
    for (int n : {2, 3}) {
      const SpaceForm M = SpaceForm::with_default_radius(n, c);
      for (const Vec& x : chart_points(M, 5, 77)) {
        const BaseGeometry geo = base_geometry_at(M, x);
        double worst = 0.0;
        for (int h = 0; h < n; ++h)
          for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
              for (int j = 0; j < n; ++j) {
                const double expect = c * ((h == i ? geo.g(k, j) : 0.0) -
                                           (h == j ? geo.g(k, i) : 0.0));
                worst = std::max(worst,
                                 std::abs(geo.riemann(h, k, i, j) - expect));
                worst = std::max(worst, std::abs(geo.riemann(h, k, i, j) +
                                                 geo.riemann(h, k, j, i)));
              }
        CHECK(worst < 1e-9);
      }
    }
}

TEST_CASE("finite-difference oracle agrees with the closed forms") {
  // 100 seeded points spread over c in {-1, 0, 1} and n in {2, 3, 5}.
  int checked = 0;
  for (double c : {-1.0, 0.0, 1.0})
    for (int n : {2, 3, 5}) {
      const SpaceForm M = SpaceForm::with_default_radius(n, c);
      for (const Vec& x : chart_points(M, 12, 1234 + n)) {
        const BaseGeometry closed = base_geometry_at(M, x);
        const BaseGeometry fd = base_geometry_fd_oracle(M, x);
        CHECK(rel_residual(closed.gamma, fd.gamma) < 1e-6);
        CHECK(rel_residual(closed.riemann, fd.riemann) < 1e-6);
        ++checked;
      }
    }
  CHECK(checked >= 100);
}

TEST_CASE("flat oracle Christoffels vanish") {
  const SpaceForm M(2, 0.0, 1.0);
  const BaseGeometry fd = base_geometry_fd_oracle(M, {0.3, -0.1});
  CHECK(max_abs(fd.gamma) < 1e-10);
}

TEST_CASE("hyperbolic oracle satisfies the curvature identity") {
  const SpaceForm M(2, -1.0, 1.8);
  const Vec x{0.5, 0.5};
  const BaseGeometry fd = base_geometry_fd_oracle(M, x);
  const BaseGeometry closed = base_geometry_at(M, x);
  CHECK(rel_residual(fd.riemann, closed.riemann) < 1e-6);
}

TEST_CASE("metric is covariantly constant") {
  for (double c : {-1.0, 1.0}) {
    const SpaceForm M = SpaceForm::with_default_radius(3, c);
    for (const Vec& x : chart_points(M, 5, 99))
      CHECK(covariant_constancy_residual(M, x) < 1e-8);
  }
}

TEST_CASE("g g_inv stays near the identity across the chart") {
  const SpaceForm M = SpaceForm::with_default_radius(5, -1.0);
  for (const Vec& x : chart_points(M, 10, 5))
    CHECK(identity_residual(base_geometry_at(M, x).g,
                            base_geometry_at(M, x).g_inv) < 1e-12);
}

TEST_CASE("chart domain errors") {
  const SpaceForm M(2, 1.0, 1.0);
  CHECK_THROWS_AS((void)base_geometry_at(M, {1.5, 0.0}), OutOfChart);
  // FD oracle needs margin inside the radius.
  CHECK_THROWS_AS((void)base_geometry_fd_oracle(M, {0.9999999, 0.0}),
                  OutOfChart);
}

TEST_CASE("space form invariants are enforced") {
  CHECK_THROWS_AS(SpaceForm(1, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SpaceForm(2, -1.0, 2.5), std::invalid_argument);
  CHECK_NOTHROW(SpaceForm(2, -1.0, 1.9));
}
