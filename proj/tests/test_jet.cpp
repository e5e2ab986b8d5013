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

#include "ctlift/jet.hpp"

using ctlift::Jet;

namespace {

// Composite exercising product, quotient and sqrt rules at once:
//   f(t) = (1 + sqrt(1 + 2t)) / (t^2 + 3t + 2)
Jet composite(double t) {
  const Jet tv = Jet::variable(t);
  return (1.0 + sqrt(1.0 + 2.0 * tv)) / (tv * tv + 3.0 * tv + 2.0);
}

double composite_value(double t) {
  return (1.0 + std::sqrt(1.0 + 2.0 * t)) / (t * t + 3.0 * t + 2.0);
}

// Five-point central stencils on the exact value function.
double fd1(double t, double h) {
  return (composite_value(t - 2 * h) - 8 * composite_value(t - h) +
          8 * composite_value(t + h) - composite_value(t + 2 * h)) /
         (12 * h);
}
double fd2(double t, double h) {
  return (-composite_value(t - 2 * h) + 16 * composite_value(t - h) -
          30 * composite_value(t) + 16 * composite_value(t + h) -
          composite_value(t + 2 * h)) /
         (12 * h * h);
}
double fd3(double t, double h) {
  return (-composite_value(t - 2 * h) + 2 * composite_value(t - h) -
          2 * composite_value(t + h) + composite_value(t + 2 * h)) /
         (2 * h * h * h);
}

}  // namespace

TEST_CASE("jet arithmetic matches finite differences through third order") {
  for (double t : {0.0, 0.5, 1.3, 4.0}) {
    const Jet j = composite(t);
    CHECK(j.f == doctest::Approx(composite_value(t)).epsilon(1e-14));
    CHECK(j.d1 == doctest::Approx(fd1(t, 1e-3)).epsilon(1e-8));
    CHECK(j.d2 == doctest::Approx(fd2(t, 1e-3)).epsilon(1e-6));
    CHECK(j.d3 == doctest::Approx(fd3(t, 2e-3)).epsilon(1e-4));
  }
}

TEST_CASE("jet constants and the variable") {
  const Jet c = Jet::constant(7.5);
  CHECK(c.f == 7.5);
  CHECK(c.d1 == 0.0);
  CHECK(c.d2 == 0.0);
  CHECK(c.d3 == 0.0);

  const Jet t = Jet::variable(2.0);
  const Jet t3 = t * t * t;
  CHECK(t3.f == 8.0);
  CHECK(t3.d1 == 12.0);
  CHECK(t3.d2 == 12.0);
  CHECK(t3.d3 == 6.0);
}

TEST_CASE("jet derivative shifts slots") {
  const Jet t = Jet::variable(3.0);
  const Jet f = t * t * t * t;  // t^4: only three derivative slots survive
  const Jet fp = f.derivative();
  CHECK(fp.f == 4.0 * 27.0);
  CHECK(fp.d1 == 12.0 * 9.0);
  CHECK(fp.d2 == 24.0 * 3.0);
}

TEST_CASE("jet guards reject singular inputs") {
  CHECK_THROWS_AS((void)(Jet::variable(1.0) / Jet::constant(0.0)),
                  std::domain_error);
  CHECK_THROWS_AS((void)sqrt(Jet::constant(-1.0)), std::domain_error);
}
