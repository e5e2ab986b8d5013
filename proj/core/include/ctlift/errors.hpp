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

#pragma once

#include <stdexcept>
#include <string>

namespace ctlift {

// A coefficient denominator fell inside the singularity guard.  Carries the
// evaluation parameter and which denominator tripped.
class SingularProfile : public std::domain_error {
 public:
  SingularProfile(double t, std::string denominator)
      : std::domain_error("singular profile at t=" + std::to_string(t) +
                          ": denominator " + denominator +
                          " inside guard band"),
        t_(t),
        denominator_(std::move(denominator)) {}

  double t() const { return t_; }
  const std::string& denominator() const { return denominator_; }

 private:
  double t_;
  std::string denominator_;
};

// A case-profile constructor was handed parameters violating its sign
// preconditions; the message names the violated inequality.
class InvalidCaseParams : public std::invalid_argument {
 public:
  explicit InvalidCaseParams(const std::string& violated_inequality)
      : std::invalid_argument("invalid case parameters: requires " +
                              violated_inequality) {}
};

// A base-manifold point left the admissible coordinate ball.
class OutOfChart : public std::domain_error {
 public:
  OutOfChart(double coordinate_norm, double chart_radius)
      : std::domain_error("point with |x| = " + std::to_string(coordinate_norm) +
                          " outside chart of radius " +
                          std::to_string(chart_radius)),
        norm_(coordinate_norm) {}

  double coordinate_norm() const { return norm_; }

 private:
  double norm_;
};

}  // namespace ctlift
