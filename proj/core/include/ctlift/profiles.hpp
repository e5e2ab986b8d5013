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

//! \file profiles.hpp
//! The two essential coefficient functions a1(t), lambda(t) of a diagonal
//! lift, and everything derived from them:
//!
//!   a2 = 1/a1                      b2 = -b1 / (a1 (a1 + 2 t b1))
//!   b1 = (a1 a1' - c) / (a1 - 2 t a1')        (the integrable choice)
//!   c1 = lambda a1                 c2 = lambda a2
//!   d1 = lambda b1 + mu (a1 + 2 t b1)
//!   d2 = lambda b2 + mu (a2 + 2 t b2)         with mu = lambda'
//!
//! Profiles evaluate to order-3 jets, so all derivative fields the
//! connection and curvature assemblies consume come from exact chain rules.
//! Two deliberate-violation knobs exist for negative testing: b1_offset
//! shifts b1 away from the integrable value, mu_offset shifts mu away from
//! lambda'.  Both keep the almost-complex and Hermitian identities intact.

#pragma once

#include <string>
#include <vector>

#include "ctlift/errors.hpp"
#include "ctlift/jet.hpp"

namespace ctlift {

// Absolute guard band on the denominators a1 - 2t a1' and a1^2 - 2ct; inside
// it the profile is treated as singular and evaluation fails loudly.
inline constexpr double kSingularGuard = 1e-8;

enum class CaseTag { Case1, Case2, Case3, Custom };

std::string to_string(CaseTag tag);

struct CaseParams {
  double B = 0.0;
  double k = 0.0;
};

struct CoefficientProfile {
  double c = 0.0;  // base curvature, copied from the space form at binding
  CaseTag case_tag = CaseTag::Custom;
  CaseParams params;

  // Violation knobs; zero for honest profiles.
  double b1_offset = 0.0;
  double mu_offset = 0.0;

  JetFn a1_fn;
  JetFn lambda_fn;

  Jet a1_jet(double t) const { return a1_fn(t); }
  Jet lambda_jet(double t) const { return lambda_fn(t); }

  double a1(double t) const { return a1_fn(t).f; }
  double a1_p(double t) const { return a1_fn(t).d1; }
  double a1_pp(double t) const { return a1_fn(t).d2; }
  double lambda(double t) const { return lambda_fn(t).f; }
  double lambda_p(double t) const { return lambda_fn(t).d1; }
  double lambda_pp(double t) const { return lambda_fn(t).d2; }
};

// All coefficients a diagonal lift needs at one energy density, with the
// t-derivatives used by the connection blocks (first order) and the
// curvature blocks (second order).
struct DerivedCoefficients {
  double t = 0.0;
  double a1 = 0, a2 = 0, b1 = 0, b2 = 0;
  double c1 = 0, c2 = 0, d1 = 0, d2 = 0;
  double lambda = 0, mu = 0;
  double b1_p = 0, c1_p = 0, c2_p = 0, d1_p = 0, d2_p = 0;
  double c1_pp = 0, c2_pp = 0, d1_pp = 0, d2_pp = 0;
};

// Jet-valued variant feeding the tensor assemblies.  Jets rooted in a
// .derivative() chain lose their top slot, so b1/d1/d2 are trustworthy
// through d2 and the rest through d3; no consumer reads further.
struct DerivedJets {
  double t = 0.0;
  Jet a1, a2, b1, b2, c1, c2, d1, d2, lambda, mu;
};

DerivedJets derived_jets_at(const CoefficientProfile& P, double t);

// Throws SingularProfile when a denominator falls inside the guard band.
DerivedCoefficients coefficients_at(const CoefficientProfile& P, double t);

// Inputs for the case-family constructors.  B and k are case-local
// constants; the symbol k is reused across families with unrelated meanings.
struct ProfileSpec {
  double c = 0.0;
  double B = 0.0;
  double k = 0.0;
  JetFn a1;      // Case2 override / Custom
  JetFn lambda;  // Case3 / Custom
};

// Case1: a1 = B + sqrt(B^2 + 2|c|t), lambda = (4c/k) a1 / (a1^2 + 2ct).
// Case2: lambda = k / a1 with a1 supplied (default: the Case1 radical).
// Case3: a1 = k t lambda with lambda supplied; the zero section t = 0 is
//         excluded because a1(0) = 0.
// Throws InvalidCaseParams naming the violated inequality.
CoefficientProfile make_case_profile(CaseTag tag, const ProfileSpec& spec);

JetFn constant_fn(double value);

// a1(t) = B + sqrt(B^2 + 2|c|t)
JetFn radical_a1(double c, double B);

// c = 0, a1 = lambda = 1; the simplest validating profile.
CoefficientProfile flat_identity_profile();

struct ProfileCheck {
  double t = 0.0;
  bool evaluated = false;
  std::string error;  // set when evaluation failed at this t
  bool a1_positive = false;
  bool w_positive = false;            // a1 + 2 t b1 > 0
  bool lambda_positive = false;
  bool lambda_comb_positive = false;  // lambda + 2 t lambda' > 0
  double guard_margin_b1_den = 0.0;   // |a1 - 2 t a1'|
  double guard_margin_sq = 0.0;       // |a1^2 - 2 c t|

  bool pass() const {
    return evaluated && a1_positive && w_positive && lambda_positive &&
           lambda_comb_positive && guard_margin_b1_den > kSingularGuard &&
           guard_margin_sq > kSingularGuard;
  }
};

struct ValidationReport {
  std::vector<ProfileCheck> checks;
  bool pass = true;
};

// Evaluates the positivity and regularity conditions on a sorted grid.
// Never throws for per-t evaluation failures; those are recorded.
ValidationReport validate_profile(const CoefficientProfile& P,
                                  const std::vector<double>& t_grid);

// The closed form for a1'' implied by a vanishing dimension coefficient of
// the Einstein obstruction; reproduces the analytic a1'' exactly on
// profiles with that coefficient zero and disagrees otherwise.
double a1_second_from_cn(const CoefficientProfile& P, double t);

}  // namespace ctlift
