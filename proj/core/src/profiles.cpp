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

#include "ctlift/profiles.hpp"

#include <algorithm>
#include <cmath>

namespace ctlift {

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::Case1: return "case1";
    case CaseTag::Case2: return "case2";
    case CaseTag::Case3: return "case3";
    case CaseTag::Custom: return "custom";
  }
  return "?";
}

DerivedJets derived_jets_at(const CoefficientProfile& P, double t) {
  if (t < 0.0) throw std::domain_error("energy density t must be >= 0");

  DerivedJets out;
  out.t = t;
  const Jet tv = Jet::variable(t);
  out.a1 = P.a1_jet(t);
  out.lambda = P.lambda_jet(t);

  const Jet b1_den = out.a1 - 2.0 * tv * out.a1.derivative();
  if (std::abs(b1_den.f) <= kSingularGuard)
    throw SingularProfile(t, "a1 - 2t a1'");
  const Jet sq = out.a1 * out.a1 - 2.0 * P.c * tv;
  if (std::abs(sq.f) <= kSingularGuard) throw SingularProfile(t, "a1^2 - 2ct");

  out.b1 = (out.a1 * out.a1.derivative() - P.c) / b1_den + P.b1_offset;
  out.a2 = 1.0 / out.a1;

  const Jet w1 = out.a1 + 2.0 * tv * out.b1;  // a1 + 2t b1
  out.b2 = -out.b1 / (out.a1 * w1);
  const Jet w2 = out.a2 + 2.0 * tv * out.b2;  // a2 + 2t b2

  out.mu = out.lambda.derivative() + P.mu_offset;
  out.c1 = out.lambda * out.a1;
  out.c2 = out.lambda * out.a2;
  out.d1 = out.lambda * out.b1 + out.mu * w1;
  out.d2 = out.lambda * out.b2 + out.mu * w2;
  return out;
}

DerivedCoefficients coefficients_at(const CoefficientProfile& P, double t) {
  const DerivedJets j = derived_jets_at(P, t);
  DerivedCoefficients out;
  out.t = t;
  out.a1 = j.a1.f;
  out.a2 = j.a2.f;
  out.b1 = j.b1.f;
  out.b2 = j.b2.f;
  out.c1 = j.c1.f;
  out.c2 = j.c2.f;
  out.d1 = j.d1.f;
  out.d2 = j.d2.f;
  out.lambda = j.lambda.f;
  out.mu = j.mu.f;
  out.b1_p = j.b1.d1;
  out.c1_p = j.c1.d1;
  out.c2_p = j.c2.d1;
  out.d1_p = j.d1.d1;
  out.d2_p = j.d2.d1;
  out.c1_pp = j.c1.d2;
  out.c2_pp = j.c2.d2;
  out.d1_pp = j.d1.d2;
  out.d2_pp = j.d2.d2;
  return out;
}

JetFn constant_fn(double value) {
  return [value](double) { return Jet::constant(value); };
}

JetFn radical_a1(double c, double B) {
  const double twoc = 2.0 * std::abs(c);
  return [B, twoc](double t) {
    const Jet tv = Jet::variable(t);
    return B + sqrt(B * B + twoc * tv);
  };
}

CoefficientProfile make_case_profile(CaseTag tag, const ProfileSpec& spec) {
  CoefficientProfile P;
  P.c = spec.c;
  P.case_tag = tag;
  P.params.B = spec.B;
  P.params.k = spec.k;

  switch (tag) {
    case CaseTag::Case1: {
      if (spec.c == 0.0) throw InvalidCaseParams("c != 0");
      if (spec.c / spec.k <= 0.0) throw InvalidCaseParams("c/k > 0");
      if (spec.B <= 0.0) throw InvalidCaseParams("B > 0");
      P.a1_fn = radical_a1(spec.c, spec.B);
      const double c = spec.c, k = spec.k;
      const JetFn a1 = P.a1_fn;
      P.lambda_fn = [c, k, a1](double t) {
        const Jet tv = Jet::variable(t);
        const Jet a = a1(t);
        return (4.0 * c / k) * a / (a * a + 2.0 * c * tv);
      };
      break;
    }
    case CaseTag::Case2: {
      if (spec.k <= 0.0) throw InvalidCaseParams("k > 0");
      if (spec.a1) {
        P.a1_fn = spec.a1;
      } else {
        if (spec.B <= 0.0) throw InvalidCaseParams("B > 0");
        P.a1_fn = radical_a1(spec.c, spec.B);
      }
      const double k = spec.k;
      const JetFn a1 = P.a1_fn;
      P.lambda_fn = [k, a1](double t) { return k / a1(t); };
      break;
    }
    case CaseTag::Case3: {
      if (spec.k <= 0.0) throw InvalidCaseParams("k > 0");
      if (!spec.lambda) throw InvalidCaseParams("a positive lambda function");
      P.lambda_fn = spec.lambda;
      const double k = spec.k;
      const JetFn lam = P.lambda_fn;
      P.a1_fn = [k, lam](double t) {
        return k * Jet::variable(t) * lam(t);
      };
      break;
    }
    case CaseTag::Custom: {
      if (!spec.a1 || !spec.lambda)
        throw InvalidCaseParams("both a1 and lambda functions");
      P.a1_fn = spec.a1;
      P.lambda_fn = spec.lambda;
      break;
    }
  }
  return P;
}

CoefficientProfile flat_identity_profile() {
  ProfileSpec spec;
  spec.c = 0.0;
  spec.a1 = constant_fn(1.0);
  spec.lambda = constant_fn(1.0);
  return make_case_profile(CaseTag::Custom, spec);
}

ValidationReport validate_profile(const CoefficientProfile& P,
                                  const std::vector<double>& t_grid) {
  if (t_grid.empty())
    throw std::invalid_argument("validate_profile: empty t grid");
  if (!std::is_sorted(t_grid.begin(), t_grid.end()))
    throw std::invalid_argument("validate_profile: t grid must be sorted");

  ValidationReport report;
  report.checks.reserve(t_grid.size());
  for (double t : t_grid) {
    ProfileCheck chk;
    chk.t = t;
    try {
      const Jet a1 = P.a1_jet(t);
      const Jet lam = P.lambda_jet(t);
      chk.guard_margin_b1_den = std::abs(a1.f - 2.0 * t * a1.d1);
      chk.guard_margin_sq = std::abs(a1.f * a1.f - 2.0 * P.c * t);
      chk.a1_positive = a1.f > 0.0;
      chk.lambda_positive = lam.f > 0.0;
      chk.lambda_comb_positive = lam.f + 2.0 * t * lam.d1 > 0.0;
      if (chk.guard_margin_b1_den > kSingularGuard) {
        const double b1 =
            (a1.f * a1.d1 - P.c) / (a1.f - 2.0 * t * a1.d1) + P.b1_offset;
        chk.w_positive = a1.f + 2.0 * t * b1 > 0.0;
      }
      const bool finite = std::isfinite(a1.f) && std::isfinite(a1.d1) &&
                          std::isfinite(a1.d2) && std::isfinite(lam.f) &&
                          std::isfinite(lam.d1) && std::isfinite(lam.d2);
      if (!finite) {
        chk.error = "non-finite coefficient value";
      } else {
        chk.evaluated = true;
      }
    } catch (const std::exception& e) {
      chk.error = e.what();
    }
    report.pass = report.pass && chk.pass();
    report.checks.push_back(std::move(chk));
  }
  return report;
}

double a1_second_from_cn(const CoefficientProfile& P, double t) {
  const Jet a1 = P.a1_jet(t);
  const Jet lam = P.lambda_jet(t);
  const double a = a1.f, ap = a1.d1;
  const double l = lam.f, lp = lam.d1, lpp = lam.d2;

  const double den = a * a * l * l + 2.0 * a * a * l * lp * t;
  if (std::abs(den) <= kSingularGuard)
    throw SingularProfile(t, "a1^2 lambda^2 + 2 a1^2 lambda lambda' t");

  const double num = 2.0 * a * ap * ap * l * l +
                     2.0 * a * a * ap * l * lp -
                     2.0 * a * a * a * lp * lp +
                     a * a * a * l * lpp -
                     2.0 * ap * ap * ap * l * l * t -
                     2.0 * a * ap * ap * l * lp * t +
                     4.0 * a * a * ap * lp * lp * t -
                     2.0 * a * a * ap * l * lpp * t;
  return -num / den;
}

}  // namespace ctlift
