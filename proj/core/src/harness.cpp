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

#include "ctlift/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <random>
#include <sstream>

#include "ctlift/integrability.hpp"

namespace ctlift {

namespace {

// Shortest round-trip decimal form, deterministic across runs.
std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt_sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9e", v);
  return buf;
}

// Deterministic uniform/Gaussian draws from a fixed-width engine; avoids
// any reliance on distribution implementations.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : eng_(seed) {}

  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double symmetric() { return 2.0 * unit() - 1.0; }
  double gauss() {
    const double u1 = 1.0 - unit();
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 eng_;
};

std::uint64_t suite_seed(std::uint64_t base, Suite s) {
  return base ^ (0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(s) + 1));
}

AdaptedVector random_adapted(DetRng& rng, int n) {
  AdaptedVector x = AdaptedVector::zero(n);
  for (int i = 0; i < n; ++i) {
    x.h[i] = rng.symmetric();
    x.v[i] = rng.symmetric();
  }
  return x;
}

std::vector<FrameField> all_frame_fields(int n) {
  std::vector<FrameField> fields;
  fields.reserve(2 * n);
  for (int i = 0; i < n; ++i) fields.push_back(FrameField::delta(i));
  for (int i = 0; i < n; ++i) fields.push_back(FrameField::del(i));
  return fields;
}

struct SuiteContext {
  const ScenarioConfig& cfg;
  const SpaceForm& M;
  const CoefficientProfile& P;
  const std::vector<CotangentPoint>& pts;
  std::vector<double> t_grid;  // sorted sample energies
  std::vector<CheckRecord>& out;

  void add(Suite suite, std::string name, std::string anchor,
           std::string points, double resid, double tol) {
    CheckRecord rec;
    rec.suite = suite;
    rec.name = std::move(name);
    rec.anchor = std::move(anchor);
    rec.points = std::move(points);
    rec.max_residual = resid;
    rec.tolerance = tol;
    rec.passed = resid <= tol;
    out.push_back(std::move(rec));
  }

  // Detector check: passes when the residual EXCEEDS the threshold.
  void add_detect(Suite suite, std::string name, std::string anchor,
                  std::string points, double resid, double threshold) {
    CheckRecord rec;
    rec.suite = suite;
    rec.name = std::move(name);
    rec.anchor = std::move(anchor);
    rec.points = std::move(points);
    rec.max_residual = resid;
    rec.tolerance = threshold;
    rec.passed = resid > threshold;
    rec.note = "expected violation";
    out.push_back(std::move(rec));
  }
};

std::string pts_str(std::size_t n) { return std::to_string(n) + " pts"; }

// ---------------------------------------------------------------- structure

void run_structure(SuiteContext& ctx) {
  const int n = ctx.M.n;
  DetRng rng(suite_seed(ctx.cfg.seed, Suite::Structure));
  const double tight = ctx.cfg.tol.tight;

  double j2 = 0.0, eq4 = 0.0, hinv = 0.0, phis = 0.0, frame_resid = 0.0;
  for (const CotangentPoint& pt : ctx.pts) {
    const StructureBlocks b = structure_blocks_at(ctx.M, ctx.P, pt);
    for (int rep = 0; rep < 4; ++rep) {
      const AdaptedVector x = random_adapted(rng, n);
      const AdaptedVector jjx = apply_J(b, apply_J(b, x));
      j2 = std::max(j2, max_abs(jjx + x));
    }

    const DerivedCoefficients dc = coefficients_at(ctx.P, b.t);
    eq4 = std::max(eq4, std::abs(dc.a1 * dc.a2 - 1.0));
    eq4 = std::max(eq4, std::abs((dc.a1 + 2.0 * b.t * dc.b1) *
                                     (dc.a2 + 2.0 * b.t * dc.b2) -
                                 1.0));

    hinv = std::max(hinv, identity_residual(b.G1, b.H1));
    hinv = std::max(hinv, identity_residual(b.G2, b.H2));

    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const AdaptedVector vi = AdaptedVector::vertical_unit(n, i);
        const AdaptedVector vj = AdaptedVector::vertical_unit(n, j);
        const AdaptedVector hi = AdaptedVector::horizontal_unit(n, i);
        const AdaptedVector hj = AdaptedVector::horizontal_unit(n, j);
        phis = std::max(phis, std::abs(phi_value(b, vi, vj)));
        phis = std::max(phis, std::abs(phi_value(b, hi, hj)));
        phis = std::max(phis, std::abs(phi_value(b, vi, hj) - b.phi(i, j)));
        phis = std::max(phis,
                        std::abs(phi_value(b, vi, hj) + phi_value(b, hj, vi)));
      }
  }

  const std::size_t frame_pts = std::min<std::size_t>(ctx.pts.size(), 10);
  for (std::size_t i = 0; i < frame_pts; ++i) {
    const Mat frame = adapted_frame_in_chart(ctx.M, ctx.pts[i]);
    frame_resid = std::max(frame_resid, identity_residual(frame, invert(frame)));
  }

  ctx.add(Suite::Structure, "j-squared", "Prop 2 / J^2 = -I",
          pts_str(ctx.pts.size()) + " x 4 vectors", j2, tight);
  ctx.add(Suite::Structure, "eq4-products", "Prop 2 / Eq (4) products",
          pts_str(ctx.pts.size()), eq4, tight);
  ctx.add(Suite::Structure, "h-inverse", "Sec 2 / H inverse blocks",
          pts_str(ctx.pts.size()), hinv, 1e-10);
  ctx.add(Suite::Structure, "phi-blocks", "Prop 5 / phi block forms",
          pts_str(ctx.pts.size()), phis, tight);
  ctx.add(Suite::Structure, "adapted-frame", "Sec 1 / adapted frame invertible",
          pts_str(frame_pts), frame_resid, 1e-10);

  const ValidationReport validation = validate_profile(ctx.P, ctx.t_grid);
  CheckRecord rec;
  rec.suite = Suite::Structure;
  rec.name = "positivity";
  rec.anchor = "Remark Thm 7 / positivity conditions";
  rec.points = pts_str(ctx.t_grid.size());
  rec.max_residual = validation.pass ? 0.0 : 1.0;
  rec.tolerance = 0.5;
  rec.passed = validation.pass;
  if (!validation.pass) rec.note = "profile conditions failed on grid";
  ctx.out.push_back(std::move(rec));
}

// ------------------------------------------------------------ integrability

void run_integrability(SuiteContext& ctx) {
  const int n = ctx.M.n;
  const Expectation mode = ctx.cfg.expectation(Suite::Integrability);
  const Tolerances& tol = ctx.cfg.tol;
  const auto fields = all_frame_fields(n);

  const std::size_t bracket_pts = std::min<std::size_t>(ctx.pts.size(), 10);
  double brackets = 0.0;
  for (std::size_t i = 0; i < bracket_pts; ++i)
    brackets = std::max(brackets, bracket_check(ctx.M, ctx.pts[i]).max());
  ctx.add(Suite::Integrability, "frame-brackets",
          "Eq (6) / adapted frame brackets", pts_str(bracket_pts), brackets,
          tol.fd);

  double closed_max = 0.0;
  for (const CotangentPoint& pt : ctx.pts) {
    const NijenhuisBlock block = nijenhuis_delta_delta_closed(ctx.M, ctx.P, pt);
    closed_max = std::max(closed_max, max_abs(block.components));
  }
  if (mode == Expectation::Hold)
    ctx.add(Suite::Integrability, "nijenhuis-closed",
            "Thm 3 / N(delta,delta) closed form", pts_str(ctx.pts.size()),
            closed_max, tol.tight);
  else
    ctx.add_detect(Suite::Integrability, "nijenhuis-closed",
                   "Thm 3 / N(delta,delta) closed form",
                   pts_str(ctx.pts.size()), closed_max, tol.detect);

  const std::size_t nij_pts = std::min<std::size_t>(ctx.pts.size(), 8);
  double numeric_max = 0.0;
  double oracle_vs_closed = 0.0;
  for (std::size_t ip = 0; ip < nij_pts; ++ip) {
    const CotangentPoint& pt = ctx.pts[ip];
    const NijenhuisBlock closed = nijenhuis_delta_delta_closed(ctx.M, ctx.P, pt);
    for (std::size_t a = 0; a < fields.size(); ++a)
      for (std::size_t b = a + 1; b < fields.size(); ++b) {
        const AdaptedVector nij =
            nijenhuis_numeric(ctx.M, ctx.P, pt, fields[a], fields[b]);
        numeric_max = std::max(numeric_max, max_abs(nij));
        if (!fields[a].vertical && !fields[b].vertical) {
          double diff = max_abs(nij.h);
          for (int k = 0; k < n; ++k)
            diff = std::max(diff,
                            std::abs(nij.v[k] - closed.components(
                                                    k, fields[a].index,
                                                    fields[b].index)));
          oracle_vs_closed = std::max(oracle_vs_closed, diff);
        }
      }
  }
  if (mode == Expectation::Hold)
    ctx.add(Suite::Integrability, "nijenhuis-numeric",
            "Thm 3 / Nijenhuis finite-difference oracle",
            pts_str(nij_pts) + " x all frame pairs", numeric_max, tol.fd);
  else
    ctx.add_detect(Suite::Integrability, "nijenhuis-numeric",
                   "Thm 3 / Nijenhuis finite-difference oracle",
                   pts_str(nij_pts) + " x all frame pairs", numeric_max,
                   tol.detect);
  ctx.add(Suite::Integrability, "oracle-vs-closed",
          "Thm 3 / oracle vs closed form",
          pts_str(nij_pts) + " x delta pairs", oracle_vs_closed, tol.fd);

  double antisym = 0.0;
  const CotangentPoint& pt0 = ctx.pts.front();
  for (std::size_t a = 0; a < fields.size() && a < 3; ++a)
    for (std::size_t b = a + 1; b < fields.size() && b < 4; ++b) {
      const AdaptedVector nab =
          nijenhuis_numeric(ctx.M, ctx.P, pt0, fields[a], fields[b]);
      const AdaptedVector nba =
          nijenhuis_numeric(ctx.M, ctx.P, pt0, fields[b], fields[a]);
      antisym = std::max(antisym, max_abs(nab + nba));
    }
  ctx.add(Suite::Integrability, "nijenhuis-antisymmetry",
          "Thm 3 / N antisymmetry", "1 pt x index pairs", antisym, 1e-8);
}

// ------------------------------------------------------------------- kahler

void run_kahler(SuiteContext& ctx) {
  const int n = ctx.M.n;
  const Expectation mode = ctx.cfg.expectation(Suite::Kahler);
  const Tolerances& tol = ctx.cfg.tol;
  DetRng rng(suite_seed(ctx.cfg.seed, Suite::Kahler));

  double hermitian = 0.0, proportionality = 0.0;
  for (const CotangentPoint& pt : ctx.pts) {
    const StructureBlocks b = structure_blocks_at(ctx.M, ctx.P, pt);
    for (int rep = 0; rep < 4; ++rep) {
      const AdaptedVector x = random_adapted(rng, n);
      const AdaptedVector y = random_adapted(rng, n);
      hermitian = std::max(
          hermitian, std::abs(inner_product(b, apply_J(b, x), apply_J(b, y)) -
                              inner_product(b, x, y)));
    }
    const DerivedCoefficients dc = coefficients_at(ctx.P, b.t);
    const double t = b.t;
    proportionality =
        std::max({proportionality, std::abs(dc.c1 - dc.lambda * dc.a1),
                  std::abs(dc.c2 - dc.lambda * dc.a2),
                  std::abs(dc.c1 + 2.0 * t * dc.d1 -
                           (dc.lambda + 2.0 * t * dc.mu) *
                               (dc.a1 + 2.0 * t * dc.b1)),
                  std::abs(dc.c2 + 2.0 * t * dc.d2 -
                           (dc.lambda + 2.0 * t * dc.mu) *
                               (dc.a2 + 2.0 * t * dc.b2))});
  }
  ctx.add(Suite::Kahler, "hermitian-metric", "Thm 4 / G(JX,JY) = G(X,Y)",
          pts_str(ctx.pts.size()) + " x 4 pairs", hermitian, tol.tight);
  ctx.add(Suite::Kahler, "proportionality", "Thm 4 / Eq (11)-(12)",
          pts_str(ctx.pts.size()), proportionality, tol.tight);

  const auto fields = all_frame_fields(n);
  const std::size_t dphi_pts = std::min<std::size_t>(ctx.pts.size(), 6);
  double dphi_max = 0.0;
  CotangentPoint worst_pt = ctx.pts.front();
  FrameField wx = fields[0], wy = fields[1], wz = fields[2];
  for (std::size_t ip = 0; ip < dphi_pts; ++ip)
    for (std::size_t a = 0; a < fields.size(); ++a)
      for (std::size_t b = a + 1; b < fields.size(); ++b)
        for (std::size_t c = b + 1; c < fields.size(); ++c) {
          const double v = dphi_numeric(ctx.M, ctx.P, ctx.pts[ip], fields[a],
                                        fields[b], fields[c]);
          if (std::abs(v) > dphi_max) {
            dphi_max = std::abs(v);
            worst_pt = ctx.pts[ip];
            wx = fields[a];
            wy = fields[b];
            wz = fields[c];
          }
        }
  const std::string dphi_pts_str = pts_str(dphi_pts) + " x all frame triples";
  if (mode == Expectation::Hold)
    ctx.add(Suite::Kahler, "dphi", "Thm 6 / dphi alternating sum",
            dphi_pts_str, dphi_max, tol.fd);
  else
    ctx.add_detect(Suite::Kahler, "dphi", "Thm 6 / dphi alternating sum",
                   dphi_pts_str, dphi_max, tol.detect);

  double antisym = 0.0;
  {
    const CotangentPoint& pt0 = ctx.pts.front();
    const FrameField X = fields[0], Y = fields[n], Z = fields[2 * n - 1];
    const double base = dphi_numeric(ctx.M, ctx.P, pt0, X, Y, Z);
    antisym = std::max(antisym,
                       std::abs(base + dphi_numeric(ctx.M, ctx.P, pt0, Y, X, Z)));
    antisym = std::max(antisym,
                       std::abs(base - dphi_numeric(ctx.M, ctx.P, pt0, Y, Z, X)));
    antisym = std::max(antisym,
                       std::abs(base + dphi_numeric(ctx.M, ctx.P, pt0, X, Z, Y)));
  }
  ctx.add(Suite::Kahler, "dphi-antisymmetry", "Thm 6 / dphi total antisymmetry",
          "1 pt x argument permutations", antisym, 1e-8);

  if (mode == Expectation::Violation && ctx.cfg.mu_offset != 0.0) {
    // dphi scales linearly in (lambda' - mu): doubling the offset doubles
    // the value at the same point and triple.
    CoefficientProfile doubled = ctx.P;
    doubled.mu_offset = 2.0 * ctx.cfg.mu_offset;
    const double v1 = dphi_numeric(ctx.M, ctx.P, worst_pt, wx, wy, wz);
    const double v2 = dphi_numeric(ctx.M, doubled, worst_pt, wx, wy, wz);
    const double ratio_err =
        std::abs(v2 - 2.0 * v1) / std::max({std::abs(v2), std::abs(v1), 1e-30});
    ctx.add(Suite::Kahler, "dphi-linearity",
            "Thm 6 / dphi linear in (lambda' - mu)", "worst triple", ratio_err,
            1e-4);
  }
}

// --------------------------------------------------------------- connection

void run_connection(SuiteContext& ctx) {
  const int n = ctx.M.n;
  const Tolerances& tol = ctx.cfg.tol;

  const std::size_t koszul_pts = std::min<std::size_t>(ctx.pts.size(), 50);
  double koszul = 0.0;
  for (std::size_t ip = 0; ip < koszul_pts; ++ip) {
    const auto closed = connection_table_closed(ctx.M, ctx.P, ctx.pts[ip]);
    const auto oracle = koszul_connection_table(ctx.M, ctx.P, ctx.pts[ip]);
    double scale = 1.0;
    for (std::size_t a = 0; a < closed.size(); ++a)
      for (std::size_t b = 0; b < closed.size(); ++b)
        scale = std::max({scale, max_abs(closed[a][b]), max_abs(oracle[a][b])});
    for (std::size_t a = 0; a < closed.size(); ++a)
      for (std::size_t b = 0; b < closed.size(); ++b)
        koszul = std::max(koszul,
                          max_abs(closed[a][b] - oracle[a][b]) / scale);
  }
  ctx.add(Suite::Connection, "koszul-oracle", "Thm 8 / Koszul formula oracle",
          pts_str(koszul_pts) + " x all frame pairs", koszul, tol.fd);

  const std::size_t form_pts = std::min<std::size_t>(ctx.pts.size(), 20);
  double form = 0.0;
  for (std::size_t ip = 0; ip < form_pts; ++ip)
    form = std::max(form, connection_form_residual(ctx.M, ctx.P, ctx.pts[ip]));
  ctx.add(Suite::Connection, "explicit-vs-generic",
          "Thm 8 / explicit vs generic forms", pts_str(form_pts), form, 1e-10);

  const std::size_t compat_pts = std::min<std::size_t>(ctx.pts.size(), 10);
  double compat = 0.0, torsion = 0.0;
  for (std::size_t ip = 0; ip < compat_pts; ++ip) {
    compat = std::max(compat,
                      metric_compatibility_residual(ctx.M, ctx.P, ctx.pts[ip]));
    torsion = std::max(torsion, torsion_residual(ctx.M, ctx.P, ctx.pts[ip]));
  }
  ctx.add(Suite::Connection, "metric-compatibility",
          "Sec 3 / nabla G = 0", pts_str(compat_pts), compat, tol.fd);
  ctx.add(Suite::Connection, "torsion-free", "Sec 3 / torsion vanishes",
          pts_str(compat_pts), torsion, tol.fd);

  // At p = 0 every closed-form term carries a p or g0 factor.
  const CotangentPoint zero_p =
      make_cotangent_point(ctx.M, ctx.pts.front().q, Vec(n, 0.0));
  const ConnectionBlocks cb = connection_blocks_at(ctx.M, ctx.P, zero_p);
  const double zero_resid =
      std::max({max_abs(cb.Q), max_abs(cb.P), max_abs(cb.S)});
  CheckRecord rec;
  rec.suite = Suite::Connection;
  rec.name = "zero-section";
  rec.anchor = "Thm 8 / blocks vanish at p = 0";
  rec.points = "1 pt";
  rec.max_residual = zero_resid;
  rec.tolerance = 0.0;
  rec.passed = zero_resid == 0.0;
  ctx.out.push_back(std::move(rec));
}

// ---------------------------------------------------------------- curvature

void run_curvature(SuiteContext& ctx) {
  const Tolerances& tol = ctx.cfg.tol;
  const bool flat = ctx.cfg.profile == "flat" && ctx.cfg.c == 0.0;

  const std::size_t oracle_pts =
      std::min<std::size_t>(ctx.pts.size(), ctx.M.n <= 2 ? 3 : 2);
  double vs_oracle = 0.0, off_block = 0.0, mixed_ricci = 0.0,
         ricci_consistency = 0.0;
  for (std::size_t ip = 0; ip < oracle_pts; ++ip) {
    const CurvatureBlocks closed = curvature_blocks_at(ctx.M, ctx.P, ctx.pts[ip]);
    const CurvatureOracleResult oracle =
        curvature_fd_oracle(ctx.M, ctx.P, ctx.pts[ip]);
    vs_oracle = std::max({vs_oracle,
                          rel_residual(closed.PPP, oracle.blocks.PPP),
                          rel_residual(closed.PPQ, oracle.blocks.PPQ),
                          rel_residual(closed.QQP, oracle.blocks.QQP),
                          rel_residual(closed.QQQ, oracle.blocks.QQQ),
                          rel_residual(closed.PQQ, oracle.blocks.PQQ),
                          rel_residual(closed.PQP, oracle.blocks.PQP)});
    off_block = std::max(off_block, oracle.off_block_max);
    mixed_ricci = std::max(mixed_ricci, oracle.mixed_ricci_max);

    const RicciBlocks closed_ric = ricci_from_blocks(closed);
    const RicciBlocks oracle_ric = ricci_from_blocks(oracle.blocks);
    ricci_consistency =
        std::max({ricci_consistency,
                  rel_residual(closed_ric.RicPP, oracle_ric.RicPP),
                  rel_residual(closed_ric.RicQQ, oracle_ric.RicQQ)});
  }
  ctx.add(Suite::Curvature, "blocks-vs-oracle",
          "Sec 3 / blocks vs differentiated Koszul", pts_str(oracle_pts),
          vs_oracle, tol.curvature);
  ctx.add(Suite::Curvature, "off-block-components",
          "Sec 3 / diagonal block structure", pts_str(oracle_pts), off_block,
          tol.curvature);
  ctx.add(Suite::Curvature, "mixed-ricci", "Sec 3 / Ric(del, delta) = 0",
          pts_str(oracle_pts), mixed_ricci, tol.curvature);
  ctx.add(Suite::Curvature, "ricci-consistency",
          "Sec 3 / Ricci trace consistency", pts_str(oracle_pts),
          ricci_consistency, tol.curvature);

  const std::size_t deriv_pts = std::min<std::size_t>(ctx.pts.size(), 3);
  double derivs = 0.0;
  for (std::size_t ip = 0; ip < deriv_pts; ++ip) {
    const ConnectionDerivatives exact =
        connection_vertical_derivatives_at(ctx.M, ctx.P, ctx.pts[ip]);
    const ConnectionDerivatives fd =
        connection_vertical_derivatives_fd(ctx.M, ctx.P, ctx.pts[ip]);
    derivs = std::max({derivs, rel_residual(exact.dQ, fd.dQ),
                       rel_residual(exact.dP, fd.dP),
                       rel_residual(exact.dS, fd.dS)});
  }
  ctx.add(Suite::Curvature, "connection-derivatives",
          "Sec 3 / vertical derivatives of Q, P, S", pts_str(deriv_pts),
          derivs, 1e-5);

  const std::size_t alg_pts = std::min<std::size_t>(ctx.pts.size(), 5);
  double bianchi = 0.0, antisym = 0.0, ricci_sym = 0.0, flat_zero = 0.0;
  for (std::size_t ip = 0; ip < alg_pts; ++ip) {
    const CurvatureBlocks blocks = curvature_blocks_at(ctx.M, ctx.P, ctx.pts[ip]);
    bianchi = std::max(bianchi, first_bianchi_residual(blocks));

    const int n = ctx.M.n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int h = 0; h < n; ++h) {
            antisym = std::max(antisym, std::abs(blocks.PPP(i, j, k, h) +
                                                 blocks.PPP(j, i, k, h)));
            antisym = std::max(antisym, std::abs(blocks.QQQ(i, j, k, h) +
                                                 blocks.QQQ(j, i, k, h)));
          }

    const RicciBlocks ric = ricci_from_blocks(blocks);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        ricci_sym = std::max(ricci_sym,
                             std::abs(ric.RicQQ(j, k) - ric.RicQQ(k, j)));
        ricci_sym = std::max(ricci_sym,
                             std::abs(ric.RicPP(j, k) - ric.RicPP(k, j)));
      }

    if (flat)
      flat_zero = std::max({flat_zero, max_abs(blocks.PPP), max_abs(blocks.PPQ),
                            max_abs(blocks.QQP), max_abs(blocks.QQQ),
                            max_abs(blocks.PQQ), max_abs(blocks.PQP)});
  }
  ctx.add(Suite::Curvature, "bianchi", "Sec 3 / first Bianchi identity",
          pts_str(alg_pts), bianchi, 1e-5);
  ctx.add(Suite::Curvature, "block-antisymmetry",
          "Sec 3 / K(X,Y)Z = -K(Y,X)Z", pts_str(alg_pts), antisym, 1e-10);
  ctx.add(Suite::Curvature, "ricci-symmetry", "Sec 3 / Ricci symmetry",
          pts_str(alg_pts), ricci_sym, 1e-8);
  if (flat)
    ctx.add(Suite::Curvature, "flat-zero", "Sec 3 / flat profile blocks vanish",
            pts_str(alg_pts), flat_zero, 1e-8);
}

// ----------------------------------------------------------------- einstein

void run_einstein(SuiteContext& ctx) {
  const Expectation mode = ctx.cfg.expectation(Suite::Einstein);
  const Tolerances& tol = ctx.cfg.tol;

  const std::size_t res_pts = std::min<std::size_t>(ctx.pts.size(), 25);
  double residual = 0.0;
  for (std::size_t ip = 0; ip < res_pts; ++ip) {
    const EinsteinResidual er = einstein_residual_at(ctx.M, ctx.P, ctx.pts[ip]);
    residual = std::max({residual, max_abs(er.diff_qq), max_abs(er.diff_pp)});
  }
  if (mode == Expectation::Hold)
    ctx.add(Suite::Einstein, "einstein-residual", "Sec 4 / DiffQQ and DiffPP",
            pts_str(res_pts), residual, tol.fd);
  else
    ctx.add_detect(Suite::Einstein, "einstein-residual",
                   "Sec 4 / DiffQQ and DiffPP", pts_str(res_pts), residual,
                   tol.detect);

  double cn = 0.0, a1pp = 0.0;
  for (double t : ctx.t_grid) {
    cn = std::max(cn, std::abs(cn_at(ctx.P, t)));
    a1pp = std::max(a1pp,
                    std::abs(a1_second_from_cn(ctx.P, t) - ctx.P.a1_pp(t)));
  }
  if (mode == Expectation::Hold) {
    ctx.add(Suite::Einstein, "cn-vanishes", "Sec 4 / C_n coefficient",
            pts_str(ctx.t_grid.size()), cn, 1e-9);
    ctx.add(Suite::Einstein, "a1pp-identity", "Eq (15) / a1'' closed form",
            pts_str(ctx.t_grid.size()), a1pp, 1e-9);
  } else {
    ctx.add_detect(Suite::Einstein, "cn-vanishes", "Sec 4 / C_n coefficient",
                   pts_str(ctx.t_grid.size()), cn, 1e-6);
    ctx.add_detect(Suite::Einstein, "a1pp-identity",
                   "Eq (15) / a1'' closed form", pts_str(ctx.t_grid.size()),
                   a1pp, tol.detect);
  }

  if (ctx.cfg.profile == "case1" && mode == Expectation::Hold) {
    const double expected = ctx.cfg.k * (ctx.M.n + 1) / 2.0;
    double worst = 0.0;
    for (double t : ctx.t_grid)
      worst = std::max(worst,
                       std::abs(einstein_factor(ctx.P, t, ctx.M.n) - expected));
    ctx.add(Suite::Einstein, "einstein-factor", "Sec 4 / Ef = k(n+1)/2",
            pts_str(ctx.t_grid.size()), worst, 1e-9);
  }
}

// -------------------------------------------------------------- holomorphic

void run_holomorphic(SuiteContext& ctx) {
  const Expectation mode = ctx.cfg.expectation(Suite::Holomorphic);
  const Tolerances& tol = ctx.cfg.tol;

  // A Kaehler-Einstein structure of constant holomorphic curvature k has
  // Ef = (n+1) k / 2; invert that for the candidate model constant.
  const double t_mid = 0.5 * (ctx.cfg.t_lo + ctx.cfg.t_hi);
  const double k_hol =
      2.0 * einstein_factor(ctx.P, t_mid, ctx.M.n) / (ctx.M.n + 1);

  const std::size_t pts = std::min<std::size_t>(ctx.pts.size(), 3);
  double all_blocks = 0.0, unmixed = 0.0, mixed = 0.0;
  for (std::size_t ip = 0; ip < pts; ++ip) {
    const auto resid = holomorphic_residual_at(ctx.M, ctx.P, ctx.pts[ip], k_hol);
    // Block order: PPP, PPQ, QQP, QQQ, PQQ, PQP.
    all_blocks = std::max({all_blocks, resid[0], resid[1], resid[2], resid[3],
                           resid[4], resid[5]});
    unmixed = std::max({unmixed, resid[0], resid[1], resid[2], resid[3]});
    mixed = std::max({mixed, resid[4], resid[5]});
  }

  if (mode == Expectation::NonConstant) {
    ctx.add(Suite::Holomorphic, "unmixed-blocks",
            "Thm 10 / unmixed blocks match the model", pts_str(pts), unmixed,
            1e-5);
    ctx.add_detect(Suite::Holomorphic, "mixed-blocks-deviate",
                   "Thm 10 / no constant holomorphic curvature", pts_str(pts),
                   mixed, tol.detect);
  } else {
    ctx.add(Suite::Holomorphic, "model-blocks",
            "Thm 9 / constant holomorphic curvature model", pts_str(pts),
            all_blocks, 1e-5);
  }
}

}  // namespace

// ----------------------------------------------------------------- plumbing

std::string to_string(Suite suite) {
  switch (suite) {
    case Suite::Structure: return "structure";
    case Suite::Integrability: return "integrability";
    case Suite::Kahler: return "kahler";
    case Suite::Connection: return "connection";
    case Suite::Curvature: return "curvature";
    case Suite::Einstein: return "einstein";
    case Suite::Holomorphic: return "holomorphic";
  }
  return "?";
}

Suite suite_from_string(const std::string& name) {
  for (Suite s : all_suites())
    if (to_string(s) == name) return s;
  throw std::invalid_argument("unknown suite: " + name);
}

std::vector<Suite> all_suites() {
  return {Suite::Structure,  Suite::Integrability, Suite::Kahler,
          Suite::Connection, Suite::Curvature,     Suite::Einstein,
          Suite::Holomorphic};
}

std::string to_string(Expectation e) {
  switch (e) {
    case Expectation::Hold: return "hold";
    case Expectation::Violation: return "violation";
    case Expectation::NonConstant: return "non-constant";
  }
  return "?";
}

Expectation expectation_from_string(const std::string& name) {
  if (name == "hold" || name == "pass") return Expectation::Hold;
  if (name == "violation" || name == "fail") return Expectation::Violation;
  if (name == "non-constant") return Expectation::NonConstant;
  throw std::invalid_argument("unknown expectation: " + name);
}

std::vector<CotangentPoint> sample_points(const SpaceForm& M, int count,
                                          std::uint64_t seed,
                                          std::pair<double, double> t_range) {
  if (count < 1) throw std::invalid_argument("sample_points: count >= 1");
  const auto [t_lo, t_hi] = t_range;
  if (!(t_lo >= 0.0) || t_hi < t_lo)
    throw std::invalid_argument("sample_points: need 0 <= t_lo <= t_hi");

  DetRng rng(seed);
  const int n = M.n;
  const double q_radius = 0.5 * M.chart_radius;

  std::vector<CotangentPoint> pts;
  pts.reserve(count);
  for (int s = 0; s < count; ++s) {
    Vec q(n);
    for (;;) {
      double r2 = 0.0;
      for (int i = 0; i < n; ++i) {
        q[i] = q_radius * rng.symmetric();
        r2 += q[i] * q[i];
      }
      if (r2 < q_radius * q_radius) break;
    }

    const double t_target = t_hi == t_lo ? t_lo : t_lo + rng.unit() * (t_hi - t_lo);

    Vec p(n, 0.0);
    if (t_target > 0.0) {
      Vec dir(n);
      double norm = 0.0;
      do {
        norm = 0.0;
        for (int i = 0; i < n; ++i) {
          dir[i] = rng.gauss();
          norm += dir[i] * dir[i];
        }
      } while (norm == 0.0);

      const BaseGeometry geo = base_geometry_at(M, q);
      double quad = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) quad += geo.g_inv(i, j) * dir[i] * dir[j];
      const double scale = std::sqrt(2.0 * t_target / quad);
      for (int i = 0; i < n; ++i) p[i] = scale * dir[i];
    }
    pts.push_back(make_cotangent_point(M, std::move(q), std::move(p)));
  }
  return pts;
}

SpaceForm spaceform_from_config(const ScenarioConfig& cfg) {
  if (cfg.chart_radius > 0.0) return SpaceForm(cfg.n, cfg.c, cfg.chart_radius);
  return SpaceForm::with_default_radius(cfg.n, cfg.c);
}

CoefficientProfile profile_from_config(const ScenarioConfig& cfg) {
  CoefficientProfile P;
  if (cfg.profile == "flat") {
    P = flat_identity_profile();
    P.c = cfg.c;
  } else if (cfg.profile == "case1") {
    P = make_case_profile(CaseTag::Case1, {cfg.c, cfg.B, cfg.k, {}, {}});
  } else if (cfg.profile == "case2") {
    P = make_case_profile(CaseTag::Case2, {cfg.c, cfg.B, cfg.k, {}, {}});
  } else if (cfg.profile == "case3") {
    P = make_case_profile(CaseTag::Case3,
                          {cfg.c, 0.0, cfg.k, {}, constant_fn(cfg.lambda_const)});
  } else if (cfg.profile == "example-lambda1") {
    ProfileSpec spec;
    spec.c = cfg.c;
    spec.a1 = radical_a1(cfg.c, cfg.B);
    spec.lambda = constant_fn(1.0);
    P = make_case_profile(CaseTag::Custom, spec);
  } else {
    throw std::invalid_argument("unknown profile kind: " + cfg.profile);
  }
  P.b1_offset = cfg.b1_offset;
  P.mu_offset = cfg.mu_offset;
  return P;
}

Report run_scenario(const ScenarioConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();

  Report report;
  report.config = cfg;

  const SpaceForm M = spaceform_from_config(cfg);
  const CoefficientProfile P = profile_from_config(cfg);
  const std::vector<CotangentPoint> pts =
      sample_points(M, cfg.samples, cfg.seed, {cfg.t_lo, cfg.t_hi});

  std::vector<double> t_grid;
  t_grid.reserve(pts.size());
  for (const CotangentPoint& pt : pts) t_grid.push_back(pt.t);
  std::sort(t_grid.begin(), t_grid.end());

  SuiteContext ctx{cfg, M, P, pts, t_grid, report.checks};

  for (Suite s : all_suites()) {
    if (std::find(cfg.suites.begin(), cfg.suites.end(), s) == cfg.suites.end())
      continue;
    const std::size_t first = report.checks.size();
    try {
      switch (s) {
        case Suite::Structure: run_structure(ctx); break;
        case Suite::Integrability: run_integrability(ctx); break;
        case Suite::Kahler: run_kahler(ctx); break;
        case Suite::Connection: run_connection(ctx); break;
        case Suite::Curvature: run_curvature(ctx); break;
        case Suite::Einstein: run_einstein(ctx); break;
        case Suite::Holomorphic: run_holomorphic(ctx); break;
      }
    } catch (const std::exception& e) {
      CheckRecord rec;
      rec.suite = s;
      rec.name = "suite-aborted";
      rec.anchor = "-";
      rec.points = "-";
      rec.skipped = true;
      rec.note = e.what();
      report.checks.push_back(std::move(rec));
    }

    bool any_fail = false, any_skip = false;
    for (std::size_t i = first; i < report.checks.size(); ++i) {
      const CheckRecord& r = report.checks[i];
      any_fail = any_fail || (!r.skipped && !r.passed);
      any_skip = any_skip || r.skipped;
    }
    report.suite_verdicts[s] = any_fail ? "fail" : (any_skip ? "skip" : "pass");
  }

  report.overall = true;
  for (const auto& [suite, verdict] : report.suite_verdicts)
    report.overall = report.overall && verdict == "pass";

  const auto stop = std::chrono::steady_clock::now();
  report.runtime_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  return report;
}

std::string Report::body() const {
  std::ostringstream os;
  os << "report-format ctlift/1\n";
  os << "scenario " << config.name << "\n";
  os << "n " << config.n << "\n";
  os << "c " << fmt_double(config.c) << "\n";
  os << "profile " << config.profile << " B=" << fmt_double(config.B)
     << " k=" << fmt_double(config.k)
     << " lambda-const=" << fmt_double(config.lambda_const)
     << " b1-offset=" << fmt_double(config.b1_offset)
     << " mu-offset=" << fmt_double(config.mu_offset) << "\n";
  os << "t-range [" << fmt_double(config.t_lo) << ", "
     << fmt_double(config.t_hi) << "]\n";
  os << "samples " << config.samples << "\n";
  os << "seed " << config.seed << "\n";
  os << "tolerances tight=" << fmt_double(config.tol.tight)
     << " fd=" << fmt_double(config.tol.fd)
     << " curvature=" << fmt_double(config.tol.curvature)
     << " detect=" << fmt_double(config.tol.detect) << "\n";
  os << "suites";
  for (Suite s : all_suites())
    if (std::find(config.suites.begin(), config.suites.end(), s) !=
        config.suites.end())
      os << " " << to_string(s);
  os << "\n";

  for (const CheckRecord& rec : checks) {
    os << "check " << to_string(rec.suite) << "." << rec.name << " anchor=\""
       << rec.anchor << "\" points=\"" << rec.points << "\"";
    if (!rec.skipped)
      os << " max=" << fmt_sci(rec.max_residual)
         << " tol=" << fmt_sci(rec.tolerance);
    os << " verdict=" << (rec.skipped ? "skip" : (rec.passed ? "pass" : "fail"));
    if (!rec.note.empty()) os << " note=\"" << rec.note << "\"";
    os << "\n";
  }

  for (const auto& [suite, verdict] : suite_verdicts)
    os << "suite " << to_string(suite) << " verdict=" << verdict << "\n";
  os << "overall " << (overall ? "pass" : "fail") << "\n";
  return os.str();
}

std::string Report::full_text() const {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "runtime-ms %.3f\n", runtime_ms);
  return body() + buf;
}

std::vector<ScenarioConfig> builtin_scenarios() {
  std::vector<ScenarioConfig> out;

  auto base = [](const std::string& name, int n, const std::string& profile) {
    ScenarioConfig cfg;
    cfg.name = name;
    cfg.n = n;
    cfg.profile = profile;
    cfg.samples = 50;
    cfg.seed = 20260801;
    return cfg;
  };

  for (int n : {2, 3, 5}) {
    const std::string suffix = "-n" + std::to_string(n);

    ScenarioConfig flat = base("flat" + suffix, n, "flat");
    flat.c = 0.0;
    flat.t_lo = 0.0;
    flat.t_hi = 2.0;
    flat.description = "flat base, identity coefficients; every residual ~ 0";
    out.push_back(flat);

    ScenarioConfig c1 = base("case1" + suffix, n, "case1");
    c1.c = 1.0;
    c1.B = 1.0;
    c1.k = 2.0;
    c1.t_lo = 0.0;
    c1.t_hi = 2.0;
    c1.description =
        "radical a1 with lambda tied to it; Einstein with the constant "
        "holomorphic curvature model";
    out.push_back(c1);

    ScenarioConfig c2 = base("case2" + suffix, n, "case2");
    c2.c = 1.0;
    c2.B = 1.0;
    c2.k = 2.0;
    c2.t_lo = 0.0;
    c2.t_hi = 2.0;
    c2.expect[Suite::Holomorphic] = Expectation::NonConstant;
    c2.description =
        "lambda = k/a1; Einstein but the mixed curvature blocks leave the "
        "constant-holomorphic model";
    out.push_back(c2);

    ScenarioConfig c3 = base("case3" + suffix, n, "case3");
    c3.c = 1.0;
    c3.k = 1.0;
    c3.lambda_const = 1.0;
    c3.t_lo = 0.1;
    c3.t_hi = 1.8;
    c3.suites = {Suite::Structure, Suite::Integrability, Suite::Kahler,
                 Suite::Connection, Suite::Curvature, Suite::Einstein};
    c3.description =
        "a1 = k t lambda off the zero section; Einstein on the punctured "
        "bundle";
    out.push_back(c3);
  }

  const double b1_offsets[5] = {0.25, 0.5, 1.0, -0.25, 0.75};
  for (int i = 0; i < 5; ++i) {
    ScenarioConfig v = base("b1-perturb-" + std::to_string(i + 1) + "-n2", 2,
                            "case1");
    v.c = 1.0;
    v.B = 1.0;
    v.k = 2.0;
    v.b1_offset = b1_offsets[i];
    v.t_lo = 0.3;
    v.t_hi = 2.0;
    v.suites = {Suite::Structure, Suite::Integrability};
    v.expect[Suite::Integrability] = Expectation::Violation;
    v.description = "b1 shifted off the integrable value; Nijenhuis detector "
                    "must fire";
    out.push_back(v);
  }

  for (double off : {1.0, 2.0}) {
    ScenarioConfig v = base(
        "mu-offset-" + std::to_string(static_cast<int>(off)) + "-n2", 2,
        "case1");
    v.c = 1.0;
    v.B = 1.0;
    v.k = 2.0;
    v.mu_offset = off;
    v.t_lo = 0.3;
    v.t_hi = 2.0;
    v.suites = {Suite::Structure, Suite::Kahler};
    v.expect[Suite::Kahler] = Expectation::Violation;
    v.description = "mu shifted off lambda'; dphi detector must fire";
    out.push_back(v);
  }

  ScenarioConfig ne = base("non-einstein-n2", 2, "example-lambda1");
  ne.c = 1.0;
  ne.B = 1.0;
  ne.t_lo = 0.3;
  ne.t_hi = 2.0;
  ne.suites = {Suite::Structure, Suite::Integrability, Suite::Kahler,
               Suite::Connection, Suite::Curvature, Suite::Einstein};
  ne.expect[Suite::Einstein] = Expectation::Violation;
  ne.description =
      "radical a1 with constant lambda: Kaehler but not Einstein";
  out.push_back(ne);

  ScenarioConfig holo = base("case2-holo-n2", 2, "case2");
  holo.c = 1.0;
  holo.B = 1.0;
  holo.k = 2.0;
  holo.t_lo = 0.5;
  holo.t_hi = 1.5;
  holo.suites = {Suite::Holomorphic};
  holo.expect[Suite::Holomorphic] = Expectation::NonConstant;
  holo.description = "holomorphic suite alone on a case2 profile";
  out.push_back(holo);

  return out;
}

ScenarioConfig scenario_by_name(const std::string& name) {
  for (const ScenarioConfig& cfg : builtin_scenarios())
    if (cfg.name == name) return cfg;
  throw std::invalid_argument("unknown scenario: " + name);
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config value for '" + key +
                                "' is not a number: " + v);
  }
}

}  // namespace

ScenarioConfig parse_scenario_text(const std::string& text,
                                   const std::string& origin) {
  ScenarioConfig cfg;
  cfg.name = origin;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "name") {
      cfg.name = value;
    } else if (key == "n") {
      cfg.n = static_cast<int>(parse_double(value, key));
    } else if (key == "c") {
      cfg.c = parse_double(value, key);
    } else if (key == "profile" || key == "case") {
      cfg.profile = value;
    } else if (key == "B") {
      cfg.B = parse_double(value, key);
    } else if (key == "k") {
      cfg.k = parse_double(value, key);
    } else if (key == "lambda-const") {
      cfg.lambda_const = parse_double(value, key);
    } else if (key == "b1-offset") {
      cfg.b1_offset = parse_double(value, key);
    } else if (key == "mu-offset") {
      cfg.mu_offset = parse_double(value, key);
    } else if (key == "t-lo") {
      cfg.t_lo = parse_double(value, key);
    } else if (key == "t-hi") {
      cfg.t_hi = parse_double(value, key);
    } else if (key == "samples") {
      cfg.samples = static_cast<int>(parse_double(value, key));
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_double(value, key));
    } else if (key == "chart-radius") {
      cfg.chart_radius = parse_double(value, key);
    } else if (key == "report") {
      cfg.report_path = value;
    } else if (key == "suites") {
      cfg.suites.clear();
      std::istringstream ls(value);
      std::string item;
      while (std::getline(ls, item, ',')) {
        item = trim(item);
        if (!item.empty()) cfg.suites.push_back(suite_from_string(item));
      }
      if (cfg.suites.empty())
        throw std::invalid_argument(origin + ": suites list is empty");
    } else if (key.rfind("tol.", 0) == 0) {
      const std::string which = key.substr(4);
      const double v = parse_double(value, key);
      if (v <= 0.0)
        throw std::invalid_argument(origin + ": tolerances must be positive");
      if (which == "tight") cfg.tol.tight = v;
      else if (which == "fd") cfg.tol.fd = v;
      else if (which == "curvature") cfg.tol.curvature = v;
      else if (which == "detect") cfg.tol.detect = v;
      else throw std::invalid_argument(origin + ": unknown tolerance " + which);
    } else if (key.rfind("expect.", 0) == 0) {
      cfg.expect[suite_from_string(key.substr(7))] =
          expectation_from_string(value);
    } else {
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    }
  }

  if (cfg.samples < 1)
    throw std::invalid_argument(origin + ": samples must be >= 1");
  if (cfg.t_lo < 0.0 || cfg.t_hi < cfg.t_lo)
    throw std::invalid_argument(origin + ": need 0 <= t-lo <= t-hi");
  if (cfg.profile == "case3" && cfg.t_lo <= 0.0)
    throw std::invalid_argument(origin +
                                ": case3 excludes the zero section; t-lo > 0");
  return cfg;
}

void apply_env_overrides(ScenarioConfig& cfg) {
  if (const char* seed = std::getenv("CTLIFT_SEED")) {
    cfg.seed = static_cast<std::uint64_t>(std::strtoull(seed, nullptr, 10));
  }
  if (const char* path = std::getenv("CTLIFT_REPORT")) {
    cfg.report_path = path;
  }
}

}  // namespace ctlift
