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

#include <benchmark/benchmark.h>

#include "ctlift/curvature.hpp"
#include "ctlift/harness.hpp"
#include "ctlift/integrability.hpp"
#include "ctlift/lifts.hpp"

namespace {

struct Fixture {
  ctlift::SpaceForm M;
  ctlift::CoefficientProfile P;
  ctlift::CotangentPoint pt;

  explicit Fixture(int n)
      : M(ctlift::SpaceForm::with_default_radius(n, 1.0)),
        P(ctlift::make_case_profile(ctlift::CaseTag::Case1,
                                    {1.0, 1.0, 2.0, {}, {}})),
        pt(ctlift::sample_points(M, 1, 42, {0.5, 1.5}).front()) {}
};

void BM_structure_blocks(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto blocks = ctlift::structure_blocks_at(f.M, f.P, f.pt);
    benchmark::DoNotOptimize(blocks);
  }
}
BENCHMARK(BM_structure_blocks)->Arg(2)->Arg(3)->Arg(5);

void BM_connection_blocks(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto blocks = ctlift::connection_blocks_at(f.M, f.P, f.pt);
    benchmark::DoNotOptimize(blocks);
  }
}
BENCHMARK(BM_connection_blocks)->Arg(2)->Arg(3)->Arg(5);

void BM_curvature_blocks(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto blocks = ctlift::curvature_blocks_at(f.M, f.P, f.pt);
    benchmark::DoNotOptimize(blocks);
  }
}
BENCHMARK(BM_curvature_blocks)->Arg(2)->Arg(3)->Arg(5);

void BM_koszul_table(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto table = ctlift::koszul_connection_table(f.M, f.P, f.pt);
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(BM_koszul_table)->Arg(2)->Arg(3)->Arg(5);

void BM_curvature_fd_oracle(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto result = ctlift::curvature_fd_oracle(f.M, f.P, f.pt);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_curvature_fd_oracle)->Arg(2)->Arg(3);

void BM_nijenhuis_numeric(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto nij = ctlift::nijenhuis_numeric(f.M, f.P, f.pt,
                                         ctlift::FrameField::delta(0),
                                         ctlift::FrameField::delta(1));
    benchmark::DoNotOptimize(nij);
  }
}
BENCHMARK(BM_nijenhuis_numeric)->Arg(2)->Arg(3)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
