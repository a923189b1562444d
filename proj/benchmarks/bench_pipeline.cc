// Copyright 2026 The roc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "benchmark/benchmark.h"
#include "roc/aro.h"
#include "roc/canonicalize.h"
#include "roc/dsl.h"
#include "roc/lowering.h"
#include "roc/pipeline.h"
#include "roc/robust.h"
#include "roc/solver.h"
#include "roc/verifier.h"

namespace {

std::string Fixture(const std::string& name) {
  std::ifstream in(std::string(ROC_FIXTURE_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void BM_Parse(benchmark::State& state) {
  const std::string text = Fixture("ex1.roc");
  for (auto _ : state) benchmark::DoNotOptimize(roc::ParseModel(text));
}
BENCHMARK(BM_Parse);

void BM_Reformulate(benchmark::State& state) {
  const roc::Model m = roc::ParseModel(Fixture("aro_inventory.roc"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        roc::LowerModel(roc::DecideModel(roc::Canonicalize(m))));
  }
}
BENCHMARK(BM_Reformulate);

void BM_SolveReformulated(benchmark::State& state) {
  const roc::DeterministicModel d = roc::LowerModel(
      roc::DecideModel(roc::Canonicalize(roc::ParseModel(Fixture("ex1.roc")))));
  for (auto _ : state) benchmark::DoNotOptimize(roc::SolveDeterministic(d));
}
BENCHMARK(BM_SolveReformulated);

void BM_CuttingPlane(benchmark::State& state) {
  const roc::CanonicalModel c =
      roc::DecideModel(roc::Canonicalize(roc::ParseModel(Fixture("ex1.roc"))));
  for (auto _ : state) benchmark::DoNotOptimize(roc::CuttingPlaneSolve(c));
}
BENCHMARK(BM_CuttingPlane);

void BM_Sample(benchmark::State& state) {
  const roc::UncertaintySet set = roc::ParseUncertaintySpec(
      "intersect(ball(p=2, r=1, dim=4), ball(p=inf, r=0.8, dim=4))");
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        roc::SampleUncertaintySet(set, static_cast<int>(state.range(0)), 1));
  }
}
BENCHMARK(BM_Sample)->Arg(1000)->Arg(10000);

void BM_Pipeline(benchmark::State& state) {
  const roc::Model m = roc::ParseModel(Fixture("ex1.roc"));
  roc::PipelineOptions options;
  options.samples = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(roc::RunPipeline(m, options));
}
BENCHMARK(BM_Pipeline)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
