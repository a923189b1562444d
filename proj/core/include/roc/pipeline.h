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

// End-to-end driver: parse -> canonicalize -> LDR -> robustify -> lower ->
// solve -> verify. The CLI is a thin shell over this.

#ifndef ROC_PIPELINE_H_
#define ROC_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <string>

#include "nlohmann/json.hpp"
#include "roc/canonicalize.h"
#include "roc/lowering.h"
#include "roc/model.h"
#include "roc/robust.h"
#include "roc/solver.h"
#include "roc/verifier.h"

namespace roc {

enum class SolveMethod { kReformulate, kCutPlane, kBoth };

const char* ToString(SolveMethod method);
std::optional<SolveMethod> ParseSolveMethod(const std::string& text);

// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitParseError = 2,
  kExitNotOptimal = 3,
  kExitVerifyFailed = 4,
};

struct PipelineOptions {
  SolveMethod method = SolveMethod::kBoth;
  double tol = 1e-6;
  int samples = 1000;
  std::uint64_t seed = 42;
  bool verify = true;
};

struct PipelineResult {
  Model model;
  std::optional<CanonicalModel> canonical;  // before LDR
  std::optional<CanonicalModel> decided;    // after LDR
  std::optional<RobustModel> robust;
  std::optional<DeterministicModel> lowered;
  std::optional<Solution> reformulated;
  std::optional<Solution> cutting_plane;
  std::optional<VerificationReport> report;
  std::string cutting_plane_skipped;  // reason, when the oracle cannot run
  int exit_code = kExitOk;
};

// Stages shared by several CLI commands.
CanonicalModel DecideModel(const CanonicalModel& canonical);
DeterministicModel LowerModel(const CanonicalModel& decided);

// Runs every stage on an already parsed model.
PipelineResult RunPipeline(const Model& model, const PipelineOptions& options);

// The JSON run report written by "roc pipeline"; byte-stable for a fixed seed.
nlohmann::json PipelineReportJson(const PipelineResult& result,
                                  const PipelineOptions& options);

}  // namespace roc

#endif  // ROC_PIPELINE_H_
