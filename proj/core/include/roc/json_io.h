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

// JSON dumps of every pipeline stage (schema: docs/json_schema.md). Objects
// carry "roc_schema": 1 and a "stage" tag; keys are sorted.

#ifndef ROC_JSON_IO_H_
#define ROC_JSON_IO_H_

#include <string>

#include "nlohmann/json.hpp"
#include "roc/canonicalize.h"
#include "roc/lowering.h"
#include "roc/model.h"
#include "roc/robust.h"
#include "roc/solver.h"
#include "roc/verifier.h"

namespace roc {

inline constexpr int kJsonSchemaVersion = 1;

nlohmann::json ToJson(const UncertaintySet& set);
nlohmann::json ToJson(const Model& model);
nlohmann::json ToJson(const CanonicalModel& model);
nlohmann::json ToJson(const RobustModel& model);
nlohmann::json ToJson(const DeterministicModel& model);
nlohmann::json ToJson(const Solution& solution);
nlohmann::json ToJson(const VerificationReport& report);

UncertaintySet SetFromJson(const nlohmann::json& j);
// Accepts "model" and "canonical" stage dumps. Throws ModelError.
Model ModelFromJson(const nlohmann::json& j);

// Pretty-printed with two-space indent and a trailing newline.
std::string EmitJson(const nlohmann::json& j);

}  // namespace roc

#endif  // ROC_JSON_IO_H_
