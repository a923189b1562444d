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

// Linear decision rules y(z) = u + V^T z for wait-and-see variables.

#ifndef ROC_ARO_H_
#define ROC_ARO_H_

#include <map>
#include <string>
#include <vector>

#include "roc/canonicalize.h"
#include "roc/model.h"

namespace roc {

// Variables standing in for one wait-and-see variable y_j: the intercept u_j
// and one slope per uncertainty coordinate (none for a static rule).
struct LdrAssignment {
  std::string variable;
  std::string intercept;
  std::vector<std::string> slopes;
};

std::string LdrInterceptId(const std::string& variable);
std::string LdrSlopeId(const std::string& variable, int coordinate);

std::vector<LdrAssignment> MakeLdrAssignments(const Model& model);

// Replaces every wait-and-see variable by its decision rule. An adaptive row
// (a_bar + P z)^T x + d^T y(z) <= b becomes the uncertain row
//   a_bar^T x + d^T u + (P^T x + V d)^T z <= b
// over the model's shared set, and each finite bound on y_j becomes a robust
// row in (u_j, V e_j). Models without wait-and-see variables pass through.
CanonicalModel ApplyLdr(const CanonicalModel& model);

// Reads u and V back out of solution values.
DecisionRule ExtractDecisionRule(const Model& model,
                                 const std::map<std::string, double>& values);

}  // namespace roc

#endif  // ROC_ARO_H_
