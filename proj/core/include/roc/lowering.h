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

// Lowering of symbolic norm terms and the CPLEX LP writer.

#ifndef ROC_LOWERING_H_
#define ROC_LOWERING_H_

#include <string>
#include <vector>

#include "roc/model.h"
#include "roc/robust.h"

namespace roc {

struct LinearRow {
  std::string id;
  LinExpr lhs;
  Sense sense = Sense::kLessEqual;  // "<=" or "="
  double rhs = 0.0;

  bool operator==(const LinearRow& other) const = default;
};

// t >= ||arg||_2 with t >= 0.
struct SocRow {
  std::string id;
  std::string t;
  std::vector<LinExpr> arg;

  bool operator==(const SocRow& other) const = default;
};

struct DeterministicModel {
  std::vector<VariableDecl> vars;
  LinExpr objective;  // minimized
  std::vector<LinearRow> linear_rows;
  std::vector<SocRow> soc_rows;

  const VariableDecl* FindVar(const std::string& id) const;
  bool operator==(const DeterministicModel& other) const = default;
};

// q = 1:   r*||w||_1   -> r * sum t_i,   t_i >= w_i, t_i >= -w_i
// q = inf: r*||w||_inf -> r * t,         t >= w_i, t >= -w_i
// q = 2:   r*||w||_2   -> r * t,         t >= ||w||_2
// Zero-weight terms vanish. Any other q throws UnsupportedError naming the row.
// ">=" rows (never produced by Robustify) are negated into "<=".
DeterministicModel LowerNorms(const RobustModel& model);

struct LpWriterOptions {
  // Write cone rows as "\ soc" comment lines instead of failing.
  bool allow_soc_comment = false;
};

// CPLEX LP text (Minimize / Subject To / Bounds / End), 17 significant
// digits, rows and bounds in model order. No trailing newline.
// Throws UnsupportedError for cone rows unless allow_soc_comment is set.
std::string EmitLp(const DeterministicModel& model,
                   const LpWriterOptions& options = {});

}  // namespace roc

#endif  // ROC_LOWERING_H_
