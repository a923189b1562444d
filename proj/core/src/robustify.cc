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

#include <string>
#include <vector>

#include "roc/robust.h"

namespace roc {

RobustifiedRow RobustifyRow(const Constraint& row, AuxNamer& namer) {
  if (row.sense != Sense::kLessEqual) {
    throw ModelError("row '" + row.id + "' must be '<=' before robustification");
  }
  if (row.HasAdaptive()) {
    throw ModelError("row '" + row.id +
                     "' still has wait-and-see terms; apply the decision rule "
                     "first");
  }
  if (row.rhs_uncertainty) {
    throw ModelError("row '" + row.id + "' has an unfolded uncertain rhs");
  }
  RobustifiedRow out;
  RobustRow main{row.id, row.lhs, Sense::kLessEqual, row.rhs, {}};
  if (row.uncertainty) {
    SupportResult support = SupportConjugate(
        row.uncertainty->set, row.uncertainty->SupportArgument(), namer);
    main.lhs += support.affine;
    main.norms = std::move(support.norm_terms);
    out.rows.push_back(std::move(main));
    for (auto& r : support.aux_rows) out.rows.push_back(std::move(r));
    out.new_vars = std::move(support.aux_vars);
  } else {
    out.rows.push_back(std::move(main));
  }
  return out;
}

RobustModel Robustify(const CanonicalModel& canonical) {
  const Model& model = canonical.model();
  if (model.HasAdaptive()) {
    throw ModelError(
        "model has wait-and-see variables; apply the decision rule first");
  }
  RobustModel out;
  out.vars = model.vars;
  out.objective = model.objective.expr;
  AuxNamer namer("rc");
  for (const Constraint& row : model.constraints) {
    RobustifiedRow r = RobustifyRow(row, namer);
    for (auto& v : r.new_vars) out.vars.push_back(std::move(v));
    for (auto& rr : r.rows) out.rows.push_back(std::move(rr));
  }
  return out;
}

}  // namespace roc
