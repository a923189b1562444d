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
#include <utility>

#include "roc/canonicalize.h"

namespace roc {

CanonicalModel::CanonicalModel(Model model) : model_(std::move(model)) {
  Validate(model_);
  const Objective& obj = model_.objective;
  if (obj.sense != ObjectiveSense::kMinimize) {
    throw ModelError("canonical model must minimize");
  }
  if (obj.uncertainty || obj.adaptive.HasTerms()) {
    throw ModelError("canonical objective must be certain and here-and-now");
  }
  for (const Constraint& row : model_.constraints) {
    if (row.sense != Sense::kLessEqual) {
      throw ModelError("canonical row '" + row.id + "' is not '<='");
    }
    if (row.rhs_uncertainty) {
      throw ModelError("canonical row '" + row.id + "' has an uncertain rhs");
    }
    if (row.lhs.constant() != 0.0) {
      throw ModelError("canonical row '" + row.id + "' has a constant lhs term");
    }
  }
}

namespace {

template <typename M>
M Negated(const M& m) {
  return (-m).unaryExpr([](double v) { return v == 0.0 ? 0.0 : v; });
}

void Negate(UncertainBlock& block) { block.P = Negated(block.P); }

const std::string& PinnedVar(Model& model) {
  for (const VariableDecl& v : model.vars) {
    if (v.pinned_one) return v.id;
  }
  if (model.FindVar(kPinnedOneVar) != nullptr) {
    throw ModelError(std::string("variable id '") + kPinnedOneVar +
                     "' is reserved");
  }
  VariableDecl one;
  one.id = kPinnedOneVar;
  one.lower = 1.0;
  one.upper = 1.0;
  one.pinned_one = true;
  model.vars.push_back(one);
  return model.vars.back().id;
}

// lhs <= b + p^T z  ->  lhs - (b + p^T z) x1 <= 0 with x1 pinned to 1.
void FoldRhs(Model& model, Constraint& row) {
  const std::string one = PinnedVar(model);
  const RhsUncertainty& ru = *row.rhs_uncertainty;
  row.lhs.AddTerm(one, -row.rhs);
  row.rhs = 0.0;
  if (!row.uncertainty) {
    row.uncertainty = UncertainBlock{{}, Eigen::MatrixXd::Zero(0, ru.set.dim()),
                                     ru.set};
  }
  UncertainBlock& block = *row.uncertainty;
  const Eigen::Index n = block.P.rows();
  block.P.conservativeResize(n + 1, Eigen::NoChange);
  block.P.row(n) = Negated(ru.p).transpose();
  block.on.push_back(one);
  row.rhs_uncertainty.reset();
}

}  // namespace

CanonicalModel Canonicalize(const Model& input) {
  Validate(input);
  Model model = input;
  Objective& obj = model.objective;

  if (obj.sense == ObjectiveSense::kMaximize) {
    obj.expr = -obj.expr;
    obj.adaptive = -obj.adaptive;
    if (obj.uncertainty) Negate(*obj.uncertainty);
    obj.sense = ObjectiveSense::kMinimize;
  }

  std::vector<Constraint> rows;
  if (obj.uncertainty || obj.adaptive.HasTerms()) {
    if (model.FindVar(kEpigraphVar) != nullptr) {
      throw ModelError(std::string("variable id '") + kEpigraphVar +
                       "' is reserved");
    }
    VariableDecl t;
    t.id = kEpigraphVar;
    t.lower = -kInfinity;
    model.vars.push_back(t);

    Constraint epi;
    epi.id = kEpigraphVar;
    epi.lhs = obj.expr;
    epi.lhs.SetConstant(0.0);
    epi.lhs.AddTerm(kEpigraphVar, -1.0);
    epi.uncertainty = obj.uncertainty;
    epi.adaptive = obj.adaptive;

    LinExpr objective = LinExpr::Term(kEpigraphVar, 1.0);
    objective.SetConstant(obj.expr.constant());
    obj.expr = objective;
    obj.adaptive = LinExpr();
    obj.uncertainty.reset();
    rows.push_back(std::move(epi));
  }

  for (Constraint row : model.constraints) {
    row.rhs -= row.lhs.constant();
    row.lhs.SetConstant(0.0);
    if (row.sense == Sense::kGreaterEqual) {
      row.lhs = -row.lhs;
      row.adaptive = -row.adaptive;
      row.rhs = -row.rhs;
      if (row.uncertainty) Negate(*row.uncertainty);
      if (row.rhs_uncertainty) {
        row.rhs_uncertainty->p = Negated(row.rhs_uncertainty->p);
      }
      row.sense = Sense::kLessEqual;
    }
    if (row.rhs_uncertainty && row.rhs_uncertainty->set.IsZero()) {
      row.rhs_uncertainty.reset();
    }
    if (row.rhs_uncertainty) FoldRhs(model, row);
    if (row.rhs == 0.0) row.rhs = 0.0;  // drop -0
    if (row.sense == Sense::kEqual) {
      Constraint upper = row;
      upper.id = row.id + ".ub";
      upper.sense = Sense::kLessEqual;
      Constraint lower = row;
      lower.id = row.id + ".lb";
      lower.sense = Sense::kLessEqual;
      lower.lhs = -row.lhs;
      lower.rhs = row.rhs == 0.0 ? 0.0 : -row.rhs;
      rows.push_back(std::move(upper));
      rows.push_back(std::move(lower));
    } else {
      rows.push_back(std::move(row));
    }
  }
  model.constraints = std::move(rows);
  return CanonicalModel(std::move(model));
}

double ObjectiveSign(const Model& original) {
  return original.objective.sense == ObjectiveSense::kMaximize ? -1.0 : 1.0;
}

}  // namespace roc
