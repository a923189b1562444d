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

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "roc/aro.h"

namespace roc {

std::string LdrInterceptId(const std::string& variable) {
  return "ldr.u." + variable;
}

std::string LdrSlopeId(const std::string& variable, int coordinate) {
  return "ldr.v." + variable + "." + std::to_string(coordinate);
}

std::vector<LdrAssignment> MakeLdrAssignments(const Model& model) {
  std::vector<LdrAssignment> out;
  const int dim = model.adaptive_set ? model.adaptive_set->dim() : 0;
  for (const VariableDecl& v : model.vars) {
    if (v.stage != Stage::kWaitAndSee) continue;
    LdrAssignment a{v.id, LdrInterceptId(v.id), {}};
    if (v.rule == RuleKind::kLinear) {
      for (int k = 0; k < dim; ++k) a.slopes.push_back(LdrSlopeId(v.id, k));
    }
    out.push_back(std::move(a));
  }
  return out;
}

namespace {

// Appends the slope variables of `a`, weighted by `d`, to the block so that
// the support argument gains d * (V e_a).
void AddSlopes(UncertainBlock& block, const LdrAssignment& a, double d) {
  const int dim = block.set.dim();
  for (int k = 0; k < dim; ++k) {
    const Eigen::Index n = block.P.rows();
    block.P.conservativeResize(n + 1, Eigen::NoChange);
    block.P.row(n).setZero();
    block.P(n, k) = d;
    block.on.push_back(a.slopes[static_cast<std::size_t>(k)]);
  }
}

Constraint BoundRow(const std::string& id, const LdrAssignment& a, double sign,
                    double bound, const UncertaintySet& set) {
  Constraint row;
  row.id = id;
  row.lhs = LinExpr::Term(a.intercept, sign);
  row.rhs = sign * bound;
  if (row.rhs == 0.0) row.rhs = 0.0;
  if (!a.slopes.empty()) {
    UncertainBlock block{{}, Eigen::MatrixXd::Zero(0, set.dim()), set};
    AddSlopes(block, a, sign);
    row.uncertainty = std::move(block);
  }
  return row;
}

}  // namespace

CanonicalModel ApplyLdr(const CanonicalModel& canonical) {
  const Model& in = canonical.model();
  if (!in.HasAdaptive()) return canonical;
  const UncertaintySet& set = *in.adaptive_set;
  const std::vector<LdrAssignment> assignments = MakeLdrAssignments(in);
  std::map<std::string, const LdrAssignment*> by_var;
  for (const LdrAssignment& a : assignments) by_var[a.variable] = &a;

  Model out;
  out.objective = in.objective;
  out.adaptive_set = in.adaptive_set;
  for (const VariableDecl& v : in.vars) {
    if (v.stage != Stage::kWaitAndSee) {
      out.vars.push_back(v);
      continue;
    }
    const LdrAssignment& a = *by_var.at(v.id);
    VariableDecl u;
    u.id = a.intercept;
    u.lower = -kInfinity;
    out.vars.push_back(u);
    for (const std::string& s : a.slopes) {
      VariableDecl slope;
      slope.id = s;
      slope.lower = -kInfinity;
      out.vars.push_back(slope);
    }
  }

  for (const Constraint& row : in.constraints) {
    Constraint r = row;
    r.adaptive = LinExpr();
    for (const auto& [y, d] : row.adaptive.terms()) {
      const LdrAssignment& a = *by_var.at(y);
      r.lhs.AddTerm(a.intercept, d);
      if (a.slopes.empty()) continue;
      if (!r.uncertainty) {
        r.uncertainty = UncertainBlock{{}, Eigen::MatrixXd::Zero(0, set.dim()), set};
      }
      AddSlopes(*r.uncertainty, a, d);
    }
    out.constraints.push_back(std::move(r));
  }

  for (const VariableDecl& v : in.vars) {
    if (v.stage != Stage::kWaitAndSee) continue;
    const LdrAssignment& a = *by_var.at(v.id);
    if (std::isfinite(v.lower)) {
      out.constraints.push_back(
          BoundRow("ldr.lb." + v.id, a, -1.0, v.lower, set));
    }
    if (std::isfinite(v.upper)) {
      out.constraints.push_back(
          BoundRow("ldr.ub." + v.id, a, 1.0, v.upper, set));
    }
  }
  return CanonicalModel(std::move(out));
}

DecisionRule ExtractDecisionRule(const Model& model,
                                 const std::map<std::string, double>& values) {
  DecisionRule rule;
  rule.ids = model.WaitAndSeeIds();
  const int dim = model.adaptive_set ? model.adaptive_set->dim() : 0;
  const auto n = static_cast<Eigen::Index>(rule.ids.size());
  rule.u = Eigen::VectorXd::Zero(n);
  rule.V = Eigen::MatrixXd::Zero(dim, n);
  rule.kind = RuleKind::kStatic;
  auto lookup = [&values](const std::string& id) {
    auto it = values.find(id);
    return it == values.end() ? 0.0 : it->second;
  };
  for (const LdrAssignment& a : MakeLdrAssignments(model)) {
    const auto j = static_cast<Eigen::Index>(
        std::find(rule.ids.begin(), rule.ids.end(), a.variable) - rule.ids.begin());
    rule.u(j) = lookup(a.intercept);
    if (!a.slopes.empty()) rule.kind = RuleKind::kLinear;
    for (std::size_t k = 0; k < a.slopes.size(); ++k) {
      rule.V(static_cast<Eigen::Index>(k), j) = lookup(a.slopes[k]);
    }
  }
  return rule;
}

}  // namespace roc
