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

#include <cmath>
#include <string>
#include <vector>

#include "roc/json_io.h"

namespace roc {

using nlohmann::json;

namespace {

json Num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double NumFrom(const json& j, const std::string& what) {
  if (j.is_string()) {
    if (j == "inf") return kInfinity;
    if (j == "-inf") return -kInfinity;
  }
  if (!j.is_number()) throw ModelError("expected a number for " + what);
  return j.get<double>();
}

const json& Field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ModelError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

json Vector(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(Num(v(i)));
  return out;
}

json Matrix(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(Vector(m.row(i).transpose()));
  return out;
}

Eigen::VectorXd VectorFrom(const json& j, const std::string& what) {
  if (!j.is_array()) throw ModelError("expected an array for " + what);
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = NumFrom(j[i], what);
  }
  return v;
}

Eigen::MatrixXd MatrixFrom(const json& j, Eigen::Index cols, const std::string& what) {
  if (!j.is_array()) throw ModelError("expected a matrix for " + what);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Eigen::VectorXd row = VectorFrom(j[i], what);
    if (row.size() != cols) throw ModelError("ragged matrix in " + what);
    m.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return m;
}

json Expr(const LinExpr& e) {
  json terms = json::object();
  for (const auto& [id, c] : e.terms()) terms[id] = c;
  return {{"terms", terms}, {"constant", e.constant()}};
}

LinExpr ExprFrom(const json& j) {
  LinExpr e;
  for (const auto& [id, c] : Field(j, "terms").items()) {
    e.AddTerm(id, NumFrom(c, "coefficient of " + id));
  }
  e.SetConstant(NumFrom(Field(j, "constant"), "constant"));
  return e;
}

json Vars(const std::vector<VariableDecl>& vars) {
  json out = json::array();
  for (const VariableDecl& v : vars) {
    json jv = {{"id", v.id},
               {"stage", v.stage == Stage::kWaitAndSee ? "wait_and_see"
                                                       : "here_and_now"},
               {"lower", Num(v.lower)},
               {"upper", Num(v.upper)}};
    if (v.pinned_one) jv["pinned_one"] = true;
    if (v.stage == Stage::kWaitAndSee) {
      jv["rule"] = v.rule == RuleKind::kStatic ? "static" : "linear";
    }
    out.push_back(jv);
  }
  return out;
}

std::vector<VariableDecl> VarsFrom(const json& j) {
  std::vector<VariableDecl> out;
  for (const json& jv : j) {
    VariableDecl v;
    v.id = Field(jv, "id").get<std::string>();
    const std::string stage = Field(jv, "stage").get<std::string>();
    if (stage == "wait_and_see") {
      v.stage = Stage::kWaitAndSee;
    } else if (stage != "here_and_now") {
      throw ModelError("unknown stage '" + stage + "'");
    }
    v.lower = NumFrom(Field(jv, "lower"), "lower bound");
    v.upper = NumFrom(Field(jv, "upper"), "upper bound");
    v.pinned_one = jv.value("pinned_one", false);
    if (jv.value("rule", std::string("linear")) == "static") v.rule = RuleKind::kStatic;
    out.push_back(v);
  }
  return out;
}

const char* SenseName(Sense s) {
  switch (s) {
    case Sense::kLessEqual:
      return "<=";
    case Sense::kGreaterEqual:
      return ">=";
    case Sense::kEqual:
      return "=";
  }
  return "?";
}

Sense SenseFrom(const json& j) {
  const std::string s = j.get<std::string>();
  if (s == "<=") return Sense::kLessEqual;
  if (s == ">=") return Sense::kGreaterEqual;
  if (s == "=") return Sense::kEqual;
  throw ModelError("unknown sense '" + s + "'");
}

json Block(const std::optional<UncertainBlock>& b) {
  if (!b) return nullptr;
  return {{"on", b->on}, {"P", Matrix(b->P)}, {"set", ToJson(b->set)}};
}

std::optional<UncertainBlock> BlockFrom(const json& j) {
  if (j.is_null()) return std::nullopt;
  UncertaintySet set = SetFromJson(Field(j, "set"));
  Eigen::MatrixXd P = MatrixFrom(Field(j, "P"), set.dim(), "P");
  return UncertainBlock{Field(j, "on").get<std::vector<std::string>>(), P, set};
}

json ModelJson(const Model& model, const char* stage) {
  const Objective& obj = model.objective;
  json constraints = json::array();
  for (const Constraint& row : model.constraints) {
    json rhs_u = nullptr;
    if (row.rhs_uncertainty) {
      rhs_u = {{"p", Vector(row.rhs_uncertainty->p)},
               {"set", ToJson(row.rhs_uncertainty->set)}};
    }
    constraints.push_back({{"id", row.id},
                           {"lhs", Expr(row.lhs)},
                           {"sense", SenseName(row.sense)},
                           {"rhs", row.rhs},
                           {"adaptive", Expr(row.adaptive)},
                           {"uncertainty", Block(row.uncertainty)},
                           {"rhs_uncertainty", rhs_u}});
  }
  return {{"roc_schema", kJsonSchemaVersion},
          {"stage", stage},
          {"variables", Vars(model.vars)},
          {"objective",
           {{"sense", obj.sense == ObjectiveSense::kMaximize ? "max" : "min"},
            {"expr", Expr(obj.expr)},
            {"adaptive", Expr(obj.adaptive)},
            {"uncertainty", Block(obj.uncertainty)}}},
          {"constraints", constraints},
          {"adaptive_set",
           model.adaptive_set ? ToJson(*model.adaptive_set) : json(nullptr)}};
}

json Rows(const std::vector<LinearRow>& rows) {
  json out = json::array();
  for (const LinearRow& r : rows) {
    out.push_back({{"id", r.id},
                   {"lhs", Expr(r.lhs)},
                   {"sense", SenseName(r.sense)},
                   {"rhs", r.rhs}});
  }
  return out;
}

json Args(const std::vector<LinExpr>& arg) {
  json out = json::array();
  for (const LinExpr& e : arg) out.push_back(Expr(e));
  return out;
}

}  // namespace

json ToJson(const UncertaintySet& set) {
  if (const auto* ball = set.As<NormBall>()) {
    return {{"kind", "ball"},
            {"p", Num(ball->p.value())},
            {"r", ball->radius},
            {"dim", ball->dim}};
  }
  if (const auto* poly = set.As<Polyhedral>()) {
    return {{"kind", "poly"}, {"D", Matrix(poly->D)}, {"d", Vector(poly->d)}};
  }
  const std::vector<UncertaintySet>& members =
      set.As<Intersection>() ? set.As<Intersection>()->members
                             : set.As<MinkowskiSum>()->members;
  json out = {{"kind", set.As<Intersection>() ? "intersect" : "minkowski"},
              {"members", json::array()}};
  for (const auto& m : members) out["members"].push_back(ToJson(m));
  return out;
}

UncertaintySet SetFromJson(const json& j) {
  const std::string kind = Field(j, "kind").get<std::string>();
  if (kind == "ball") {
    return UncertaintySet(NormBall{NormIndex(NumFrom(Field(j, "p"), "p")),
                                   NumFrom(Field(j, "r"), "r"),
                                   Field(j, "dim").get<int>()});
  }
  if (kind == "poly") {
    const Eigen::VectorXd d = VectorFrom(Field(j, "d"), "d");
    const json& D = Field(j, "D");
    const Eigen::Index cols =
        D.empty() ? 0 : static_cast<Eigen::Index>(D.at(0).size());
    return UncertaintySet(Polyhedral{MatrixFrom(D, cols, "D"), d});
  }
  if (kind == "intersect" || kind == "minkowski") {
    std::vector<UncertaintySet> members;
    for (const json& m : Field(j, "members")) members.push_back(SetFromJson(m));
    if (kind == "intersect") return UncertaintySet(Intersection{std::move(members)});
    return UncertaintySet(MinkowskiSum{std::move(members)});
  }
  throw ModelError("unknown set kind '" + kind + "'");
}

json ToJson(const Model& model) { return ModelJson(model, "model"); }

json ToJson(const CanonicalModel& model) {
  return ModelJson(model.model(), "canonical");
}

Model ModelFromJson(const json& j) {
  try {
    const std::string stage = Field(j, "stage").get<std::string>();
    if (stage != "model" && stage != "canonical") {
      throw ModelError("cannot read a '" + stage + "' dump as a model");
    }
    Model model;
    model.vars = VarsFrom(Field(j, "variables"));
    const json& obj = Field(j, "objective");
    model.objective.sense = Field(obj, "sense") == "max"
                                ? ObjectiveSense::kMaximize
                                : ObjectiveSense::kMinimize;
    model.objective.expr = ExprFrom(Field(obj, "expr"));
    model.objective.adaptive = ExprFrom(Field(obj, "adaptive"));
    model.objective.uncertainty = BlockFrom(Field(obj, "uncertainty"));
    for (const json& jr : Field(j, "constraints")) {
      Constraint row;
      row.id = Field(jr, "id").get<std::string>();
      row.lhs = ExprFrom(Field(jr, "lhs"));
      row.sense = SenseFrom(Field(jr, "sense"));
      row.rhs = NumFrom(Field(jr, "rhs"), "rhs");
      row.adaptive = ExprFrom(Field(jr, "adaptive"));
      row.uncertainty = BlockFrom(Field(jr, "uncertainty"));
      const json& ru = Field(jr, "rhs_uncertainty");
      if (!ru.is_null()) {
        row.rhs_uncertainty = RhsUncertainty{VectorFrom(Field(ru, "p"), "p"),
                                             SetFromJson(Field(ru, "set"))};
      }
      model.constraints.push_back(std::move(row));
    }
    const json& shared = Field(j, "adaptive_set");
    if (!shared.is_null()) model.adaptive_set = SetFromJson(shared);
    Validate(model);
    return model;
  } catch (const json::exception& e) {
    throw ModelError(std::string("malformed model JSON: ") + e.what());
  }
}

json ToJson(const RobustModel& model) {
  json rows = json::array();
  for (const RobustRow& r : model.rows) {
    json norms = json::array();
    for (const NormTerm& t : r.norms) {
      norms.push_back(
          {{"weight", t.weight}, {"q", Num(t.q.value())}, {"arg", Args(t.arg)}});
    }
    rows.push_back({{"id", r.id},
                    {"lhs", Expr(r.lhs)},
                    {"sense", SenseName(r.sense)},
                    {"rhs", r.rhs},
                    {"norms", norms}});
  }
  return {{"roc_schema", kJsonSchemaVersion},
          {"stage", "robust"},
          {"variables", Vars(model.vars)},
          {"objective", Expr(model.objective)},
          {"rows", rows}};
}

json ToJson(const DeterministicModel& model) {
  json soc = json::array();
  for (const SocRow& r : model.soc_rows) {
    soc.push_back({{"id", r.id}, {"t", r.t}, {"arg", Args(r.arg)}});
  }
  return {{"roc_schema", kJsonSchemaVersion},
          {"stage", "lowered"},
          {"variables", Vars(model.vars)},
          {"objective", Expr(model.objective)},
          {"linear_rows", Rows(model.linear_rows)},
          {"soc_rows", soc}};
}

json ToJson(const Solution& solution) {
  json values = json::object();
  for (const auto& [id, v] : solution.values) values[id] = v;
  return {{"status", ToString(solution.status)},
          {"objective", solution.status == SolveStatus::kOptimal
                            ? json(solution.objective)
                            : json(nullptr)},
          {"values", values},
          {"iterations", solution.iterations}};
}

json ToJson(const VerificationReport& report) {
  return {{"samples", report.samples},
          {"points_evaluated", report.points_evaluated},
          {"violations", report.violations},
          {"max_violation", report.max_violation},
          {"oracle_gap", report.oracle_gap ? Num(*report.oracle_gap) : json(nullptr)},
          {"seed", report.seed},
          {"rejection_failures", report.rejection_failures},
          {"verdict", report.pass ? "pass" : "fail"}};
}

std::string EmitJson(const json& j) { return j.dump(2) + "\n"; }

}  // namespace roc
