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

#include "roc/model.h"

#include <cmath>
#include <set>
#include <sstream>

namespace roc {

// ---------------------------------------------------------------------------
// LinExpr

LinExpr LinExpr::Term(const std::string& id, double coefficient) {
  LinExpr e;
  e.AddTerm(id, coefficient);
  return e;
}

void LinExpr::AddTerm(const std::string& id, double coefficient) {
  if (coefficient == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(id, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double LinExpr::Coefficient(const std::string& id) const {
  auto it = terms_.find(id);
  return it == terms_.end() ? 0.0 : it->second;
}

double LinExpr::Evaluate(const std::map<std::string, double>& values) const {
  double sum = constant_;
  for (const auto& [id, c] : terms_) {
    auto it = values.find(id);
    if (it != values.end()) sum += c * it->second;
  }
  return sum;
}

LinExpr& LinExpr::operator+=(const LinExpr& other) {
  for (const auto& [id, c] : other.terms_) AddTerm(id, c);
  constant_ += other.constant_;
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& other) {
  for (const auto& [id, c] : other.terms_) AddTerm(id, -c);
  constant_ -= other.constant_;
  return *this;
}

LinExpr& LinExpr::operator*=(double factor) {
  if (factor == 0.0) {
    terms_.clear();
    constant_ = 0.0;
    return *this;
  }
  for (auto& [id, c] : terms_) c *= factor;
  constant_ *= factor;
  return *this;
}

LinExpr LinExpr::operator-() const {
  LinExpr e = *this;
  for (auto& [id, c] : e.terms_) c = -c;
  // Keep 0 as +0 so that -(0) compares bit-equal in serialized output.
  e.constant_ = constant_ == 0.0 ? 0.0 : -constant_;
  return e;
}

// ---------------------------------------------------------------------------
// Norms

NormIndex::NormIndex(double p) : p_(p) {
  if (std::isnan(p) || p < 1.0) {
    throw ModelError("norm index must satisfy p >= 1, got " +
                     std::to_string(p));
  }
}

NormIndex DualNorm(NormIndex p) {
  if (p.is_one()) return NormIndex::Inf();
  if (p.is_inf()) return NormIndex::One();
  if (p.is_two()) return NormIndex::Two();
  return NormIndex(p.value() / (p.value() - 1.0));
}

NormIndex DualNorm(double p) { return DualNorm(NormIndex(p)); }

double Norm(const Eigen::VectorXd& v, NormIndex p) {
  if (v.size() == 0) return 0.0;
  if (p.is_one()) return v.lpNorm<1>();
  if (p.is_two()) return v.norm();
  if (p.is_inf()) return v.lpNorm<Eigen::Infinity>();
  // Scale by the max entry to keep pow() in range.
  const double scale = v.lpNorm<Eigen::Infinity>();
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    sum += std::pow(std::abs(v[i]) / scale, p.value());
  }
  return scale * std::pow(sum, 1.0 / p.value());
}

bool SameMatrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != b(i, j)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// UncertaintySet

namespace {

int CommonDim(const std::vector<UncertaintySet>& members, const char* kind) {
  if (members.empty()) {
    throw ModelError(std::string(kind) + " needs at least one member");
  }
  const int dim = members.front().dim();
  for (const UncertaintySet& m : members) {
    if (m.dim() != dim) {
      std::ostringstream msg;
      msg << kind << " members disagree on dimension (" << dim << " vs "
          << m.dim() << ")";
      throw ModelError(msg.str());
    }
  }
  return dim;
}

}  // namespace

UncertaintySet::UncertaintySet(NormBall ball) : node_(ball), dim_(ball.dim) {
  if (!(ball.radius >= 0.0) || !std::isfinite(ball.radius)) {
    throw ModelError("ball radius must be finite and >= 0");
  }
  if (ball.dim < 1) throw ModelError("ball dimension must be >= 1");
}

UncertaintySet::UncertaintySet(Polyhedral poly)
    : node_(poly), dim_(static_cast<int>(poly.D.cols())) {
  if (poly.D.rows() != poly.d.size()) {
    throw ModelError("polyhedron D has " + std::to_string(poly.D.rows()) +
                     " rows but d has " + std::to_string(poly.d.size()) +
                     " entries");
  }
  if (poly.D.rows() == 0 || poly.D.cols() == 0) {
    throw ModelError("polyhedron needs at least one row and one column");
  }
  if (!poly.D.allFinite() || !poly.d.allFinite()) {
    throw ModelError("polyhedron data must be finite");
  }
}

UncertaintySet::UncertaintySet(Intersection inter)
    : dim_(CommonDim(inter.members, "intersection")) {
  node_ = std::move(inter);
}

UncertaintySet::UncertaintySet(MinkowskiSum sum)
    : dim_(CommonDim(sum.members, "minkowski sum")) {
  node_ = std::move(sum);
}

bool UncertaintySet::IsZero() const {
  if (const auto* ball = As<NormBall>()) return ball->radius == 0.0;
  // A bounded polyhedral cone {z : Dz <= 0} is the origin.
  if (const auto* poly = As<Polyhedral>()) return (poly->d.array() == 0).all();
  if (const auto* inter = As<Intersection>()) {
    for (const auto& m : inter->members) {
      if (m.IsZero()) return true;
    }
    return false;
  }
  const auto& sum = std::get<MinkowskiSum>(node_);
  for (const auto& m : sum.members) {
    if (!m.IsZero()) return false;
  }
  return true;
}

bool UncertaintySet::Contains(const Eigen::VectorXd& z, double tol) const {
  if (z.size() != dim_) return false;
  if (const auto* ball = As<NormBall>()) {
    return Norm(z, ball->p) <= ball->radius + tol;
  }
  if (const auto* poly = As<Polyhedral>()) {
    return ((poly->D * z - poly->d).array() <= tol).all();
  }
  if (const auto* inter = As<Intersection>()) {
    for (const auto& m : inter->members) {
      if (!m.Contains(z, tol)) return false;
    }
    return true;
  }
  const auto& sum = std::get<MinkowskiSum>(node_);
  if (sum.members.size() == 1) return sum.members.front().Contains(z, tol);
  throw UnsupportedError(
      "membership test for a minkowski sum needs a decomposition");
}

std::string UncertaintySet::KindName() const {
  if (As<NormBall>()) return "ball";
  if (As<Polyhedral>()) return "poly";
  if (As<Intersection>()) return "intersect";
  return "minkowski";
}

bool operator==(const NormBall& a, const NormBall& b) {
  return a.p == b.p && a.radius == b.radius && a.dim == b.dim;
}
bool operator==(const Polyhedral& a, const Polyhedral& b) {
  return SameMatrix(a.D, b.D) && SameMatrix(a.d, b.d);
}
bool operator==(const Intersection& a, const Intersection& b) {
  return a.members == b.members;
}
bool operator==(const MinkowskiSum& a, const MinkowskiSum& b) {
  return a.members == b.members;
}
bool operator==(const UncertaintySet& a, const UncertaintySet& b) {
  return a.dim_ == b.dim_ && a.node_ == b.node_;
}

// ---------------------------------------------------------------------------
// Blocks, constraints, models

std::vector<LinExpr> UncertainBlock::SupportArgument() const {
  std::vector<LinExpr> arg(static_cast<std::size_t>(set.dim()));
  for (std::size_t i = 0; i < on.size(); ++i) {
    for (int k = 0; k < set.dim(); ++k) {
      arg[k].AddTerm(on[i], P(static_cast<Eigen::Index>(i), k));
    }
  }
  return arg;
}

void UncertainBlock::Validate(const std::string& owner) const {
  if (static_cast<std::size_t>(P.rows()) != on.size()) {
    throw ModelError(owner + ": P has " + std::to_string(P.rows()) +
                     " rows but perturbs " + std::to_string(on.size()) +
                     " coefficients");
  }
  if (P.cols() != set.dim()) {
    throw ModelError(owner + ": P has " + std::to_string(P.cols()) +
                     " columns but the uncertainty set has dimension " +
                     std::to_string(set.dim()));
  }
  std::set<std::string> seen;
  for (const auto& id : on) {
    if (!seen.insert(id).second) {
      throw ModelError(owner + ": variable '" + id +
                       "' perturbed twice in one block");
    }
  }
}

bool operator==(const UncertainBlock& a, const UncertainBlock& b) {
  return a.on == b.on && SameMatrix(a.P, b.P) && a.set == b.set;
}

bool operator==(const RhsUncertainty& a, const RhsUncertainty& b) {
  return SameMatrix(a.p, b.p) && a.set == b.set;
}

bool operator==(const Constraint& a, const Constraint& b) {
  return a.id == b.id && a.lhs == b.lhs && a.sense == b.sense &&
         a.rhs == b.rhs && a.uncertainty == b.uncertainty &&
         a.rhs_uncertainty == b.rhs_uncertainty && a.adaptive == b.adaptive;
}

bool operator==(const Objective& a, const Objective& b) {
  return a.sense == b.sense && a.expr == b.expr &&
         a.uncertainty == b.uncertainty && a.adaptive == b.adaptive;
}

bool operator==(const Model& a, const Model& b) {
  return a.vars == b.vars && a.objective == b.objective &&
         a.constraints == b.constraints && a.adaptive_set == b.adaptive_set;
}

const char* ToString(Sense sense) {
  switch (sense) {
    case Sense::kLessEqual:
      return "<=";
    case Sense::kGreaterEqual:
      return ">=";
    case Sense::kEqual:
      return "=";
  }
  return "?";
}

const VariableDecl* Model::FindVar(const std::string& id) const {
  for (const auto& v : vars) {
    if (v.id == id) return &v;
  }
  return nullptr;
}

bool Model::HasAdaptive() const {
  for (const auto& v : vars) {
    if (v.stage == Stage::kWaitAndSee) return true;
  }
  return false;
}

std::vector<std::string> Model::WaitAndSeeIds() const {
  std::vector<std::string> ids;
  for (const auto& v : vars) {
    if (v.stage == Stage::kWaitAndSee) ids.push_back(v.id);
  }
  return ids;
}

namespace {

void CheckTerms(const Model& model, const LinExpr& e, Stage stage,
                const std::string& owner) {
  for (const auto& [id, c] : e.terms()) {
    const VariableDecl* v = model.FindVar(id);
    if (v == nullptr) {
      throw ModelError(owner + ": unknown variable '" + id + "'");
    }
    if (v->stage != stage) {
      throw ModelError(owner + ": variable '" + id + "' is " +
                       (v->stage == Stage::kWaitAndSee ? "wait-and-see"
                                                       : "here-and-now") +
                       " but appears in the " +
                       (stage == Stage::kWaitAndSee ? "adaptive"
                                                    : "here-and-now") +
                       " part");
    }
    if (!std::isfinite(c)) {
      throw ModelError(owner + ": non-finite coefficient on '" + id + "'");
    }
  }
}

void CheckBlock(const Model& model, const UncertainBlock& block,
                const std::string& owner) {
  block.Validate(owner);
  for (const auto& id : block.on) {
    const VariableDecl* v = model.FindVar(id);
    if (v == nullptr) {
      throw ModelError(owner + ": uncertainty references unknown variable '" +
                       id + "'");
    }
    if (v->stage != Stage::kHereAndNow) {
      throw ModelError(owner + ": coefficient of wait-and-see variable '" + id +
                       "' cannot be uncertain (fixed recourse)");
    }
  }
}

}  // namespace

void Validate(const Model& model) {
  std::set<std::string> ids;
  int pinned = 0;
  for (const auto& v : model.vars) {
    if (v.id.empty()) throw ModelError("variable with empty id");
    if (!ids.insert(v.id).second) {
      throw ModelError("duplicate variable '" + v.id + "'");
    }
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper) {
      throw ModelError("variable '" + v.id + "' has lower > upper");
    }
    if (v.pinned_one) {
      ++pinned;
      if (v.lower != 1.0 || v.upper != 1.0) {
        throw ModelError("pinned variable '" + v.id + "' must have bounds [1,1]");
      }
    }
  }
  if (pinned > 1) throw ModelError("more than one pinned variable");

  const bool adaptive_model = model.HasAdaptive();
  if (adaptive_model && !model.adaptive_set) {
    throw ModelError(
        "model declares wait-and-see variables but no shared uncertainty set");
  }

  auto check_shared = [&](const UncertaintySet& set, const std::string& owner) {
    if (!model.adaptive_set || !(set == *model.adaptive_set)) {
      throw ModelError(owner +
                       ": adaptive rows must use the model's shared "
                       "uncertainty set");
    }
  };

  const Objective& obj = model.objective;
  CheckTerms(model, obj.expr, Stage::kHereAndNow, "objective");
  CheckTerms(model, obj.adaptive, Stage::kWaitAndSee, "objective");
  if (obj.uncertainty) {
    CheckBlock(model, *obj.uncertainty, "objective");
    if (obj.adaptive.HasTerms()) check_shared(obj.uncertainty->set, "objective");
  }

  std::set<std::string> row_ids;
  for (const Constraint& row : model.constraints) {
    const std::string owner = "constraint '" + row.id + "'";
    if (row.id.empty()) throw ModelError("constraint with empty id");
    if (!row_ids.insert(row.id).second) {
      throw ModelError("duplicate constraint id '" + row.id + "'");
    }
    if (!std::isfinite(row.rhs)) throw ModelError(owner + ": non-finite rhs");
    CheckTerms(model, row.lhs, Stage::kHereAndNow, owner);
    CheckTerms(model, row.adaptive, Stage::kWaitAndSee, owner);
    if ((row.IsUncertain() || row.HasAdaptive()) && row.sense == Sense::kEqual) {
      throw ModelError(owner + ": robust equality constraints are not supported");
    }
    if (row.uncertainty) CheckBlock(model, *row.uncertainty, owner);
    if (row.rhs_uncertainty) {
      if (row.rhs_uncertainty->p.size() != row.rhs_uncertainty->set.dim()) {
        throw ModelError(owner + ": rhs perturbation has " +
                         std::to_string(row.rhs_uncertainty->p.size()) +
                         " entries but the set has dimension " +
                         std::to_string(row.rhs_uncertainty->set.dim()));
      }
    }
    if (row.uncertainty && row.rhs_uncertainty &&
        !(row.uncertainty->set == row.rhs_uncertainty->set)) {
      throw ModelError(owner +
                       ": coefficient and rhs uncertainty must share one set");
    }
    if (row.HasAdaptive()) {
      if (!adaptive_model) {
        throw ModelError(owner + ": adaptive terms without wait-and-see variables");
      }
      if (row.uncertainty) check_shared(row.uncertainty->set, owner);
      if (row.rhs_uncertainty) check_shared(row.rhs_uncertainty->set, owner);
    }
  }
}

Eigen::VectorXd DecisionRule::Evaluate(const Eigen::VectorXd& z) const {
  if (V.size() == 0) return u;
  return u + V.transpose() * z;
}

}  // namespace roc
