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

#include <charconv>
#include <cmath>
#include <sstream>
#include <string>

#include "roc/dsl.h"

namespace roc {

std::string FormatNumber(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

std::string Vector(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += FormatNumber(v(i));
  }
  return out + "]";
}

std::string Matrix(const Eigen::MatrixXd& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i > 0) out += ", ";
    out += Vector(m.row(i).transpose());
  }
  return out + "]";
}

// Here-and-now terms, then adaptive terms, then the constant.
std::string Expression(const LinExpr& here, const LinExpr& adaptive) {
  std::string out;
  auto append = [&out](double c, const std::string& text) {
    if (out.empty()) {
      out = c < 0 ? "-" + text : text;
    } else {
      out += c < 0 ? " - " + text : " + " + text;
    }
  };
  for (const LinExpr* e : {&here, &adaptive}) {
    for (const auto& [id, c] : e->terms()) {
      append(c, c == 1.0 || c == -1.0 ? id : FormatNumber(std::abs(c)) + "*" + id);
    }
  }
  const double k = here.constant() + adaptive.constant();
  if (k != 0.0 || out.empty()) append(k, FormatNumber(std::abs(k)));
  return out;
}

std::string Block(const UncertainBlock& block) {
  std::string out = "uncertain(on=[";
  for (std::size_t i = 0; i < block.on.size(); ++i) {
    if (i > 0) out += ", ";
    out += block.on[i];
  }
  out += "]";
  if (!block.on.empty()) out += ", P=" + Matrix(block.P);
  return out + ", Z=" + FormatSet(block.set) + ")";
}

}  // namespace

std::string FormatSet(const UncertaintySet& set) {
  if (const auto* ball = set.As<NormBall>()) {
    return "ball(p=" + FormatNumber(ball->p.value()) +
           ", r=" + FormatNumber(ball->radius) +
           ", dim=" + std::to_string(ball->dim) + ")";
  }
  if (const auto* poly = set.As<Polyhedral>()) {
    return "poly(D=" + Matrix(poly->D) + ", d=" + Vector(poly->d) + ")";
  }
  const std::vector<UncertaintySet>* members = nullptr;
  std::string out;
  if (const auto* inter = set.As<Intersection>()) {
    out = "intersect(";
    members = &inter->members;
  } else {
    out = "minkowski(";
    members = &set.As<MinkowskiSum>()->members;
  }
  for (std::size_t i = 0; i < members->size(); ++i) {
    if (i > 0) out += ", ";
    out += FormatSet((*members)[i]);
  }
  return out + ")";
}

std::string FormatModel(const Model& model) {
  std::ostringstream out;
  for (const VariableDecl& v : model.vars) {
    if (v.stage == Stage::kWaitAndSee) out << "adaptive ";
    out << "var " << v.id << " >= " << FormatNumber(v.lower);
    if (!std::isinf(v.upper)) out << " <= " << FormatNumber(v.upper);
    if (v.stage == Stage::kWaitAndSee && v.rule == RuleKind::kStatic) {
      out << " rule=static";
    }
    out << ";\n";
  }
  if (model.adaptive_set) {
    out << "uncertainty: " << FormatSet(*model.adaptive_set) << ";\n";
  }
  const Objective& obj = model.objective;
  out << (obj.sense == ObjectiveSense::kMaximize ? "max: " : "min: ")
      << Expression(obj.expr, obj.adaptive);
  if (obj.uncertainty) out << " " << Block(*obj.uncertainty);
  out << ";\n";
  for (const Constraint& row : model.constraints) {
    LinExpr here = row.lhs;
    here.SetConstant(0.0);
    out << row.id << ": " << Expression(here, row.adaptive) << " "
        << ToString(row.sense) << " "
        << FormatNumber(row.rhs - row.lhs.constant());
    if (row.uncertainty) out << " " << Block(*row.uncertainty);
    if (row.rhs_uncertainty) {
      out << " rhs_uncertain(p=" << Vector(row.rhs_uncertainty->p)
          << ", Z=" << FormatSet(row.rhs_uncertainty->set) << ")";
    }
    out << ";\n";
  }
  return out.str();
}

}  // namespace roc
