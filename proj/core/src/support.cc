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

std::string AuxNamer::Next(std::string_view tag) {
  return prefix_ + "." + std::string(tag) + std::to_string(counter_++);
}

namespace {

void Append(SupportResult& into, SupportResult&& from) {
  for (auto& t : from.norm_terms) into.norm_terms.push_back(std::move(t));
  for (auto& v : from.aux_vars) into.aux_vars.push_back(std::move(v));
  for (auto& r : from.aux_rows) into.aux_rows.push_back(std::move(r));
  into.affine += from.affine;
}

// sum_k terms_k - arg_j = 0 with arg's constant moved to the right.
RobustRow Coupling(std::string id, LinExpr lhs, const LinExpr& arg_j) {
  lhs -= arg_j;
  const double constant = lhs.constant();
  lhs.SetConstant(0.0);
  return RobustRow{std::move(id), std::move(lhs), Sense::kEqual,
                   constant == 0.0 ? 0.0 : -constant, {}};
}

}  // namespace

SupportResult SupportConjugate(const UncertaintySet& set,
                               const std::vector<LinExpr>& arg, AuxNamer& namer) {
  if (static_cast<int>(arg.size()) != set.dim()) {
    throw ModelError("support argument has " + std::to_string(arg.size()) +
                     " entries but the set has dimension " +
                     std::to_string(set.dim()));
  }
  SupportResult result;
  if (const auto* ball = set.As<NormBall>()) {
    result.norm_terms.push_back({ball->radius, DualNorm(ball->p), arg});
    return result;
  }
  if (set.IsZero()) return result;

  if (const auto* poly = set.As<Polyhedral>()) {
    const Eigen::Index m = poly->D.rows();
    std::vector<std::string> u(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) {
      u[i] = namer.Next("u");
      VariableDecl v;
      v.id = u[i];
      result.aux_vars.push_back(v);
      result.affine.AddTerm(u[i], poly->d(i));
    }
    for (int j = 0; j < set.dim(); ++j) {
      LinExpr lhs;
      for (Eigen::Index i = 0; i < m; ++i) lhs.AddTerm(u[i], poly->D(i, j));
      result.aux_rows.push_back(Coupling(namer.Next("dual"), lhs, arg[j]));
    }
    return result;
  }

  if (const auto* inter = set.As<Intersection>()) {
    std::vector<LinExpr> total(arg.size());
    for (const UncertaintySet& member : inter->members) {
      std::vector<LinExpr> w(arg.size());
      for (std::size_t j = 0; j < arg.size(); ++j) {
        VariableDecl v;
        v.id = namer.Next("w");
        v.lower = -kInfinity;
        result.aux_vars.push_back(v);
        w[j] = LinExpr::Term(v.id, 1.0);
        total[j] += w[j];
      }
      Append(result, SupportConjugate(member, w, namer));
    }
    for (std::size_t j = 0; j < arg.size(); ++j) {
      result.aux_rows.push_back(Coupling(namer.Next("split"), total[j], arg[j]));
    }
    return result;
  }

  for (const UncertaintySet& member : set.As<MinkowskiSum>()->members) {
    Append(result, SupportConjugate(member, arg, namer));
  }
  return result;
}

}  // namespace roc
