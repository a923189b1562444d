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

#include "roc/solver.h"

namespace roc {

namespace {

std::string ZVar(Eigen::Index i) { return "z" + std::to_string(i); }

DeterministicModel PolyLp(const Polyhedral& poly, const Eigen::VectorXd& maximize) {
  DeterministicModel lp;
  const Eigen::Index dim = poly.D.cols();
  for (Eigen::Index j = 0; j < dim; ++j) {
    VariableDecl v;
    v.id = ZVar(j);
    v.lower = -kInfinity;
    lp.vars.push_back(v);
    lp.objective.AddTerm(v.id, -maximize(j));
  }
  for (Eigen::Index i = 0; i < poly.D.rows(); ++i) {
    LinearRow row;
    row.id = "d" + std::to_string(i);
    for (Eigen::Index j = 0; j < dim; ++j) row.lhs.AddTerm(ZVar(j), poly.D(i, j));
    row.rhs = poly.d(i);
    lp.linear_rows.push_back(std::move(row));
  }
  return lp;
}

Eigen::VectorXd ReadZ(const Solution& s, Eigen::Index dim) {
  Eigen::VectorXd z(dim);
  for (Eigen::Index j = 0; j < dim; ++j) z(j) = s.values.at(ZVar(j));
  return z;
}

double Sign(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

}  // namespace

bool SupportsPessimize(const UncertaintySet& set) {
  if (set.As<Intersection>() != nullptr) return false;
  if (const auto* sum = set.As<MinkowskiSum>()) {
    for (const auto& m : sum->members) {
      if (!SupportsPessimize(m)) return false;
    }
  }
  return true;
}

PessimizationResult Pessimize(const UncertaintySet& set, const Eigen::VectorXd& w) {
  if (w.size() != set.dim()) {
    throw ModelError("pessimization direction has " + std::to_string(w.size()) +
                     " entries but the set has dimension " +
                     std::to_string(set.dim()));
  }
  PessimizationResult out{Eigen::VectorXd::Zero(set.dim()), 0.0};
  if (set.IsZero()) return out;

  if (const auto* ball = set.As<NormBall>()) {
    const double r = ball->radius;
    if (ball->p.is_inf()) {
      out.zstar = r * w.unaryExpr(&Sign);
    } else if (ball->p.is_one()) {
      Eigen::Index k = 0;
      for (Eigen::Index i = 1; i < w.size(); ++i) {
        if (std::abs(w(i)) > std::abs(w(k))) k = i;
      }
      out.zstar(k) = r * Sign(w(k));
    } else {
      const NormIndex q = DualNorm(ball->p);
      const double nq = Norm(w, q);
      if (nq > 0) {
        if (ball->p.is_two()) {
          out.zstar = (r / nq) * w;
        } else {
          for (Eigen::Index i = 0; i < w.size(); ++i) {
            out.zstar(i) = r * Sign(w(i)) *
                           std::pow(std::abs(w(i)) / nq, q.value() - 1.0);
          }
        }
      }
    }
    out.value = w.dot(out.zstar);
    return out;
  }

  if (const auto* poly = set.As<Polyhedral>()) {
    const Solution s = SimplexSolve(PolyLp(*poly, w));
    if (s.status == SolveStatus::kUnbounded) {
      throw ModelError("polyhedral uncertainty set is unbounded");
    }
    if (s.status != SolveStatus::kOptimal) {
      throw ModelError(std::string("pessimization LP ended ") + ToString(s.status));
    }
    out.zstar = ReadZ(s, set.dim());
    out.value = w.dot(out.zstar);
    return out;
  }

  if (const auto* sum = set.As<MinkowskiSum>()) {
    for (const auto& member : sum->members) {
      PessimizationResult r = Pessimize(member, w);
      out.zstar += r.zstar;
    }
    out.value = w.dot(out.zstar);
    return out;
  }

  throw UnsupportedError(
      "worst-case search over an intersection needs a joint LP/SOCP and is "
      "not available");
}

PolyhedronRanges CoordinateRanges(const Polyhedral& poly) {
  PolyhedronRanges out;
  const Eigen::Index dim = poly.D.cols();
  out.lower = Eigen::VectorXd::Zero(dim);
  out.upper = Eigen::VectorXd::Zero(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (double sign : {-1.0, 1.0}) {
      Eigen::VectorXd dir = Eigen::VectorXd::Zero(dim);
      dir(i) = sign;
      const Solution s = SimplexSolve(PolyLp(poly, dir));
      if (s.status == SolveStatus::kUnbounded) {
        out.bounded = false;
        out.unbounded_coordinate = static_cast<int>(i);
        return out;
      }
      if (s.status != SolveStatus::kOptimal) {
        throw ModelError(std::string("polyhedron range LP ended ") +
                         ToString(s.status));
      }
      Eigen::VectorXd z = ReadZ(s, dim);
      (sign < 0 ? out.lower : out.upper)(i) = z(i);
      out.vertices.push_back(std::move(z));
    }
  }
  return out;
}

}  // namespace roc
