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
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "roc/solver.h"

namespace roc {

namespace {

// Cut text rounded to 12 significant digits, used to skip repeats.
std::string CutKey(const LinExpr& lhs, double rhs) {
  std::string key;
  char buf[40];
  for (const auto& [id, c] : lhs.terms()) {
    std::snprintf(buf, sizeof(buf), "%.12g", c);
    key += id + ":" + buf + ";";
  }
  std::snprintf(buf, sizeof(buf), "%.12g", rhs);
  return key + "<=" + buf;
}

class CutPool {
 public:
  explicit CutPool(DeterministicModel& master) : master_(master) {}

  bool Add(const std::string& owner, LinExpr lhs, double rhs) {
    rhs -= lhs.constant();
    lhs.SetConstant(0.0);
    if (!keys_.insert(CutKey(lhs, rhs)).second) return false;
    master_.linear_rows.push_back(LinearRow{
        owner + ".cut" + std::to_string(count_++), std::move(lhs),
        Sense::kLessEqual, rhs});
    return true;
  }

 private:
  DeterministicModel& master_;
  std::set<std::string> keys_;
  int count_ = 0;
};

double Value(const LinExpr& e, const Solution& s) { return e.Evaluate(s.values); }

LinExpr Combine(const std::vector<LinExpr>& arg, const Eigen::VectorXd& z) {
  LinExpr out;
  for (std::size_t k = 0; k < arg.size(); ++k) {
    if (z(static_cast<Eigen::Index>(k)) != 0.0) {
      out += z(static_cast<Eigen::Index>(k)) * arg[k];
    }
  }
  return out;
}

}  // namespace

Solution SolveDeterministic(const DeterministicModel& model,
                            const CuttingPlaneOptions& options) {
  if (model.soc_rows.empty()) return SimplexSolve(model, options.simplex);

  DeterministicModel master = model;
  master.soc_rows.clear();
  CutPool pool(master);
  for (const SocRow& soc : model.soc_rows) {
    for (std::size_t i = 0; i < soc.arg.size(); ++i) {
      for (double sign : {1.0, -1.0}) {
        LinExpr lhs = sign * soc.arg[i];
        lhs.AddTerm(soc.t, -1.0);
        pool.Add(soc.id, lhs, 0.0);
      }
    }
  }
  Solution s;
  for (int round = 1; round <= options.max_rounds; ++round) {
    s = SimplexSolve(master, options.simplex);
    s.iterations = round;
    if (s.status != SolveStatus::kOptimal) return s;
    bool added = false;
    for (const SocRow& soc : model.soc_rows) {
      Eigen::VectorXd w(static_cast<Eigen::Index>(soc.arg.size()));
      for (std::size_t i = 0; i < soc.arg.size(); ++i) {
        w(static_cast<Eigen::Index>(i)) = Value(soc.arg[i], s);
      }
      const double norm = w.norm();
      if (norm - s.values.at(soc.t) <= options.feas_tol) continue;
      LinExpr lhs = Combine(soc.arg, w / norm);
      lhs.AddTerm(soc.t, -1.0);
      added |= pool.Add(soc.id, lhs, 0.0);
    }
    if (!added) return s;
  }
  s.status = SolveStatus::kIterationLimit;
  return s;
}

DeterministicModel ToDeterministic(const CanonicalModel& canonical) {
  const Model& model = canonical.model();
  if (model.HasAdaptive()) {
    throw ModelError("model has wait-and-see variables");
  }
  DeterministicModel out;
  out.vars = model.vars;
  out.objective = model.objective.expr;
  for (const Constraint& row : model.constraints) {
    if (row.IsUncertain()) {
      throw ModelError("row '" + row.id + "' is uncertain");
    }
    out.linear_rows.push_back(LinearRow{row.id, row.lhs, row.sense, row.rhs});
  }
  return out;
}

Solution CuttingPlaneSolve(const CanonicalModel& canonical,
                           const CuttingPlaneOptions& options) {
  const Model& model = canonical.model();
  if (model.HasAdaptive()) {
    throw ModelError("apply the decision rule before the cutting-plane solve");
  }
  DeterministicModel master;
  master.vars = model.vars;
  master.objective = model.objective.expr;
  CutPool pool(master);
  struct Uncertain {
    const Constraint* row;
    std::vector<LinExpr> arg;
  };
  std::vector<Uncertain> uncertain;
  for (const Constraint& row : model.constraints) {
    if (!row.uncertainty) {
      master.linear_rows.push_back(LinearRow{row.id, row.lhs, row.sense, row.rhs});
      continue;
    }
    const UncertaintySet& set = row.uncertainty->set;
    if (!SupportsPessimize(set)) {
      throw UnsupportedError("row '" + row.id + "': no worst-case oracle for " +
                             set.KindName() + " sets");
    }
    uncertain.push_back({&row, row.uncertainty->SupportArgument()});
    const std::vector<LinExpr>& arg = uncertain.back().arg;
    pool.Add(row.id, row.lhs, row.rhs);
    for (int k = 0; k < set.dim(); ++k) {
      for (double sign : {1.0, -1.0}) {
        Eigen::VectorXd dir = Eigen::VectorXd::Zero(set.dim());
        dir(k) = sign;
        const Eigen::VectorXd z = Pessimize(set, dir).zstar;
        pool.Add(row.id, row.lhs + Combine(arg, z), row.rhs);
      }
    }
  }

  Solution s;
  for (int round = 1; round <= options.max_rounds; ++round) {
    s = SimplexSolve(master, options.simplex);
    s.iterations = round;
    if (s.status != SolveStatus::kOptimal) return s;
    bool added = false;
    for (const Uncertain& u : uncertain) {
      const Constraint& row = *u.row;
      Eigen::VectorXd w(static_cast<Eigen::Index>(u.arg.size()));
      for (std::size_t k = 0; k < u.arg.size(); ++k) {
        w(static_cast<Eigen::Index>(k)) = Value(u.arg[k], s);
      }
      const PessimizationResult worst = Pessimize(row.uncertainty->set, w);
      const double violation = Value(row.lhs, s) + worst.value - row.rhs;
      if (violation <= options.feas_tol) continue;
      added |= pool.Add(row.id, row.lhs + Combine(u.arg, worst.zstar), row.rhs);
    }
    if (!added) return s;
  }
  s.status = SolveStatus::kIterationLimit;
  return s;
}

}  // namespace roc
