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
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "Eigen/Core"
#include "roc/solver.h"

namespace roc {

const char* ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kUnbounded:
      return "unbounded";
    case SolveStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "?";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kReducedCostTol = 1e-9;

// How an original variable maps onto nonnegative standard-form columns:
// x = offset + sign * col  (+ -1 * neg_col for free variables).
struct ColumnMap {
  int col = -1;
  int neg_col = -1;
  double offset = 0.0;
  double sign = 1.0;
};

class Tableau {
 public:
  // Rows: m constraint rows, then the cost row. Last column is the rhs.
  Tableau(Eigen::MatrixXd t, std::vector<int> basis, int max_pivots)
      : t_(std::move(t)), basis_(std::move(basis)), max_pivots_(max_pivots) {}

  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int cols() const { return static_cast<int>(t_.cols()) - 1; }
  Eigen::MatrixXd& t() { return t_; }
  std::vector<int>& basis() { return basis_; }
  int pivots() const { return pivots_; }

  void Pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    Eigen::VectorXd factor = t_.col(c);
    factor(r) = 0.0;
    t_.noalias() -= factor * t_.row(r);
    t_(r, c) = 1.0;
    for (int i = 0; i <= rows(); ++i) {
      if (i != r) t_(i, c) = 0.0;
    }
    basis_[static_cast<std::size_t>(r)] = c;
    ++pivots_;
  }

  // Bland's rule over columns with allowed[j]. Returns the final status.
  SolveStatus Run(const std::vector<bool>& allowed) {
    const int m = rows();
    const int n = cols();
    for (;;) {
      int enter = -1;
      for (int j = 0; j < n; ++j) {
        if (allowed[static_cast<std::size_t>(j)] && t_(m, j) < -kReducedCostTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return SolveStatus::kOptimal;
      if (pivots_ >= max_pivots_) return SolveStatus::kIterationLimit;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotTol) continue;
        const double ratio = t_(i, n) / a;
        if (leave < 0 || ratio < best - 1e-12) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + 1e-12 &&
                   basis_[static_cast<std::size_t>(i)] <
                       basis_[static_cast<std::size_t>(leave)]) {
          leave = i;
        }
      }
      if (leave < 0) return SolveStatus::kUnbounded;
      Pivot(leave, enter);
    }
  }

 private:
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
  int max_pivots_;
  int pivots_ = 0;
};

}  // namespace

Solution SimplexSolve(const DeterministicModel& model,
                      const SimplexOptions& options) {
  if (!model.soc_rows.empty()) {
    throw UnsupportedError("simplex cannot handle cone row '" +
                           model.soc_rows.front().id + "'");
  }
  std::map<std::string, int> var_index;
  for (std::size_t j = 0; j < model.vars.size(); ++j) {
    if (!var_index.emplace(model.vars[j].id, static_cast<int>(j)).second) {
      throw ModelError("duplicate variable '" + model.vars[j].id + "'");
    }
  }

  // Structural columns.
  std::vector<ColumnMap> maps(model.vars.size());
  int ncols = 0;
  struct UpperRow {
    int col;
    double bound;
  };
  std::vector<UpperRow> upper_rows;
  for (std::size_t j = 0; j < model.vars.size(); ++j) {
    const VariableDecl& v = model.vars[j];
    if (v.lower > v.upper) {
      Solution s;
      s.status = SolveStatus::kInfeasible;
      return s;
    }
    ColumnMap& cm = maps[j];
    cm.col = ncols++;
    if (std::isfinite(v.lower)) {
      cm.offset = v.lower;
      if (std::isfinite(v.upper)) upper_rows.push_back({cm.col, v.upper - v.lower});
    } else if (std::isfinite(v.upper)) {
      cm.offset = v.upper;
      cm.sign = -1.0;
    } else {
      cm.neg_col = ncols++;
    }
  }

  // Rows in terms of structural columns: coefficients, sense, rhs.
  struct Row {
    Eigen::VectorXd a;
    bool equality;
    double b;
  };
  std::vector<Row> rows;
  for (const LinearRow& lr : model.linear_rows) {
    Row row{Eigen::VectorXd::Zero(ncols), lr.sense == Sense::kEqual,
            lr.rhs - lr.lhs.constant()};
    if (lr.sense == Sense::kGreaterEqual) {
      throw ModelError("row '" + lr.id + "': simplex expects '<=' or '='");
    }
    for (const auto& [id, c] : lr.lhs.terms()) {
      auto it = var_index.find(id);
      if (it == var_index.end()) {
        throw ModelError("row '" + lr.id + "' uses unknown variable '" + id + "'");
      }
      const ColumnMap& cm = maps[static_cast<std::size_t>(it->second)];
      row.b -= c * cm.offset;
      row.a(cm.col) += c * cm.sign;
      if (cm.neg_col >= 0) row.a(cm.neg_col) -= c;
    }
    rows.push_back(std::move(row));
  }
  for (const UpperRow& ur : upper_rows) {
    Row row{Eigen::VectorXd::Zero(ncols), false, ur.bound};
    row.a(ur.col) = 1.0;
    rows.push_back(std::move(row));
  }

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(ncols);
  for (const auto& [id, c] : model.objective.terms()) {
    auto it = var_index.find(id);
    if (it == var_index.end()) {
      throw ModelError("objective uses unknown variable '" + id + "'");
    }
    const ColumnMap& cm = maps[static_cast<std::size_t>(it->second)];
    cost(cm.col) += c * cm.sign;
    if (cm.neg_col >= 0) cost(cm.neg_col) -= c;
  }

  // Slack and artificial columns.
  const int m = static_cast<int>(rows.size());
  int nslack = 0;
  for (const Row& r : rows) nslack += r.equality ? 0 : 1;
  std::vector<int> slack_of(static_cast<std::size_t>(m), -1);
  std::vector<double> row_sign(static_cast<std::size_t>(m), 1.0);
  std::vector<bool> needs_art(static_cast<std::size_t>(m), false);
  int nart = 0;
  {
    int s = ncols;
    for (int i = 0; i < m; ++i) {
      const Row& r = rows[static_cast<std::size_t>(i)];
      if (!r.equality) slack_of[static_cast<std::size_t>(i)] = s++;
      if (r.b < 0) row_sign[static_cast<std::size_t>(i)] = -1.0;
      const bool slack_basic = !r.equality && r.b >= 0;
      if (!slack_basic) {
        needs_art[static_cast<std::size_t>(i)] = true;
        ++nart;
      }
    }
  }
  const int first_art = ncols + nslack;
  const int n = first_art + nart;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + 1);
  std::vector<int> basis(static_cast<std::size_t>(m), -1);
  int art = first_art;
  for (int i = 0; i < m; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const Row& r = rows[ui];
    const double sg = row_sign[ui];
    t.row(i).head(ncols) = sg * r.a.transpose();
    if (slack_of[ui] >= 0) t(i, slack_of[ui]) = sg;
    t(i, n) = sg * r.b;
    if (needs_art[ui]) {
      t(i, art) = 1.0;
      basis[ui] = art++;
    } else {
      basis[ui] = slack_of[ui];
    }
  }

  Solution solution;
  Tableau tab(std::move(t), std::move(basis), options.max_pivots);

  if (nart > 0) {
    // Phase 1: minimize the sum of artificials.
    for (int i = 0; i < m; ++i) {
      if (needs_art[static_cast<std::size_t>(i)]) {
        tab.t().row(m) -= tab.t().row(i);
      }
    }
    for (int j = first_art; j < n; ++j) tab.t()(m, j) = 0.0;
    const SolveStatus s1 = tab.Run(std::vector<bool>(static_cast<std::size_t>(n), true));
    solution.iterations = tab.pivots();
    if (s1 == SolveStatus::kIterationLimit) {
      solution.status = s1;
      return solution;
    }
    double scale = 1.0;
    for (const Row& r : rows) scale = std::max(scale, std::abs(r.b));
    if (-tab.t()(m, n) > kFeasTol * scale) {
      solution.status = SolveStatus::kInfeasible;
      return solution;
    }
    // Drive remaining artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (tab.basis()[static_cast<std::size_t>(i)] < first_art) continue;
      for (int j = 0; j < first_art; ++j) {
        if (std::abs(tab.t()(i, j)) > kPivotTol) {
          tab.Pivot(i, j);
          break;
        }
      }
    }
  }

  // Phase 2 cost row: c_j - c_B^T B^-1 a_j.
  tab.t().row(m).setZero();
  tab.t().row(m).head(ncols) = cost.transpose();
  for (int i = 0; i < m; ++i) {
    const int b = tab.basis()[static_cast<std::size_t>(i)];
    const double cb = b < ncols ? cost(b) : 0.0;
    if (cb != 0.0) tab.t().row(m) -= cb * tab.t().row(i);
  }
  std::vector<bool> allowed(static_cast<std::size_t>(n), true);
  for (int j = first_art; j < n; ++j) allowed[static_cast<std::size_t>(j)] = false;
  const SolveStatus s2 = tab.Run(allowed);
  solution.iterations = tab.pivots();
  solution.status = s2;
  if (s2 != SolveStatus::kOptimal) return solution;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) {
    x(tab.basis()[static_cast<std::size_t>(i)]) = tab.t()(i, n);
  }
  for (std::size_t j = 0; j < model.vars.size(); ++j) {
    const ColumnMap& cm = maps[j];
    double value = cm.offset + cm.sign * std::max(0.0, x(cm.col));
    if (cm.neg_col >= 0) value -= std::max(0.0, x(cm.neg_col));
    if (value == 0.0) value = 0.0;
    solution.values[model.vars[j].id] = value;
  }
  solution.objective = model.objective.Evaluate(solution.values);
  return solution;
}

}  // namespace roc
