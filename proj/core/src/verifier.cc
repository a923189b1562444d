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
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "roc/aro.h"
#include "roc/verifier.h"

namespace roc {

namespace {

std::uint64_t RowSeed(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

class Checker {
 public:
  Checker(VerificationReport& report, double tol) : report_(report), tol_(tol) {}

  void Check(double excess) {
    ++report_.points_evaluated;
    if (excess > tol_) ++report_.violations;
    report_.max_violation = std::max(report_.max_violation, excess);
  }

 private:
  VerificationReport& report_;
  double tol_;
};

}  // namespace

VerificationReport VerifySolution(const CanonicalModel& canonical,
                                  const Solution& solution,
                                  const VerifyOptions& options) {
  VerificationReport report;
  report.samples = options.samples;
  report.seed = options.seed;
  if (solution.status != SolveStatus::kOptimal) return report;

  const Model& model = canonical.model();
  const std::map<std::string, double>& values = solution.values;
  Checker check(report, options.violation_tol);

  std::optional<DecisionRule> rule;
  std::map<std::string, Eigen::Index> rule_index;
  if (model.HasAdaptive()) {
    rule = ExtractDecisionRule(model, values);
    for (std::size_t j = 0; j < rule->ids.size(); ++j) {
      rule_index[rule->ids[j]] = static_cast<Eigen::Index>(j);
    }
  }
  auto adaptive_value = [&](const LinExpr& d, const Eigen::VectorXd& z) {
    if (!d.HasTerms()) return 0.0;
    const Eigen::VectorXd y = rule->Evaluate(z);
    double sum = 0.0;
    for (const auto& [id, c] : d.terms()) sum += c * y(rule_index.at(id));
    return sum;
  };
  auto lookup = [&values](const std::string& id) {
    auto it = values.find(id);
    return it == values.end() ? 0.0 : it->second;
  };

  for (const VariableDecl& v : model.vars) {
    if (v.stage == Stage::kWaitAndSee) continue;
    const double x = lookup(v.id);
    check.Check(std::max(v.lower - x, x - v.upper));
  }

  auto sample = [&](const UncertaintySet& set, std::size_t index) {
    SampleSet s = SampleUncertaintySet(set, options.samples,
                                       RowSeed(options.seed, index));
    report.rejection_failures += s.rejection_failures;
    std::vector<Eigen::VectorXd> points = std::move(s.random);
    for (auto& z : s.stress) points.push_back(std::move(z));
    return points;
  };

  for (std::size_t i = 0; i < model.constraints.size(); ++i) {
    const Constraint& row = model.constraints[i];
    const double nominal = row.lhs.Evaluate(values) - row.rhs;
    if (!row.uncertainty && !row.HasAdaptive()) {
      check.Check(nominal);
      continue;
    }
    const UncertaintySet& set =
        row.uncertainty ? row.uncertainty->set : *model.adaptive_set;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(set.dim());
    if (row.uncertainty) {
      const std::vector<LinExpr> arg = row.uncertainty->SupportArgument();
      for (std::size_t k = 0; k < arg.size(); ++k) {
        w(static_cast<Eigen::Index>(k)) = arg[k].Evaluate(values);
      }
    }
    for (const Eigen::VectorXd& z : sample(set, i)) {
      check.Check(nominal + w.dot(z) + adaptive_value(row.adaptive, z));
    }
  }

  if (rule) {
    const std::vector<Eigen::VectorXd> points =
        sample(*model.adaptive_set, model.constraints.size());
    for (const Eigen::VectorXd& z : points) {
      const Eigen::VectorXd y = rule->Evaluate(z);
      for (const VariableDecl& v : model.vars) {
        if (v.stage != Stage::kWaitAndSee) continue;
        const double value = y(rule_index.at(v.id));
        check.Check(std::max(v.lower - value, value - v.upper));
      }
    }
  }

  report.max_violation = std::max(report.max_violation, 0.0);
  bool gap_ok = true;
  if (options.other_objective) {
    const double a = solution.objective;
    const double gap = std::abs(a - *options.other_objective) /
                       std::max(1.0, std::abs(a));
    report.oracle_gap = gap;
    gap_ok = gap <= options.gap_tol;
  }
  report.pass = report.violations == 0 && gap_ok;
  return report;
}

}  // namespace roc
