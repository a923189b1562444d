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
#include <vector>

#include "roc/lowering.h"

namespace roc {

const VariableDecl* DeterministicModel::FindVar(const std::string& id) const {
  for (const auto& v : vars) {
    if (v.id == id) return &v;
  }
  return nullptr;
}

namespace {

class Lowerer {
 public:
  explicit Lowerer(DeterministicModel& out) : out_(out) {}

  void Row(const RobustRow& in) {
    RobustRow row = in;
    if (row.sense == Sense::kGreaterEqual) {
      row.lhs = -row.lhs;
      row.rhs = row.rhs == 0.0 ? 0.0 : -row.rhs;
      row.sense = Sense::kLessEqual;
      for (NormTerm& t : row.norms) t.weight = -t.weight;
    }
    if (!row.norms.empty() && row.sense != Sense::kLessEqual) {
      throw ModelError("row '" + row.id + "' has norm terms but is an equality");
    }
    LinearRow main{row.id, row.lhs, row.sense, row.rhs};
    const double constant = main.lhs.constant();
    main.lhs.SetConstant(0.0);
    main.rhs -= constant;
    std::vector<LinearRow> aux;
    for (const NormTerm& term : row.norms) {
      if (term.weight == 0.0 || term.arg.empty()) continue;
      if (term.weight < 0.0) {
        throw UnsupportedError("row '" + row.id +
                               "': negative norm weight is not convex");
      }
      if (term.q.is_one()) {
        for (const LinExpr& w : term.arg) {
          const std::string t = NewVar();
          Abs(t, {w}, aux);
          main.lhs.AddTerm(t, term.weight);
        }
      } else if (term.q.is_inf()) {
        const std::string t = NewVar();
        Abs(t, term.arg, aux);
        main.lhs.AddTerm(t, term.weight);
      } else if (term.q.is_two()) {
        const std::string t = NewVar();
        out_.soc_rows.push_back(SocRow{t + ".soc", t, term.arg});
        main.lhs.AddTerm(t, term.weight);
      } else {
        throw UnsupportedError("row '" + row.id + "': cannot lower a " +
                               std::to_string(term.q.value()) +
                               "-norm (only q = 1, 2, inf)");
      }
    }
    out_.linear_rows.push_back(std::move(main));
    for (auto& r : aux) out_.linear_rows.push_back(std::move(r));
  }

 private:
  std::string NewVar() {
    VariableDecl v;
    v.id = "lo.t" + std::to_string(counter_++);
    out_.vars.push_back(v);
    return v.id;
  }

  // t >= w_i and t >= -w_i for every entry.
  static void Abs(const std::string& t, const std::vector<LinExpr>& w,
                  std::vector<LinearRow>& rows) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::string suffix = w.size() == 1 ? "" : std::to_string(i);
      for (double sign : {1.0, -1.0}) {
        LinExpr lhs = sign * w[i];
        lhs.AddTerm(t, -1.0);
        const double c = lhs.constant();
        lhs.SetConstant(0.0);
        rows.push_back(LinearRow{t + (sign > 0 ? ".p" : ".n") + suffix,
                                 std::move(lhs), Sense::kLessEqual,
                                 c == 0.0 ? 0.0 : -c});
      }
    }
  }

  DeterministicModel& out_;
  int counter_ = 0;
};

}  // namespace

DeterministicModel LowerNorms(const RobustModel& model) {
  DeterministicModel out;
  out.vars = model.vars;
  out.objective = model.objective;
  Lowerer lowerer(out);
  for (const RobustRow& row : model.rows) lowerer.Row(row);
  return out;
}

}  // namespace roc
