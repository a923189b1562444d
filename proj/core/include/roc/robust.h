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

// Robust counterparts via the conjugate support function: each uncertain row
// (a_bar + P z)^T x <= b becomes a_bar^T x + delta*(P^T x | Z) <= b, where
// delta* is expanded into norm terms, auxiliary variables and auxiliary rows.

#ifndef ROC_ROBUST_H_
#define ROC_ROBUST_H_

#include <string>
#include <string_view>
#include <vector>

#include "roc/canonicalize.h"
#include "roc/model.h"

namespace roc {

// weight * ||arg||_q, carried symbolically until lowering.
struct NormTerm {
  double weight = 0.0;
  NormIndex q = NormIndex::Two();
  std::vector<LinExpr> arg;

  bool operator==(const NormTerm& other) const = default;
};

// lhs + sum(norms) <sense> rhs. Certain rows have no norms.
struct RobustRow {
  std::string id;
  LinExpr lhs;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
  std::vector<NormTerm> norms;

  bool operator==(const RobustRow& other) const = default;
};

struct SupportResult {
  std::vector<NormTerm> norm_terms;
  std::vector<VariableDecl> aux_vars;
  std::vector<RobustRow> aux_rows;  // certain; equalities kept as "="
  LinExpr affine;
};

struct RobustModel {
  std::vector<VariableDecl> vars;
  LinExpr objective;  // minimized
  std::vector<RobustRow> rows;

  bool operator==(const RobustModel& other) const = default;
};

// Monotone id source for auxiliary variables and rows. Ids look like
// "<prefix>.<tag><n>" and never collide with user identifiers.
class AuxNamer {
 public:
  explicit AuxNamer(std::string prefix) : prefix_(std::move(prefix)) {}
  std::string Next(std::string_view tag);

 private:
  std::string prefix_;
  int counter_ = 0;
};

// delta*(arg | set) expanded per set kind:
//   ball(p, r)       -> r * ||arg||_q with q the dual of p
//   poly(D, d)       -> d^T u with D^T u = arg, u >= 0
//   intersect(Z_i)   -> sum_i delta*(w_i | Z_i) with sum_i w_i = arg
//   minkowski(Z_i)   -> sum_i delta*(arg | Z_i)
// A zero-radius ball keeps its term with weight 0 (lowering drops it); any
// other set equal to {0} contributes nothing. Throws ModelError on size
// mismatch.
SupportResult SupportConjugate(const UncertaintySet& set,
                               const std::vector<LinExpr>& arg, AuxNamer& namer);

struct RobustifiedRow {
  std::vector<RobustRow> rows;  // main row first, then auxiliary rows
  std::vector<VariableDecl> new_vars;
};

// Robust counterpart of one canonical row. A certain row comes back as is.
// Rows must be "<=" and free of adaptive terms (run ApplyLdr first).
RobustifiedRow RobustifyRow(const Constraint& row, AuxNamer& namer);

RobustModel Robustify(const CanonicalModel& model);

}  // namespace roc

#endif  // ROC_ROBUST_H_
