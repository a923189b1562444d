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

// Reduction of a parsed model to the canonical uncertain form
//   min c^T x  s.t.  (a_bar + P z)^T x <= b  for all z in Z, row by row,
// with certain right-hand sides and a certain objective.

#ifndef ROC_CANONICALIZE_H_
#define ROC_CANONICALIZE_H_

#include <string>

#include "roc/model.h"

namespace roc {

// Ids of variables the canonicalizer introduces. They contain '.', which the
// .roc lexer never produces, so they cannot collide with user names.
inline constexpr const char* kEpigraphVar = "epi.t";
inline constexpr const char* kPinnedOneVar = "rhs.one";

// A Model that satisfies the canonical invariants: minimization, every row
// "<=", no objective uncertainty and no uncertain right-hand side.
class CanonicalModel {
 public:
  // Validates the invariants; throws ModelError when one fails.
  explicit CanonicalModel(Model model);

  const Model& model() const { return model_; }

  bool operator==(const CanonicalModel& other) const {
    return model_ == other.model_;
  }

 private:
  Model model_;
};

// Steps, in order: maximization is negated; an uncertain or adaptive
// objective moves into an epigraph row; ">=" rows are negated together with
// their perturbation; uncertain right-hand sides fold into a coefficient on
// the pinned variable; certain equalities split into two "<=" rows.
CanonicalModel Canonicalize(const Model& model);

// Sign that maps an optimum of the canonical model back to the original sense.
double ObjectiveSign(const Model& original);

}  // namespace roc

#endif  // ROC_CANONICALIZE_H_
