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

// Dense two-phase primal simplex, support-point pessimization and the
// cutting-plane loop used both for cone rows and as an independent oracle.

#ifndef ROC_SOLVER_H_
#define ROC_SOLVER_H_

#include <map>
#include <string>
#include <vector>

#include "Eigen/Core"
#include "roc/canonicalize.h"
#include "roc/lowering.h"
#include "roc/model.h"

namespace roc {

inline constexpr double kFeasTol = 1e-7;
inline constexpr double kOptTol = 1e-6;

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* ToString(SolveStatus status);

struct Solution {
  SolveStatus status = SolveStatus::kIterationLimit;
  double objective = 0.0;
  std::map<std::string, double> values;
  int iterations = 0;  // simplex pivots, or outer rounds for cutting planes
};

struct SimplexOptions {
  int max_pivots = 100000;
};

// Two-phase dense simplex with Bland's rule. Handles "<=" and "=" rows and
// arbitrary bounds natively. Throws UnsupportedError if the model has cone
// rows.
Solution SimplexSolve(const DeterministicModel& model,
                      const SimplexOptions& options = {});

struct CuttingPlaneOptions {
  double feas_tol = kFeasTol;
  int max_rounds = 500;
  SimplexOptions simplex;
};

// Solves a lowered model. Cone rows t >= ||w||_2 are handled as the
// 2-ball-uncertain rows w^T z <= t, |z|_2 <= 1, by the cutting-plane loop;
// pure LPs go straight to SimplexSolve.
Solution SolveDeterministic(const DeterministicModel& model,
                            const CuttingPlaneOptions& options = {});

struct PessimizationResult {
  Eigen::VectorXd zstar;
  double value = 0.0;  // max over z in Z of w^T z
};

// Worst case of w^T z over Z. Closed form for balls, an inner LP for
// polyhedra, member-wise sums for Minkowski sums. Intersections throw
// UnsupportedError.
PessimizationResult Pessimize(const UncertaintySet& set,
                              const Eigen::VectorXd& w);

bool SupportsPessimize(const UncertaintySet& set);

// Semi-infinite solve of a canonical model (after ApplyLdr): the master LP
// holds certain rows plus cuts (a_bar + P z*)^T x <= b; each round adds a cut
// for every row violated by more than feas_tol at its worst-case z*.
Solution CuttingPlaneSolve(const CanonicalModel& model,
                           const CuttingPlaneOptions& options = {});

// Coordinate ranges of {z : Dz <= d} from 2L LPs, plus the optimal vertices.
struct PolyhedronRanges {
  bool bounded = true;
  int unbounded_coordinate = -1;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::vector<Eigen::VectorXd> vertices;
};
PolyhedronRanges CoordinateRanges(const Polyhedral& poly);

// Converts a model without uncertainty into the lowered form directly.
DeterministicModel ToDeterministic(const CanonicalModel& model);

}  // namespace roc

#endif  // ROC_SOLVER_H_
