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

// Sampling-based evidence that a robust solution survives its uncertainty
// sets, and the comparison between the two solve paths.

#ifndef ROC_VERIFIER_H_
#define ROC_VERIFIER_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "Eigen/Core"
#include "roc/canonicalize.h"
#include "roc/solver.h"

namespace roc {

inline constexpr double kViolationTol = 1e-7;

struct SampleSet {
  std::vector<Eigen::VectorXd> random;  // seed-dependent draws
  std::vector<Eigen::VectorXd> stress;  // deterministic boundary points
  int rejection_failures = 0;           // draws that could not be produced
};

// n random points of Z plus stress points. Random draws by kind:
//   inf-ball: uniform per coordinate; 2-ball: uniform direction with radius
//   r*U^(1/L); 1-ball: Dirichlet weights with random signs; polyhedron:
//   hit-and-run from 0 after 10L burn-in steps; intersection: rejection from
//   the member with the smallest bounding box; minkowski: member sums.
// Stress points are support points of Z in the directions +-e_i and, when
// L <= 10, every sign pattern (every corner of an inf-ball).
SampleSet SampleUncertaintySet(const UncertaintySet& set, int n,
                               std::uint64_t seed);

struct VerificationReport {
  int samples = 0;            // random draws requested per set
  long points_evaluated = 0;  // (row, z) evaluations
  int violations = 0;
  double max_violation = 0.0;  // largest lhs - rhs seen, floored at 0
  std::optional<double> oracle_gap;
  std::uint64_t seed = 0;
  int rejection_failures = 0;
  bool pass = false;
};

struct VerifyOptions {
  int samples = 1000;
  std::uint64_t seed = 42;
  double violation_tol = kViolationTol;
  double gap_tol = kOptTol;
  // Objective of a second solve path, compared relative to max(1, |obj|).
  std::optional<double> other_objective;
};

// Evaluates every uncertain row of the canonical (pre-LDR) model at every
// sampled and stress point, with wait-and-see values y(z) = u* + V*^T z read
// from the solution, and checks certain rows and bounds once.
VerificationReport VerifySolution(const CanonicalModel& model,
                                  const Solution& solution,
                                  const VerifyOptions& options);

}  // namespace roc

#endif  // ROC_VERIFIER_H_
