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

#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "roc/dsl.h"
#include "roc/solver.h"
#include "test_util.h"

namespace roc {
namespace {

using testing::LoadFixture;

DeterministicModel Lp(const std::string& source) {
  return ToDeterministic(Canonicalize(ParseModel(source)));
}

TEST(SimplexTest, SingleBound) {
  const Solution s = SimplexSolve(Lp("min: x1; c: x1 >= 1;"));
  ASSERT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_DOUBLE_EQ(s.objective, 1.0);
  EXPECT_DOUBLE_EQ(s.values.at("x1"), 1.0);
}

TEST(SimplexTest, Unbounded) {
  EXPECT_EQ(SimplexSolve(Lp("min: -x1; c: x1 >= 0;")).status, SolveStatus::kUnbounded);
}

TEST(SimplexTest, Infeasible) {
  EXPECT_EQ(SimplexSolve(Lp("min: x; a: x >= 2; b: x <= 1;")).status,
            SolveStatus::kInfeasible);
}

TEST(SimplexTest, DietIsInfeasible) {
  const Model diet = testing::StripUncertainty(LoadFixture("diet.roc"));
  EXPECT_EQ(SimplexSolve(ToDeterministic(Canonicalize(diet))).status,
            SolveStatus::kInfeasible);
}

TEST(SimplexTest, NominalProductionPlan) {
  const Model m = LoadFixture("ex1_nominal.roc");
  const Solution s = SimplexSolve(ToDeterministic(Canonicalize(m)));
  ASSERT_EQ(s.status, SolveStatus::kOptimal);
  // Best profit per unit of the 300 resource is 50/2 on x1.
  EXPECT_NEAR(ObjectiveSign(m) * s.objective, 7500.0, 1e-9);
  EXPECT_NEAR(s.values.at("x1"), 150.0, 1e-9);
}

TEST(SimplexTest, EqualitiesFreeAndBoundedVariables) {
  const Solution s = SimplexSolve(Lp(
      "var a >= -inf; var b >= -3 <= 2; var c >= -inf <= 4;"
      " min: a - b - c; e: a + b = 1; f: a - c >= -10;"));
  ASSERT_EQ(s.status, SolveStatus::kOptimal);
  // b = 2 -> a = -1, c <= a + 10 = 9 and c <= 4 -> c = 4.
  EXPECT_NEAR(s.values.at("a"), -1.0, 1e-12);
  EXPECT_NEAR(s.values.at("b"), 2.0, 1e-12);
  EXPECT_NEAR(s.values.at("c"), 4.0, 1e-12);
  EXPECT_NEAR(s.objective, -7.0, 1e-12);
}

TEST(SimplexTest, ObjectiveConstantCounted) {
  DeterministicModel d;
  d.vars = {{.id = "x", .lower = 1, .upper = 2}};
  d.objective = LinExpr::Term("x", 1) + LinExpr(10);
  const Solution s = SimplexSolve(d);
  ASSERT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_DOUBLE_EQ(s.objective, 11.0);
}

// Beale's classic example cycles under the textbook largest-coefficient rule.
TEST(SimplexTest, BealeCyclingExampleTerminates) {
  const Solution s = SimplexSolve(Lp(
      "min: -0.75*x4 + 20*x5 - 0.5*x6 + 6*x7;"
      " r1: 0.25*x4 - 8*x5 - x6 + 9*x7 <= 0;"
      " r2: 0.5*x4 - 12*x5 - 0.5*x6 + 3*x7 <= 0;"
      " r3: x6 <= 1;"));
  ASSERT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_NEAR(s.objective, -1.25, 1e-12);
}

TEST(SimplexTest, IterationLimit) {
  const Solution s = SimplexSolve(LowerModel(DecideModel(Canonicalize(LoadFixture("diet.roc")))),
                                  {.max_pivots = 1});
  EXPECT_EQ(s.status, SolveStatus::kIterationLimit);
}

TEST(SimplexTest, RejectsConeRows) {
  EXPECT_THROW(SimplexSolve(LowerModel(DecideModel(Canonicalize(LoadFixture("ex1.roc"))))),
               UnsupportedError);
}

TEST(SimplexTest, BitIdenticalAcrossRuns) {
  const DeterministicModel d = LowerModel(DecideModel(Canonicalize(LoadFixture("box_row.roc"))));
  const Solution a = SimplexSolve(d);
  const Solution b = SimplexSolve(d);
  EXPECT_EQ(std::memcmp(&a.objective, &b.objective, sizeof(double)), 0);
  EXPECT_EQ(a.iterations, b.iterations);
  ASSERT_EQ(a.values.size(), b.values.size());
  for (const auto& [id, v] : a.values) {
    const double w = b.values.at(id);
    EXPECT_EQ(std::memcmp(&v, &w, sizeof(double)), 0) << id;
  }
}

TEST(SimplexTest, RandomTwoVariableLpsMatchVertexEnumeration) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  std::uniform_real_distribution<double> rhs(-5.0, 30.0);
  for (int trial = 0; trial < 300; ++trial) {
    DeterministicModel d;
    d.vars = {{.id = "x1", .lower = -3, .upper = 8}, {.id = "x2", .lower = -1, .upper = 6}};
    const double c1 = coef(rng);
    const double c2 = coef(rng);
    d.objective = LinExpr::Term("x1", c1) + LinExpr::Term("x2", c2);
    std::vector<testing::HalfPlane> planes = {{1, 0, 8}, {-1, 0, 3}, {0, 1, 6}, {0, -1, 1}};
    for (int i = 0; i < 4; ++i) {
      const double a1 = coef(rng);
      const double a2 = coef(rng);
      const double b = rhs(rng);
      d.linear_rows.push_back({"r" + std::to_string(i),
                               LinExpr::Term("x1", a1) + LinExpr::Term("x2", a2),
                               Sense::kLessEqual, b});
      planes.push_back({a1, a2, b});
    }
    const auto expected = testing::BruteForce2d(c1, c2, planes);
    const Solution s = SimplexSolve(d);
    if (!expected) {
      EXPECT_EQ(s.status, SolveStatus::kInfeasible);
      continue;
    }
    ASSERT_EQ(s.status, SolveStatus::kOptimal);
    EXPECT_NEAR(s.objective, *expected, 1e-9 * std::max(1.0, std::abs(*expected)));
    EXPECT_NEAR(d.objective.Evaluate(s.values), s.objective, 1e-9);
  }
}

Eigen::VectorXd Vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

TEST(PessimizeTest, InfBall) {
  const UncertaintySet set(NormBall{NormIndex::Inf(), 0.1, 2});
  const PessimizationResult r = Pessimize(set, Vec({1, -2}));
  EXPECT_TRUE(r.zstar.isApprox(Vec({0.1, -0.1})));
  EXPECT_NEAR(r.value, 0.3, 1e-15);
}

TEST(PessimizeTest, TwoBall) {
  const UncertaintySet set(NormBall{NormIndex::Two(), 1.0, 2});
  const PessimizationResult r = Pessimize(set, Vec({3, 4}));
  EXPECT_NEAR(r.zstar(0), 0.6, 1e-15);
  EXPECT_NEAR(r.zstar(1), 0.8, 1e-15);
  EXPECT_NEAR(r.value, 5.0, 1e-15);
}

TEST(PessimizeTest, OneBallSpikesLargestEntry) {
  const UncertaintySet set(NormBall{NormIndex::One(), 2.0, 3});
  const PessimizationResult r = Pessimize(set, Vec({1, -5, 3}));
  EXPECT_TRUE(r.zstar.isApprox(Vec({0, -2, 0})));
  EXPECT_NEAR(r.value, 10.0, 1e-15);
}

TEST(PessimizeTest, BoxPolyhedronMatchesInfBall) {
  Eigen::MatrixXd D(4, 2);
  D << 1, 0, -1, 0, 0, 1, 0, -1;
  const UncertaintySet box(Polyhedral{D, Vec({1, 1, 1, 1})});
  const PessimizationResult r = Pessimize(box, Vec({1, 1}));
  EXPECT_NEAR(r.value, 2.0, 1e-12);
  EXPECT_TRUE(r.zstar.isApprox(Vec({1, 1})));
  const PessimizationResult ball =
      Pessimize(UncertaintySet(NormBall{NormIndex::Inf(), 1.0, 2}), Vec({1, 1}));
  EXPECT_NEAR(r.value, ball.value, 1e-12);
}

TEST(PessimizeTest, MinkowskiAddsMembers) {
  const UncertaintySet a(NormBall{NormIndex::Two(), 1.0, 2});
  const UncertaintySet b(NormBall{NormIndex::Inf(), 0.5, 2});
  const PessimizationResult r = Pessimize(UncertaintySet(MinkowskiSum{{a, b}}), Vec({3, 4}));
  EXPECT_NEAR(r.value, 5.0 + 3.5, 1e-12);
  EXPECT_TRUE(r.zstar.isApprox(Vec({1.1, 1.3})));
}

TEST(PessimizeTest, IntersectionUnsupported) {
  const UncertaintySet a(NormBall{NormIndex::Two(), 1.0, 2});
  const UncertaintySet inter(Intersection{{a, a}});
  EXPECT_FALSE(SupportsPessimize(inter));
  EXPECT_THROW(Pessimize(inter, Vec({1, 1})), UnsupportedError);
}

TEST(PessimizeTest, GeneralIndexAttainsDualNorm) {
  const UncertaintySet set(NormBall{NormIndex(3.0), 2.0, 3});
  const Eigen::VectorXd w = Vec({1, -2, 0.5});
  const PessimizationResult r = Pessimize(set, w);
  EXPECT_NEAR(r.value, 2.0 * Norm(w, NormIndex(1.5)), 1e-9);
  EXPECT_NEAR(w.dot(r.zstar), r.value, 1e-9);
  EXPECT_TRUE(set.Contains(r.zstar, 1e-9));
}

TEST(PessimizeTest, WorstPointsAreMembers) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int L = 1 + trial % 4;
    const UncertaintySet set = testing::RandomSet(rng, L, false);
    Eigen::VectorXd w(L);
    for (int j = 0; j < L; ++j) w(j) = coef(rng);
    const PessimizationResult r = Pessimize(set, w);
    EXPECT_TRUE(set.Contains(r.zstar, 1e-9));
    EXPECT_NEAR(w.dot(r.zstar), r.value, 1e-9);
  }
}

TEST(CoordinateRangesTest, Box) {
  Eigen::MatrixXd D(4, 2);
  D << 1, 0, -1, 0, 0, 1, 0, -1;
  const PolyhedronRanges r = CoordinateRanges(Polyhedral{D, Vec({1, 2, 3, 4})});
  EXPECT_TRUE(r.bounded);
  EXPECT_TRUE(r.lower.isApprox(Vec({-2, -4})));
  EXPECT_TRUE(r.upper.isApprox(Vec({1, 3})));
  EXPECT_EQ(r.vertices.size(), 4u);
}

TEST(CoordinateRangesTest, Unbounded) {
  const PolyhedronRanges r =
      CoordinateRanges(Polyhedral{Eigen::MatrixXd::Identity(2, 2), Vec({1, 1})});
  EXPECT_FALSE(r.bounded);
  EXPECT_GE(r.unbounded_coordinate, 0);
}

TEST(CuttingPlaneTest, ProductionPlanAgreesWithReformulation) {
  const Model m = LoadFixture("ex1.roc");
  const testing::Solved a = testing::SolveReformulated(m);
  const testing::Solved b = testing::SolveCuttingPlane(m);
  ASSERT_EQ(a.status, SolveStatus::kOptimal);
  ASSERT_EQ(b.status, SolveStatus::kOptimal);
  EXPECT_TRUE(testing::Close(a.objective, b.objective, 1e-6));
  // Only x1 is used: 50 x1 with (2 + 0.1) x1 <= 300.
  EXPECT_NEAR(a.objective, 50.0 * 300.0 / 2.1, 1e-6);
}

TEST(CuttingPlaneTest, ZeroRadiusEqualsNominal) {
  for (const std::string& name : {"ex1.roc", "box_row.roc", "rhs_fold.roc", "sign_flip.roc"}) {
    const Model m = LoadFixture(name);
    const Model zero = testing::ZeroRadii(m);
    const Solution nominal =
        SimplexSolve(ToDeterministic(Canonicalize(testing::StripUncertainty(m))));
    const testing::Solved cut = testing::SolveCuttingPlane(zero);
    ASSERT_EQ(cut.status, SolveStatus::kOptimal) << name;
    EXPECT_NEAR(cut.solution.objective, nominal.objective, 1e-9) << name;
  }
}

TEST(CuttingPlaneTest, DietStaysInfeasible) {
  for (double r : {0.0, 0.05, 0.1, 1.0, 10.0}) {
    Model m = LoadFixture("diet.roc");
    m.constraints.back().uncertainty->set =
        UncertaintySet(NormBall{NormIndex::One(), r, 5});
    EXPECT_EQ(testing::SolveCuttingPlane(m).status, SolveStatus::kInfeasible) << r;
    EXPECT_EQ(testing::SolveReformulated(m).status, SolveStatus::kInfeasible) << r;
  }
}

TEST(CuttingPlaneTest, KnownOptima) {
  EXPECT_NEAR(testing::SolveCuttingPlane(LoadFixture("box_row.roc")).objective, -5.0, 1e-9);
  EXPECT_NEAR(testing::SolveCuttingPlane(LoadFixture("rhs_fold.roc")).objective, 1.1, 1e-9);
}

Model ScaleRadii(Model m, double factor) {
  for (Constraint& c : m.constraints) {
    if (!c.uncertainty) continue;
    const NormBall* ball = c.uncertainty->set.As<NormBall>();
    if (ball) {
      c.uncertainty->set = UncertaintySet(NormBall{ball->p, ball->radius * factor, ball->dim});
    }
  }
  return m;
}

TEST(CuttingPlaneTest, MonotoneInRadius) {
  for (const std::string& name : {"ex1.roc", "box_row.roc"}) {
    // Minimization sense: canonical objective.
    double previous = -kInfinity;
    for (double f : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0}) {
      const Model m = ScaleRadii(LoadFixture(name), f);
      const Solution s = CuttingPlaneSolve(Canonicalize(m));
      ASSERT_EQ(s.status, SolveStatus::kOptimal);
      EXPECT_LE(previous, s.objective + 1e-8) << name << " " << f;
      previous = s.objective;
    }
  }
}

TEST(CuttingPlaneTest, RandomInstancesAgree) {
  std::mt19937_64 rng(321);
  for (int i = 0; i < 25; ++i) {
    const Model m = testing::RandomInstance(rng);
    const testing::Solved a = testing::SolveReformulated(m);
    const testing::Solved b = testing::SolveCuttingPlane(m);
    ASSERT_EQ(a.status, SolveStatus::kOptimal);
    ASSERT_EQ(b.status, SolveStatus::kOptimal);
    EXPECT_TRUE(testing::Close(a.objective, b.objective, 1e-6))
        << a.objective << " vs " << b.objective << "\n" << FormatModel(m);
  }
}

TEST(CuttingPlaneTest, CutsDoNotRepeat) {
  const Solution s = CuttingPlaneSolve(Canonicalize(LoadFixture("ex1.roc")));
  EXPECT_LT(s.iterations, 500);
}

}  // namespace
}  // namespace roc
