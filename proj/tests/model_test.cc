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
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "roc/model.h"

namespace roc {
namespace {

LinExpr Expr(std::initializer_list<std::pair<std::string, double>> terms,
             double constant = 0.0) {
  LinExpr e(constant);
  for (const auto& [id, c] : terms) e.AddTerm(id, c);
  return e;
}

TEST(LinExprTest, AddCancelsTerms) {
  EXPECT_EQ(Expr({{"x1", 3}, {"x2", -1}}) + Expr({{"x2", 1}}), Expr({{"x1", 3}}));
  EXPECT_EQ((Expr({{"x1", 3}, {"x2", -1}}) + Expr({{"x2", 1}})).terms().size(), 1u);
}

TEST(LinExprTest, AddKeepsSignsWhenMovingTerms) {
  const LinExpr sum = Expr({{"x1", 100}, {"x2", 1}}) + Expr({{"x1", -1}});
  EXPECT_EQ(sum, Expr({{"x1", 99}, {"x2", 1}}));
  EXPECT_EQ(sum.Coefficient("x2"), 1.0);
}

TEST(LinExprTest, ZeroPlusZero) {
  EXPECT_EQ(LinExpr() + LinExpr(), LinExpr());
  EXPECT_TRUE((LinExpr() + LinExpr()).empty());
}

TEST(LinExprTest, Negate) {
  EXPECT_EQ(-Expr({{"x1", 10}, {"x2", 20}}), Expr({{"x1", -10}, {"x2", -20}}));
  EXPECT_EQ(-LinExpr(), LinExpr());
  EXPECT_EQ(-Expr({{"x1", -1}}), Expr({{"x1", 1}}));
}

TEST(LinExprTest, NegateOfZeroHasNoNegativeZero) {
  const LinExpr e = -LinExpr();
  EXPECT_FALSE(std::signbit(e.constant()));
}

TEST(LinExprTest, EvaluateIncludesConstant) {
  EXPECT_DOUBLE_EQ(Expr({{"x1", 2}, {"x2", 3}}, 1).Evaluate({{"x1", 1}, {"x2", 2}}), 9.0);
  EXPECT_DOUBLE_EQ(Expr({{"x1", 2}}).Evaluate({}), 0.0);
}

LinExpr RandomExpr(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 5);
  std::uniform_int_distribution<int> var(1, 6);
  std::uniform_int_distribution<int> coef(-4, 4);
  LinExpr e(coef(rng));
  for (int k = count(rng); k > 0; --k) {
    e.AddTerm("x" + std::to_string(var(rng)), coef(rng));
  }
  return e;
}

TEST(LinExprTest, RandomAlgebraicLaws) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const LinExpr a = RandomExpr(rng);
    const LinExpr b = RandomExpr(rng);
    const LinExpr c = RandomExpr(rng);
    EXPECT_EQ(-(-a), a);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_TRUE((a - a).empty());
    const LinExpr sum = a + b;
    for (const auto& [id, coefficient] : sum.terms()) {
      EXPECT_NE(coefficient, 0.0) << id;
    }
  }
}

TEST(DualNormTest, Table) {
  EXPECT_TRUE(DualNorm(NormIndex::One()).is_inf());
  EXPECT_TRUE(DualNorm(NormIndex::Inf()).is_one());
  EXPECT_TRUE(DualNorm(NormIndex::Two()).is_two());
  EXPECT_DOUBLE_EQ(DualNorm(3.0).value(), 1.5);
  EXPECT_THROW(DualNorm(0.5), ModelError);
}

TEST(DualNormTest, InvolutionOnRandomIndices) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> p(1.0, 10.0);
  for (int i = 0; i < 20; ++i) {
    double value = p(rng);
    if (value == 1.0) value = 1.5;
    const double back = DualNorm(DualNorm(value)).value();
    EXPECT_LE(std::abs(back - value), 1e-12) << value;
    const double q = DualNorm(value).value();
    EXPECT_NEAR(1.0 / value + 1.0 / q, 1.0, 1e-14);
  }
}

TEST(NormTest, KnownValues) {
  Eigen::VectorXd v(2);
  v << 3, -4;
  EXPECT_DOUBLE_EQ(Norm(v, NormIndex::One()), 7.0);
  EXPECT_DOUBLE_EQ(Norm(v, NormIndex::Two()), 5.0);
  EXPECT_DOUBLE_EQ(Norm(v, NormIndex::Inf()), 4.0);
  EXPECT_NEAR(Norm(v, NormIndex(3.0)), std::cbrt(91.0), 1e-12);
}

TEST(UncertaintySetTest, RejectsBadBalls) {
  EXPECT_THROW(UncertaintySet(NormBall{NormIndex::Two(), -1.0, 2}), ModelError);
  EXPECT_THROW(UncertaintySet(NormBall{NormIndex::Two(), 1.0, 0}), ModelError);
  EXPECT_THROW(UncertaintySet(NormBall{NormIndex::Two(), kInfinity, 2}), ModelError);
}

TEST(UncertaintySetTest, RejectsMixedMemberDimensions) {
  const UncertaintySet a(NormBall{NormIndex::Two(), 1.0, 2});
  const UncertaintySet b(NormBall{NormIndex::Two(), 1.0, 3});
  EXPECT_THROW(UncertaintySet(Intersection{{a, b}}), ModelError);
  EXPECT_THROW(UncertaintySet(MinkowskiSum{{a, b}}), ModelError);
  EXPECT_THROW(UncertaintySet(Intersection{{}}), ModelError);
}

TEST(UncertaintySetTest, RejectsRaggedPolyhedron) {
  EXPECT_THROW(UncertaintySet(Polyhedral{Eigen::MatrixXd::Identity(2, 2),
                                         Eigen::VectorXd::Ones(3)}),
               ModelError);
}

TEST(UncertaintySetTest, ZeroDetection) {
  EXPECT_TRUE(UncertaintySet(NormBall{NormIndex::Inf(), 0.0, 2}).IsZero());
  EXPECT_FALSE(UncertaintySet(NormBall{NormIndex::Inf(), 0.1, 2}).IsZero());
  const UncertaintySet zero(NormBall{NormIndex::Two(), 0.0, 2});
  const UncertaintySet unit(NormBall{NormIndex::Two(), 1.0, 2});
  EXPECT_TRUE(UncertaintySet(Intersection{{unit, zero}}).IsZero());
  EXPECT_FALSE(UncertaintySet(MinkowskiSum{{unit, zero}}).IsZero());
}

TEST(UncertaintySetTest, Contains) {
  const UncertaintySet ball(NormBall{NormIndex::Two(), 1.0, 2});
  Eigen::VectorXd z(2);
  z << 0.6, 0.8;
  EXPECT_TRUE(ball.Contains(z));
  z << 0.7, 0.8;
  EXPECT_FALSE(ball.Contains(z));
  EXPECT_FALSE(ball.Contains(Eigen::VectorXd::Zero(3)));
}

Model TwoVarModel() {
  Model m;
  m.vars = {{.id = "x1"}, {.id = "x2"}};
  m.objective.expr = Expr({{"x1", 1}, {"x2", 1}});
  Constraint c;
  c.id = "c";
  c.lhs = Expr({{"x1", 1}, {"x2", 2}});
  c.rhs = 4;
  m.constraints.push_back(c);
  return m;
}

TEST(ValidateTest, AcceptsPlainModel) { EXPECT_NO_THROW(Validate(TwoVarModel())); }

TEST(ValidateTest, DimensionMismatchIsTyped) {
  Model m = TwoVarModel();
  m.constraints[0].uncertainty =
      UncertainBlock{{"x1", "x2"}, Eigen::MatrixXd::Identity(2, 3),
                     UncertaintySet(NormBall{NormIndex::Two(), 1.0, 2})};
  EXPECT_THROW(Validate(m), ModelError);
}

TEST(ValidateTest, RejectsRobustEquality) {
  Model m = TwoVarModel();
  m.constraints[0].sense = Sense::kEqual;
  m.constraints[0].uncertainty =
      UncertainBlock{{"x1", "x2"}, Eigen::MatrixXd::Identity(2, 2),
                     UncertaintySet(NormBall{NormIndex::Two(), 1.0, 2})};
  EXPECT_THROW(Validate(m), ModelError);
}

TEST(ValidateTest, RejectsUnknownAndDuplicateIds) {
  Model m = TwoVarModel();
  m.constraints[0].lhs.AddTerm("x9", 1.0);
  EXPECT_THROW(Validate(m), ModelError);
  m = TwoVarModel();
  m.vars.push_back({.id = "x1"});
  EXPECT_THROW(Validate(m), ModelError);
  m = TwoVarModel();
  m.constraints.push_back(m.constraints[0]);
  EXPECT_THROW(Validate(m), ModelError);
}

TEST(ValidateTest, AdaptiveTermsNeedWaitAndSeeVariables) {
  Model m = TwoVarModel();
  m.constraints[0].adaptive = Expr({{"x2", 1}});
  EXPECT_THROW(Validate(m), ModelError);
}

TEST(DecisionRuleTest, Evaluate) {
  DecisionRule rule;
  rule.ids = {"y1", "y2"};
  rule.u = Eigen::Vector2d(1.0, 2.0);
  rule.V = Eigen::MatrixXd(1, 2);
  rule.V << 3.0, -1.0;
  const Eigen::VectorXd y = rule.Evaluate(Eigen::VectorXd::Constant(1, 2.0));
  EXPECT_DOUBLE_EQ(y(0), 7.0);
  EXPECT_DOUBLE_EQ(y(1), 0.0);
}

}  // namespace
}  // namespace roc
