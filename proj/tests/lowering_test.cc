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
#include <vector>

#include "gtest/gtest.h"
#include "roc/dsl.h"
#include "roc/lowering.h"
#include "test_util.h"

namespace roc {
namespace {

using testing::LoadFixture;

DeterministicModel LowerFixture(const std::string& name) {
  return LowerModel(DecideModel(Canonicalize(LoadFixture(name))));
}

const LinearRow& FindRow(const DeterministicModel& m, const std::string& id) {
  for (const LinearRow& r : m.linear_rows) {
    if (r.id == id) return r;
  }
  throw std::runtime_error("no row " + id);
}

TEST(LowerNormsTest, BoxRowBecomesSumOfAbsoluteValues) {
  const DeterministicModel d = LowerFixture("ex1.roc");
  const LinearRow& c2 = FindRow(d, "c2");
  EXPECT_EQ(c2.rhs, 300.0);
  std::vector<std::string> t;
  for (const auto& [id, c] : c2.lhs.terms()) {
    if (id.rfind("lo.t", 0) == 0) {
      EXPECT_EQ(c, 0.1);
      t.push_back(id);
    }
  }
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(c2.lhs.Coefficient("x3"), 4.0);
  int sign_rows = 0;
  for (const LinearRow& r : d.linear_rows) {
    for (const std::string& id : t) {
      if (r.id.rfind(id + ".", 0) != 0) continue;
      ++sign_rows;
      EXPECT_EQ(r.sense, Sense::kLessEqual);
      EXPECT_EQ(r.lhs.Coefficient(id), -1.0);
      EXPECT_EQ(r.lhs.terms().size(), 2u);
      EXPECT_EQ(r.rhs, 0.0);
    }
  }
  EXPECT_EQ(sign_rows, 8);
  ASSERT_EQ(d.soc_rows.size(), 1u);
  EXPECT_EQ(d.FindVar(d.soc_rows[0].t)->lower, 0.0);
}

TEST(LowerNormsTest, ZeroWeightAddsNothing) {
  RobustModel rm;
  rm.vars = {{.id = "x1"}, {.id = "x2"}};
  rm.rows.push_back({"c", LinExpr::Term("x1", 1), Sense::kLessEqual, 1.0,
                     {{0.0, NormIndex::Two(), {LinExpr::Term("x1", 1), LinExpr::Term("x2", 1)}},
                      {0.0, NormIndex(1.5), {LinExpr::Term("x2", 1)}}}});
  const DeterministicModel d = LowerNorms(rm);
  EXPECT_EQ(d.vars.size(), 2u);
  ASSERT_EQ(d.linear_rows.size(), 1u);
  EXPECT_EQ(d.linear_rows[0].lhs, LinExpr::Term("x1", 1));
  EXPECT_TRUE(d.soc_rows.empty());
}

TEST(LowerNormsTest, ThreeFourFive) {
  RobustModel rm;
  rm.vars = {{.id = "x1", .lower = 3, .upper = 3},
             {.id = "x2", .lower = 4, .upper = 4},
             {.id = "s", .lower = -kInfinity}};
  rm.objective = LinExpr::Term("s", 1);
  rm.rows.push_back({"c", LinExpr::Term("s", -1), Sense::kLessEqual, 0.0,
                     {{1.0, NormIndex::Two(), {LinExpr::Term("x1", 1), LinExpr::Term("x2", 1)}}}});
  const DeterministicModel d = LowerNorms(rm);
  ASSERT_EQ(d.soc_rows.size(), 1u);
  const Solution s = SolveDeterministic(d);
  ASSERT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_NEAR(s.values.at(d.soc_rows[0].t), 5.0, 1e-6);
  EXPECT_NEAR(s.objective, 5.0, 1e-6);
}

TEST(LowerNormsTest, InfNormSharesOneVariable) {
  RobustModel rm;
  rm.vars = {{.id = "x1"}, {.id = "x2"}};
  rm.rows.push_back({"c", LinExpr(), Sense::kLessEqual, 1.0,
                     {{2.0, NormIndex::Inf(), {LinExpr::Term("x1", 1), LinExpr::Term("x2", 1)}}}});
  const DeterministicModel d = LowerNorms(rm);
  EXPECT_EQ(d.vars.size(), 3u);
  EXPECT_EQ(d.linear_rows.size(), 5u);
  EXPECT_EQ(d.linear_rows[0].lhs, LinExpr::Term(d.vars[2].id, 2.0));
}

TEST(LowerNormsTest, UnsupportedIndexNamesTheRow) {
  const Model m = ParseModel(
      "min: x1; my_row: x1 + x2 <= 3 uncertain(Z=ball(p=1.5, r=0.2));");
  const RobustModel rm = Robustify(Canonicalize(m));
  try {
    LowerNorms(rm);
    FAIL() << "expected UnsupportedError";
  } catch (const UnsupportedError& e) {
    EXPECT_NE(std::string(e.what()).find("my_row"), std::string::npos) << e.what();
  }
}

class LoweringFixtureTest : public ::testing::TestWithParam<std::string> {};

TEST_P(LoweringFixtureTest, NewVariableCount) {
  const CanonicalModel decided = DecideModel(Canonicalize(LoadFixture(GetParam())));
  const RobustModel rm = Robustify(decided);
  std::size_t expected = 0;
  for (const RobustRow& r : rm.rows) {
    for (const NormTerm& t : r.norms) {
      if (t.weight == 0.0) continue;
      expected += t.q.is_one() ? t.arg.size() : 1;
    }
  }
  const DeterministicModel d = LowerNorms(rm);
  EXPECT_EQ(d.vars.size() - rm.vars.size(), expected);
  for (const SocRow& soc : d.soc_rows) EXPECT_EQ(d.FindVar(soc.t)->lower, 0.0);
}

TEST_P(LoweringFixtureTest, LoweredOptimumMatchesCuttingPlane) {
  const Model m = LoadFixture(GetParam());
  const CanonicalModel decided = DecideModel(Canonicalize(m));
  bool all_supported = true;
  for (const Constraint& c : decided.model().constraints) {
    if (c.uncertainty && !SupportsPessimize(c.uncertainty->set)) all_supported = false;
  }
  if (!all_supported) GTEST_SKIP() << "no pessimization oracle for this set";
  const Solution lowered = SolveDeterministic(LowerModel(decided));
  const Solution cut = CuttingPlaneSolve(decided);
  ASSERT_EQ(lowered.status, cut.status);
  if (lowered.status != SolveStatus::kOptimal) return;
  EXPECT_TRUE(testing::Close(lowered.objective, cut.objective, 1e-6))
      << lowered.objective << " vs " << cut.objective;
}

INSTANTIATE_TEST_SUITE_P(Fixtures, LoweringFixtureTest,
                         ::testing::ValuesIn(testing::SolvableFixtures()));

TEST(EmitLpTest, NominalGolden) {
  const std::string lp = EmitLp(LowerFixture("ex1_nominal.roc"));
  EXPECT_EQ(lp, testing::ReadFile(testing::FixturePath("ex1_nominal.lp")));
}

TEST(EmitLpTest, EmptyModel) {
  EXPECT_EQ(EmitLp(DeterministicModel{}), "Minimize\n obj: 0\nSubject To\nEnd");
}

TEST(EmitLpTest, ConeRowsNeedFlag) {
  const DeterministicModel d = LowerFixture("ex1.roc");
  try {
    EmitLp(d);
    FAIL() << "expected UnsupportedError";
  } catch (const UnsupportedError& e) {
    EXPECT_NE(std::string(e.what()).find(d.soc_rows[0].id), std::string::npos);
  }
  const std::string lp = EmitLp(d, {.allow_soc_comment = true});
  EXPECT_NE(lp.find("\\ soc " + d.soc_rows[0].id + ": "), std::string::npos) << lp;
}

TEST(EmitLpTest, BoundForms) {
  DeterministicModel d;
  d.vars = {{.id = "a"},
            {.id = "b", .lower = -kInfinity},
            {.id = "c", .lower = 2, .upper = 2},
            {.id = "e", .lower = -1, .upper = 0.5},
            {.id = "f", .lower = -kInfinity, .upper = 3}};
  d.objective = LinExpr::Term("a", 1) + LinExpr::Term("b", -2) + LinExpr(4);
  d.linear_rows.push_back({"r", LinExpr::Term("e", 0.1), Sense::kEqual, 1.0});
  d.linear_rows.push_back({"z", LinExpr(), Sense::kLessEqual, 1.0});
  EXPECT_EQ(EmitLp(d),
            "Minimize\n"
            " obj: 1 a - 2 b + 4\n"
            "Subject To\n"
            " r: 0.10000000000000001 e = 1\n"
            " z: 0 a <= 1\n"
            "Bounds\n"
            " a >= 0\n"
            " b free\n"
            " c = 2\n"
            " -1 <= e <= 0.5\n"
            " -inf <= f <= 3\n"
            "End");
}

TEST(EmitLpTest, Deterministic) {
  const std::string a = EmitLp(LowerFixture("diet.roc"));
  const std::string b = EmitLp(LowerFixture("diet.roc"));
  EXPECT_EQ(a, b);
}

}  // namespace
}  // namespace roc
