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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "gtest/gtest.h"
#include "nlohmann/json.hpp"
#include "test_util.h"

namespace roc {
namespace {

using nlohmann::json;
using testing::FixturePath;
using testing::ReadFile;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string Scratch(const std::string& name) {
  std::filesystem::create_directories(ROC_SCRATCH_DIR);
  return std::string(ROC_SCRATCH_DIR) + "/" + name;
}

RunResult RunRoc(const std::string& args, const std::string& env = "") {
  const std::string name = ::testing::UnitTest::GetInstance()->current_test_info()->name();
  const std::string out = Scratch(name + ".stdout");
  const std::string err = Scratch(name + ".stderr");
  const std::string cmd = env + (env.empty() ? "" : " ") + std::string(ROC_BINARY) + " " +
                          args + " > " + out + " 2> " + err;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = ReadFile(out);
  r.err = ReadFile(err);
  return r;
}

TEST(CliTest, PipelineProductionPlan) {
  const RunResult r =
      RunRoc("pipeline " + FixturePath("ex1.roc") + " --method both --samples 10000 --seed 1");
  ASSERT_EQ(r.code, 0) << r.err;
  const json report = json::parse(r.out);
  EXPECT_EQ(report["stage"], "report");
  EXPECT_EQ(report["roc_schema"], 1);
  EXPECT_EQ(report["exit_code"], 0);
  EXPECT_EQ(report["verification"]["verdict"], "pass");
  EXPECT_EQ(report["verification"]["violations"], 0);
  EXPECT_EQ(report["verification"]["seed"], 1);
  EXPECT_LE(report["verification"]["oracle_gap"].get<double>(), 1e-6);
  EXPECT_NEAR(report["objective"].get<double>(), 50.0 * 300.0 / 2.1, 1e-6);
}

TEST(CliTest, SolveInfeasibleDiet) {
  const RunResult r = RunRoc("solve " + FixturePath("diet.roc"));
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(json::parse(r.out)["status"], "infeasible");
}

TEST(CliTest, CheckRobustEqualityReportsSpan) {
  const RunResult r = RunRoc("check " + FixturePath("bad.roc"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bad.roc:2:"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("syntax error"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find('^'), std::string::npos) << r.err;
}

TEST(CliTest, CheckSummary) {
  const RunResult r = RunRoc("check " + FixturePath("aro_inventory.roc"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "ok: 2 variables (1 adaptive), 2 constraints (2 uncertain)\n");
}

TEST(CliTest, VerificationFailureExitsFour) {
  // The two solve paths differ in the last few bits, which no tolerance this
  // small accepts.
  const RunResult r = RunRoc("pipeline " + FixturePath("ex1.roc") + " --tol 1e-300");
  EXPECT_EQ(r.code, 4) << r.err;
  EXPECT_EQ(json::parse(r.out)["verification"]["verdict"], "fail");
  EXPECT_NE(r.err.find("verification failed"), std::string::npos);
}

TEST(CliTest, MissingFileIsError) {
  const RunResult r = RunRoc("check " + Scratch("does_not_exist.roc"));
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
}

TEST(CliTest, BadFlagsAreErrors) {
  EXPECT_EQ(RunRoc("pipeline " + FixturePath("ex1.roc") + " --samples 0").code, 1);
  EXPECT_EQ(RunRoc("pipeline " + FixturePath("ex1.roc") + " --tol -1").code, 1);
  EXPECT_EQ(RunRoc("pipeline " + FixturePath("ex1.roc") + " --method magic").code, 1);
  EXPECT_EQ(RunRoc("frobnicate").code, 1);
  EXPECT_EQ(RunRoc("--help").code, 0);
}

TEST(CliTest, UnsupportedLoweringIsError) {
  const std::string path = Scratch("pnorm.roc");
  {
    std::ofstream out(path);
    out << "min: -x1; c: x1 + x2 <= 3 uncertain(Z=ball(p=1.5, r=0.2));\n";
  }
  const RunResult r = RunRoc("pipeline " + path + " --method reformulate");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("'c'"), std::string::npos) << r.err;
}

TEST(CliTest, JsonInputAndStdin) {
  const RunResult dump = RunRoc("canonicalize " + FixturePath("ex1.roc"));
  ASSERT_EQ(dump.code, 0);
  const std::string path = Scratch("ex1.canonical.json");
  {
    std::ofstream out(path);
    out << dump.out;
  }
  const RunResult again = RunRoc("solve " + path);
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_NEAR(json::parse(again.out)["objective"].get<double>(), -50.0 * 300.0 / 2.1, 1e-6);
  const RunResult piped = RunRoc("check - < " + FixturePath("ex1.roc"));
  EXPECT_EQ(piped.code, 0);
}

TEST(CliTest, EmitLpGoldenAndConeFlag) {
  const RunResult nominal = RunRoc("emit " + FixturePath("ex1_nominal.roc"));
  ASSERT_EQ(nominal.code, 0);
  EXPECT_EQ(nominal.out, ReadFile(FixturePath("ex1_nominal.lp")) + "\n");
  EXPECT_EQ(RunRoc("emit " + FixturePath("ex1.roc")).code, 1);
  const RunResult commented = RunRoc("emit " + FixturePath("ex1.roc") + " --allow-soc-comment");
  EXPECT_EQ(commented.code, 0);
  EXPECT_NE(commented.out.find("\\ soc "), std::string::npos);
}

TEST(CliTest, EveryStageEmitsJson) {
  const std::string file = FixturePath("aro_inventory.roc");
  const std::vector<std::pair<std::string, std::string>> stages = {
      {"canonicalize", "canonical"}, {"robustify", "robust"}, {"lower", "lowered"},
      {"emit", "lowered"}, {"check", "model"}, {"solve", "report"}, {"pipeline", "report"}};
  for (const auto& [cmd, stage] : stages) {
    const RunResult r = RunRoc(cmd + " " + file + " --format json");
    ASSERT_EQ(r.code, 0) << cmd << ": " << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["stage"], stage) << cmd;
    EXPECT_EQ(j["roc_schema"], 1) << cmd;
  }
}

TEST(CliTest, LogLevelFromEnvironment) {
  const std::string args = "pipeline " + FixturePath("intersect.roc") + " --samples 10";
  EXPECT_TRUE(RunRoc(args).err.empty());
  const RunResult info = RunRoc(args, "ROC_LOG=info");
  EXPECT_NE(info.err.find("roc: info:"), std::string::npos) << info.err;
  const RunResult bad = RunRoc(args, "ROC_LOG=loud");
  EXPECT_NE(bad.err.find("ROC_LOG"), std::string::npos) << bad.err;
}

TEST(CliTest, DeterministicReportsAndLp) {
  const std::string args = "pipeline " + FixturePath("box_row.roc") + " --seed 9 --lp ";
  const RunResult a = RunRoc(args + Scratch("a.lp"));
  const RunResult b = RunRoc(args + Scratch("b.lp"));
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const std::string lp_a = ReadFile(Scratch("a.lp"));
  EXPECT_FALSE(lp_a.empty());
  EXPECT_EQ(lp_a, ReadFile(Scratch("b.lp")));
}

}  // namespace
}  // namespace roc
