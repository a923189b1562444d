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

#include "roc/aro.h"
#include "roc/json_io.h"
#include "roc/pipeline.h"

namespace roc {

const char* ToString(SolveMethod method) {
  switch (method) {
    case SolveMethod::kReformulate:
      return "reformulate";
    case SolveMethod::kCutPlane:
      return "cutplane";
    case SolveMethod::kBoth:
      return "both";
  }
  return "?";
}

std::optional<SolveMethod> ParseSolveMethod(const std::string& text) {
  if (text == "reformulate") return SolveMethod::kReformulate;
  if (text == "cutplane") return SolveMethod::kCutPlane;
  if (text == "both") return SolveMethod::kBoth;
  return std::nullopt;
}

CanonicalModel DecideModel(const CanonicalModel& canonical) {
  return ApplyLdr(canonical);
}

DeterministicModel LowerModel(const CanonicalModel& decided) {
  return LowerNorms(Robustify(decided));
}

namespace {

// Reason the worst-case oracle cannot handle the model, or "" if it can.
std::string OracleGap(const CanonicalModel& decided) {
  for (const Constraint& row : decided.model().constraints) {
    if (row.uncertainty && !SupportsPessimize(row.uncertainty->set)) {
      return "row '" + row.id + "' uses an intersection set; the cutting-plane " +
             "oracle has no worst-case search for it";
    }
  }
  return "";
}

nlohmann::json Summary(const std::optional<Solution>& s, double sign) {
  if (!s) return nullptr;
  nlohmann::json j = {{"status", ToString(s->status)}, {"iterations", s->iterations}};
  j["objective"] = s->status == SolveStatus::kOptimal
                       ? nlohmann::json(sign * s->objective + 0.0)
                       : nlohmann::json(nullptr);
  return j;
}

}  // namespace

PipelineResult RunPipeline(const Model& model, const PipelineOptions& options) {
  PipelineResult r{model, {}, {}, {}, {}, {}, {}, {}, {}, kExitOk};
  r.canonical = Canonicalize(model);
  r.decided = DecideModel(*r.canonical);
  r.robust = Robustify(*r.decided);
  r.lowered = LowerNorms(*r.robust);

  if (options.method != SolveMethod::kCutPlane) {
    r.reformulated = SolveDeterministic(*r.lowered);
  }
  if (options.method != SolveMethod::kReformulate) {
    r.cutting_plane_skipped = OracleGap(*r.decided);
    if (r.cutting_plane_skipped.empty()) {
      r.cutting_plane = CuttingPlaneSolve(*r.decided);
    } else if (options.method == SolveMethod::kCutPlane) {
      throw UnsupportedError(r.cutting_plane_skipped);
    }
  }

  const Solution& primary = r.reformulated ? *r.reformulated : *r.cutting_plane;
  if (primary.status != SolveStatus::kOptimal) {
    r.exit_code = kExitNotOptimal;
    return r;
  }
  if (!options.verify) return r;
  VerifyOptions verify;
  verify.samples = options.samples;
  verify.seed = options.seed;
  verify.gap_tol = options.tol;
  const bool both = r.reformulated && r.cutting_plane;
  if (both && r.cutting_plane->status == SolveStatus::kOptimal) {
    verify.other_objective = r.cutting_plane->objective;
  }
  r.report = VerifySolution(*r.canonical, primary, verify);
  if (both && r.cutting_plane->status != SolveStatus::kOptimal) {
    r.report->oracle_gap = kInfinity;
    r.report->pass = false;
  }
  r.exit_code = r.report->pass ? kExitOk : kExitVerifyFailed;
  return r;
}

nlohmann::json PipelineReportJson(const PipelineResult& result,
                                  const PipelineOptions& options) {
  const double sign = ObjectiveSign(result.model);
  const std::optional<Solution>& primary =
      result.reformulated ? result.reformulated : result.cutting_plane;
  nlohmann::json j = {{"roc_schema", kJsonSchemaVersion},
                      {"stage", "report"},
                      {"method", ToString(options.method)},
                      {"samples", options.samples},
                      {"seed", options.seed},
                      {"tol", options.tol},
                      {"exit_code", result.exit_code}};
  j["status"] = primary ? ToString(primary->status) : "not_run";
  j["objective"] = primary && primary->status == SolveStatus::kOptimal
                       ? nlohmann::json(sign * primary->objective + 0.0)
                       : nlohmann::json(nullptr);
  j["reformulation"] = Summary(result.reformulated, sign);
  j["cutting_plane"] = Summary(result.cutting_plane, sign);
  j["cutting_plane_skipped"] = result.cutting_plane_skipped.empty()
                                   ? nlohmann::json(nullptr)
                                   : nlohmann::json(result.cutting_plane_skipped);
  nlohmann::json values = nlohmann::json::object();
  nlohmann::json rule = nullptr;
  if (primary && primary->status == SolveStatus::kOptimal) {
    for (const VariableDecl& v : result.model.vars) {
      if (v.stage == Stage::kHereAndNow) values[v.id] = primary->values.at(v.id);
    }
    if (result.model.HasAdaptive()) {
      const DecisionRule dr = ExtractDecisionRule(result.canonical->model(),
                                                  primary->values);
      nlohmann::json V = nlohmann::json::array();
      for (Eigen::Index k = 0; k < dr.V.rows(); ++k) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < dr.V.cols(); ++c) row.push_back(dr.V(k, c));
        V.push_back(row);
      }
      nlohmann::json u = nlohmann::json::array();
      for (Eigen::Index c = 0; c < dr.u.size(); ++c) u.push_back(dr.u(c));
      rule = {{"kind", dr.kind == RuleKind::kStatic ? "static" : "linear"},
              {"ids", dr.ids},
              {"u", u},
              {"V", V}};
    }
  }
  j["values"] = values;
  j["decision_rule"] = rule;
  j["verification"] = result.report ? ToJson(*result.report) : nlohmann::json(nullptr);
  return j;
}

}  // namespace roc
