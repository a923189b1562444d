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

// roc: command-line front end for the robust optimization compiler.
//
//   roc check file.roc
//   roc emit file.roc --format lp -o file.lp
//   roc pipeline file.roc --samples 1000 --seed 42

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#if __has_include("CLI11.hpp")
#include "CLI11.hpp"
#else
#include "CLI/CLI.hpp"
#endif
#include "roc/aro.h"
#include "roc/canonicalize.h"
#include "roc/dsl.h"
#include "roc/json_io.h"
#include "roc/lowering.h"
#include "roc/pipeline.h"
#include "roc/robust.h"
#include "spdlog/sinks/stdout_sinks.h"
#include "spdlog/spdlog.h"

namespace {

struct Args {
  std::string input;
  std::string output;
  std::string format;
  std::string method = "both";
  std::string lp_path;
  double tol = 1e-6;
  int samples = 1000;
  std::uint64_t seed = 42;
  bool allow_soc_comment = false;
};

std::string ReadInput(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin),
                       std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw roc::Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool EndsWith(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

roc::Model LoadModel(const std::string& path) {
  const std::string text = ReadInput(path);
  if (EndsWith(path, ".json")) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw roc::ModelError(std::string("invalid JSON: ") + e.what());
    }
    return roc::ModelFromJson(j);
  }
  try {
    return roc::ParseModel(text);
  } catch (const roc::ParseError& e) {
    std::cerr << e.Render(text, path == "-" ? "<stdin>" : path);
    throw;
  }
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw roc::Error("cannot write '" + path + "'");
  out << text;
  spdlog::info("wrote {}", path);
}

roc::PipelineOptions PipelineOptionsFrom(const Args& args) {
  roc::PipelineOptions options;
  std::optional<roc::SolveMethod> method = roc::ParseSolveMethod(args.method);
  if (!method) throw roc::Error("unknown method '" + args.method + "'");
  options.method = *method;
  options.tol = args.tol;
  options.samples = args.samples;
  options.seed = args.seed;
  return options;
}

int Check(const Args& args) {
  const roc::Model model = LoadModel(args.input);
  if (args.format == "json") {
    WriteOutput(args.output, roc::EmitJson(roc::ToJson(model)));
    return roc::kExitOk;
  }
  std::size_t adaptive = model.WaitAndSeeIds().size();
  std::size_t uncertain = 0;
  for (const auto& row : model.constraints) uncertain += row.IsUncertain() ? 1 : 0;
  std::ostringstream out;
  out << "ok: " << model.vars.size() << " variables (" << adaptive
      << " adaptive), " << model.constraints.size() << " constraints ("
      << uncertain << " uncertain)\n";
  WriteOutput(args.output, out.str());
  return roc::kExitOk;
}

int Canonical(const Args& args) {
  const roc::CanonicalModel canonical = roc::Canonicalize(LoadModel(args.input));
  WriteOutput(args.output, roc::EmitJson(roc::ToJson(canonical)));
  return roc::kExitOk;
}

int Robust(const Args& args) {
  const roc::CanonicalModel decided =
      roc::DecideModel(roc::Canonicalize(LoadModel(args.input)));
  WriteOutput(args.output, roc::EmitJson(roc::ToJson(roc::Robustify(decided))));
  return roc::kExitOk;
}

int Emit(const Args& args, const std::string& default_format) {
  const roc::DeterministicModel lowered =
      roc::LowerModel(roc::DecideModel(roc::Canonicalize(LoadModel(args.input))));
  const std::string format = args.format.empty() ? default_format : args.format;
  if (format == "json") {
    WriteOutput(args.output, roc::EmitJson(roc::ToJson(lowered)));
  } else {
    roc::LpWriterOptions options;
    options.allow_soc_comment = args.allow_soc_comment;
    WriteOutput(args.output, roc::EmitLp(lowered, options) + "\n");
  }
  return roc::kExitOk;
}

int Solve(const Args& args) {
  roc::PipelineOptions options = PipelineOptionsFrom(args);
  options.verify = false;
  const roc::PipelineResult result = roc::RunPipeline(LoadModel(args.input), options);
  WriteOutput(args.output, roc::EmitJson(roc::PipelineReportJson(result, options)));
  if (result.exit_code != roc::kExitOk) spdlog::error("no optimal solution");
  return result.exit_code;
}

int Verify(const Args& args) {
  const roc::PipelineOptions options = PipelineOptionsFrom(args);
  const roc::PipelineResult result = roc::RunPipeline(LoadModel(args.input), options);
  const nlohmann::json report = roc::PipelineReportJson(result, options);
  WriteOutput(args.output, roc::EmitJson(report["verification"]));
  if (result.exit_code == roc::kExitVerifyFailed) {
    spdlog::error("verification failed");
  } else if (result.exit_code == roc::kExitNotOptimal) {
    spdlog::error("no optimal solution to verify");
  }
  return result.exit_code;
}

int Pipeline(const Args& args) {
  const roc::PipelineOptions options = PipelineOptionsFrom(args);
  const roc::PipelineResult result = roc::RunPipeline(LoadModel(args.input), options);
  if (!args.lp_path.empty()) {
    if (result.lowered->soc_rows.empty()) {
      WriteOutput(args.lp_path, roc::EmitLp(*result.lowered) + "\n");
    } else {
      spdlog::info("model has cone rows; skipping {}", args.lp_path);
    }
  }
  if (!result.cutting_plane_skipped.empty()) {
    spdlog::info("cutting-plane oracle skipped: {}", result.cutting_plane_skipped);
  }
  WriteOutput(args.output, roc::EmitJson(roc::PipelineReportJson(result, options)));
  if (result.exit_code == roc::kExitVerifyFailed) {
    spdlog::error("verification failed");
  } else if (result.exit_code == roc::kExitNotOptimal) {
    spdlog::error("no optimal solution");
  }
  return result.exit_code;
}

void SetupLogging() {
  auto logger = spdlog::stderr_logger_st("roc");
  logger->set_pattern("roc: %l: %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::err);
  const char* env = std::getenv("ROC_LOG");
  if (env == nullptr) return;
  const std::string level(env);
  if (level == "info") {
    spdlog::set_level(spdlog::level::info);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else if (level != "error") {
    spdlog::error("ignoring ROC_LOG={} (expected error, info or debug)", level);
  }
}

}  // namespace

int main(int argc, char** argv) {
  SetupLogging();

  CLI::App app{"roc: robust counterpart compiler for uncertain linear programs"};
  app.require_subcommand(1);

  Args args;
  auto add_io = [&args](CLI::App* cmd, std::vector<std::string> formats) {
    cmd->add_option("input", args.input, "Model file (.roc, .json, or - for stdin)")
        ->required();
    cmd->add_option("-o,--output", args.output, "Output file (default: stdout)");
    cmd->add_option("--format", args.format, "Output format")
        ->check(CLI::IsMember(formats));
  };
  auto add_solve = [&args](CLI::App* cmd) {
    cmd->add_option("--method", args.method, "reformulate, cutplane or both")
        ->check(CLI::IsMember({"reformulate", "cutplane", "both"}));
    cmd->add_option("--tol", args.tol, "Objective agreement tolerance")
        ->check(CLI::PositiveNumber);
  };
  auto add_verify = [&args](CLI::App* cmd) {
    cmd->add_option("--samples", args.samples, "Random draws per uncertainty set")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", args.seed, "Sampling seed");
  };

  CLI::App* check = app.add_subcommand(
      "check", "Parse and validate a model; --format json writes the parsed model");
  add_io(check, {"json"});
  CLI::App* canon = app.add_subcommand("canonicalize", "Write the canonical model as JSON");
  add_io(canon, {"json"});
  CLI::App* robust = app.add_subcommand("robustify", "Write the robust counterpart as JSON");
  add_io(robust, {"json"});
  CLI::App* lower = app.add_subcommand("lower", "Write the lowered model as JSON");
  add_io(lower, {"lp", "json"});
  CLI::App* emit = app.add_subcommand("emit", "Write the lowered model as LP or JSON");
  add_io(emit, {"lp", "json"});
  emit->add_flag("--allow-soc-comment", args.allow_soc_comment,
                 "Write cone rows as LP comments instead of failing");
  CLI::App* solve = app.add_subcommand("solve", "Solve and print the solution");
  add_io(solve, {"json"});
  add_solve(solve);
  CLI::App* verify = app.add_subcommand("verify", "Solve and verify by sampling");
  add_io(verify, {"json"});
  add_solve(verify);
  add_verify(verify);
  CLI::App* pipeline = app.add_subcommand("pipeline", "Run every stage and write a report");
  add_io(pipeline, {"json"});
  add_solve(pipeline);
  add_verify(pipeline);
  pipeline->add_option("--lp", args.lp_path, "Also write the LP to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? roc::kExitOk : roc::kExitError;
  }
  spdlog::debug("input {}", args.input);

  try {
    if (*check) return Check(args);
    if (*canon) return Canonical(args);
    if (*robust) return Robust(args);
    if (*lower) return Emit(args, "json");
    if (*emit) return Emit(args, "lp");
    if (*solve) return Solve(args);
    if (*verify) return Verify(args);
    return Pipeline(args);
  } catch (const roc::ParseError&) {
    return roc::kExitParseError;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return roc::kExitError;
  }
}
