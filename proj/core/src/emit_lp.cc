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
#include <cstdio>
#include <sstream>
#include <string>

#include "roc/lowering.h"

namespace roc {

namespace {

std::string Num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Terms(const LinExpr& e, const std::string& fallback) {
  std::string out;
  for (const auto& [id, c] : e.terms()) {
    if (out.empty()) {
      out = (c < 0 ? "- " : "") + Num(std::abs(c)) + " " + id;
    } else {
      out += (c < 0 ? " - " : " + ") + Num(std::abs(c)) + " " + id;
    }
  }
  if (out.empty() && !fallback.empty()) out = "0 " + fallback;
  return out;
}

}  // namespace

std::string EmitLp(const DeterministicModel& model,
                   const LpWriterOptions& options) {
  if (!model.soc_rows.empty() && !options.allow_soc_comment) {
    throw UnsupportedError("LP output cannot express cone row '" +
                           model.soc_rows.front().id +
                           "'; solve it with cutting planes instead");
  }
  const std::string fallback = model.vars.empty() ? "" : model.vars.front().id;
  std::ostringstream out;
  out << "Minimize\n obj: ";
  const std::string obj = Terms(model.objective, "");
  const double k = model.objective.constant();
  if (obj.empty()) {
    out << Num(k);
  } else {
    out << obj;
    if (k != 0.0) out << (k < 0 ? " - " : " + ") << Num(std::abs(k));
  }
  out << "\nSubject To\n";
  for (const LinearRow& row : model.linear_rows) {
    out << " " << row.id << ": " << Terms(row.lhs, fallback) << " "
        << (row.sense == Sense::kEqual ? "=" : "<=") << " "
        << Num(row.rhs - row.lhs.constant()) << "\n";
  }
  for (const SocRow& row : model.soc_rows) {
    out << "\\ soc " << row.id << ": " << row.t << " >= ||";
    for (std::size_t i = 0; i < row.arg.size(); ++i) {
      const LinExpr& w = row.arg[i];
      std::string text = Terms(w, "");
      const double c = w.constant();
      if (text.empty()) {
        text = Num(c);
      } else if (c != 0.0) {
        text += (c < 0 ? " - " : " + ") + Num(std::abs(c));
      }
      out << (i == 0 ? " " : ", ") << text;
    }
    out << " ||_2\n";
  }
  if (!model.vars.empty()) out << "Bounds\n";
  for (const VariableDecl& v : model.vars) {
    const bool lo = std::isfinite(v.lower);
    const bool hi = std::isfinite(v.upper);
    out << " ";
    if (lo && hi && v.lower == v.upper) {
      out << v.id << " = " << Num(v.lower);
    } else if (!lo && !hi) {
      out << v.id << " free";
    } else if (lo && !hi) {
      out << v.id << " >= " << Num(v.lower);
    } else {
      out << Num(v.lower) << " <= " << v.id << " <= " << Num(v.upper);
    }
    out << "\n";
  }
  out << "End";
  return out.str();
}

}  // namespace roc
