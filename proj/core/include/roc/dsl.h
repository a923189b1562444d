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

// Reader and writer for the .roc modeling language. The full grammar lives in
// docs/grammar.md. A short example:
//
//   max: 50*x1 + 40*x2;
//   c1: 10*x1 + 20*x2 >= 500 uncertain(Z=ball(p=2, r=0.1));
//   c2: 2*x1 + 3*x2 <= 300 uncertain(on=[x1], P=[[1, 0]], Z=ball(p=inf, r=1, dim=2));

#ifndef ROC_DSL_H_
#define ROC_DSL_H_

#include <string>
#include <string_view>

#include "roc/model.h"

namespace roc {

struct SourceSpan {
  int line = 1;    // 1-based
  int column = 1;  // 1-based, in bytes
  int length = 0;

  bool operator==(const SourceSpan& other) const = default;
};

enum class ParseErrorKind { kLex, kSyntax, kDimension, kUnknownSymbol, kUnboundedSet };

const char* ToString(ParseErrorKind kind);

// First error found in the source; parsing is fail-fast.
class ParseError : public Error {
 public:
  ParseError(SourceSpan span, ParseErrorKind kind, std::string message);

  const SourceSpan& span() const { return span_; }
  ParseErrorKind kind() const { return kind_; }
  const std::string& message() const { return message_; }

  // "file:line:col: kind error: message" followed by the offending line and a
  // caret marker.
  std::string Render(std::string_view source, std::string_view filename) const;

 private:
  SourceSpan span_;
  ParseErrorKind kind_;
  std::string message_;
};

// Parses a complete model. Throws ParseError.
Model ParseModel(std::string_view source);

// Parses a single set expression such as "ball(p=1, r=0.5, dim=3)". Every
// dimension must be given or inferable from sibling members. Throws ParseError.
UncertaintySet ParseUncertaintySpec(std::string_view text);

// Writes a model back as .roc text. Parsing the result yields a model equal to
// the input for every model produced by ParseModel.
std::string FormatModel(const Model& model);
std::string FormatSet(const UncertaintySet& set);

// Shortest decimal text that reads back to the same double; "inf"/"-inf".
std::string FormatNumber(double value);

}  // namespace roc

#endif  // ROC_DSL_H_
