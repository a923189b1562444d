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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "roc/dsl.h"
#include "roc/solver.h"

namespace roc {

const char* ToString(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kLex:
      return "lex";
    case ParseErrorKind::kSyntax:
      return "syntax";
    case ParseErrorKind::kDimension:
      return "dimension";
    case ParseErrorKind::kUnknownSymbol:
      return "unknown-symbol";
    case ParseErrorKind::kUnboundedSet:
      return "unbounded-set";
  }
  return "?";
}

ParseError::ParseError(SourceSpan span, ParseErrorKind kind, std::string message)
    : Error(std::to_string(span.line) + ":" + std::to_string(span.column) +
            ": " + ToString(kind) + " error: " + message),
      span_(span),
      kind_(kind),
      message_(std::move(message)) {}

std::string ParseError::Render(std::string_view source,
                               std::string_view filename) const {
  std::ostringstream out;
  out << filename << ":" << span_.line << ":" << span_.column << ": "
      << ToString(kind_) << " error: " << message_ << "\n";
  int line = 1;
  std::size_t start = 0;
  while (line < span_.line && start < source.size()) {
    std::size_t nl = source.find('\n', start);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
    ++line;
  }
  std::size_t end = source.find('\n', start);
  if (end == std::string_view::npos) end = source.size();
  out << "  " << source.substr(start, end - start) << "\n  "
      << std::string(static_cast<std::size_t>(span_.column - 1), ' ')
      << std::string(static_cast<std::size_t>(std::max(1, span_.length)), '^')
      << "\n";
  return out.str();
}

namespace {

enum class Tok {
  kEnd,
  kIdent,
  kNumber,
  kSemicolon,
  kColon,
  kComma,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kAssign,  // '='
  kLe,
  kGe,
  kPlus,
  kMinus,
  kStar,
};

const char* TokName(Tok t) {
  switch (t) {
    case Tok::kEnd:
      return "end of input";
    case Tok::kIdent:
      return "identifier";
    case Tok::kNumber:
      return "number";
    case Tok::kSemicolon:
      return "';'";
    case Tok::kColon:
      return "':'";
    case Tok::kComma:
      return "','";
    case Tok::kLParen:
      return "'('";
    case Tok::kRParen:
      return "')'";
    case Tok::kLBracket:
      return "'['";
    case Tok::kRBracket:
      return "']'";
    case Tok::kAssign:
      return "'='";
    case Tok::kLe:
      return "'<='";
    case Tok::kGe:
      return "'>='";
    case Tok::kPlus:
      return "'+'";
    case Tok::kMinus:
      return "'-'";
    case Tok::kStar:
      return "'*'";
  }
  return "?";
}

struct Token {
  Tok type = Tok::kEnd;
  std::string_view text;
  double number = 0.0;
  SourceSpan span;
};

const std::set<std::string, std::less<>>& Keywords() {
  static const std::set<std::string, std::less<>> kKeywords = {
      "var",  "adaptive",      "min",         "max",  "uncertain",
      "rhs_uncertain", "uncertainty", "rule", "inf"};
  return kKeywords;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    for (;;) {
      SkipSpaceAndComments();
      Token t;
      t.span = {line_, col_, 0};
      if (pos_ >= src_.size()) {
        t.type = Tok::kEnd;
        // Point EOF errors at the last character so spans stay in the text.
        t.span = last_span_;
        out.push_back(t);
        return out;
      }
      const std::size_t start = pos_;
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '_')) {
          Advance();
        }
        t.type = Tok::kIdent;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        LexNumber(t);
      } else {
        Advance();
        switch (c) {
          case ';':
            t.type = Tok::kSemicolon;
            break;
          case ':':
            t.type = Tok::kColon;
            break;
          case ',':
            t.type = Tok::kComma;
            break;
          case '(':
            t.type = Tok::kLParen;
            break;
          case ')':
            t.type = Tok::kRParen;
            break;
          case '[':
            t.type = Tok::kLBracket;
            break;
          case ']':
            t.type = Tok::kRBracket;
            break;
          case '+':
            t.type = Tok::kPlus;
            break;
          case '-':
            t.type = Tok::kMinus;
            break;
          case '*':
            t.type = Tok::kStar;
            break;
          case '=':
            t.type = Tok::kAssign;
            if (Peek() == '=') Advance();
            break;
          case '<':
            if (Peek() != '=') Fail(start, "expected '<='");
            Advance();
            t.type = Tok::kLe;
            break;
          case '>':
            if (Peek() != '=') Fail(start, "expected '>='");
            Advance();
            t.type = Tok::kGe;
            break;
          default: {
            std::string msg = "unexpected character '";
            msg += c;
            msg += "'";
            Fail(start, msg);
          }
        }
      }
      t.text = src_.substr(start, pos_ - start);
      t.span.length = static_cast<int>(pos_ - start);
      last_span_ = t.span;
      out.push_back(t);
    }
  }

 private:
  char Peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  void Advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void SkipSpaceAndComments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') Advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        Advance();
      } else {
        break;
      }
    }
  }

  void LexNumber(Token& t) {
    const std::size_t start = pos_;
    const SourceSpan span = t.span;
    auto digits = [&] {
      int n = 0;
      while (std::isdigit(static_cast<unsigned char>(Peek()))) {
        Advance();
        ++n;
      }
      return n;
    };
    int n = digits();
    if (Peek() == '.') {
      Advance();
      n += digits();
    }
    if (n == 0) Fail(start, "malformed number");
    if (Peek() == 'e' || Peek() == 'E') {
      Advance();
      if (Peek() == '+' || Peek() == '-') Advance();
      if (digits() == 0) Fail(start, "malformed exponent");
    }
    if (std::isalpha(static_cast<unsigned char>(Peek())) || Peek() == '_') {
      Fail(start, "identifier cannot start with a digit (write 2*x, not 2x)");
    }
    const std::string_view text = src_.substr(start, pos_ - start);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      Fail(start, "number out of range");
    }
    t.type = Tok::kNumber;
    t.number = value;
    t.span = span;
  }

  [[noreturn]] void Fail(std::size_t start, const std::string& msg) {
    // Recompute the column of `start` on the current line.
    int col = col_ - static_cast<int>(pos_ - start);
    throw ParseError({line_, std::max(1, col), std::max<int>(1, pos_ - start)},
                     ParseErrorKind::kLex, msg);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  SourceSpan last_span_{1, 1, 0};
};

// Set expression before its dimension is known.
struct SetSyntax {
  enum class Kind { kBall, kPoly, kIntersect, kMinkowski } kind = Kind::kBall;
  SourceSpan span;
  double p = 2.0;
  double radius = 0.0;
  std::optional<int> dim;
  Eigen::MatrixXd D;
  Eigen::VectorXd d;
  std::vector<SetSyntax> members;
};

struct MatrixLiteral {
  std::vector<std::vector<double>> rows;
  SourceSpan span;
};

struct ExprTerm {
  std::string id;
  double coefficient = 0.0;
  SourceSpan span;
};

struct ParsedExpr {
  std::vector<ExprTerm> terms;
  double constant = 0.0;
};

class Parser {
 public:
  explicit Parser(std::string_view source) : tokens_(Lexer(source).Run()) {}

  Model ParseModelText() {
    while (Cur().type != Tok::kEnd) ParseStatement();
    if (!model_.HasAdaptive() && model_.adaptive_set &&
        !declared_shared_set_) {
      model_.adaptive_set.reset();
    }
    if (model_.HasAdaptive() && !model_.adaptive_set) {
      throw ParseError(Cur().span, ParseErrorKind::kSyntax,
                       "wait-and-see variables need a shared set: add "
                       "'uncertainty: <set>;'");
    }
    try {
      Validate(model_);
    } catch (const ModelError& e) {
      throw ParseError(Cur().span, ParseErrorKind::kDimension, e.what());
    }
    return std::move(model_);
  }

  UncertaintySet ParseSetText() {
    SetSyntax syntax = ParseSet();
    Expect(Tok::kEnd, "after set expression");
    return BuildSet(syntax, std::nullopt);
  }

 private:
  const Token& Cur() const { return tokens_[pos_]; }
  const Token& Next() const {
    return tokens_[std::min(pos_ + 1, tokens_.size() - 1)];
  }
  bool IsIdent(std::string_view word) const {
    return Cur().type == Tok::kIdent && Cur().text == word;
  }
  Token Take() {
    Token t = Cur();
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void Fail(const SourceSpan& span, ParseErrorKind kind,
                         const std::string& msg) const {
    throw ParseError(span, kind, msg);
  }
  [[noreturn]] void Unexpected(const std::string& what) const {
    Fail(Cur().span, ParseErrorKind::kSyntax,
         "expected " + what + ", found " +
             (Cur().type == Tok::kEnd ? std::string("end of input")
                                      : "'" + std::string(Cur().text) + "'"));
  }

  Token Expect(Tok type, const std::string& context) {
    if (Cur().type != type) {
      Unexpected(std::string(TokName(type)) + " " + context);
    }
    return Take();
  }

  void ExpectWord(std::string_view word) {
    if (!IsIdent(word)) Unexpected("'" + std::string(word) + "'");
    Take();
  }

  // ---- statements --------------------------------------------------------

  void ParseStatement() {
    if (IsIdent("var")) {
      ParseVarDecl(Stage::kHereAndNow);
    } else if (IsIdent("adaptive")) {
      Take();
      if (!IsIdent("var")) Unexpected("'var' after 'adaptive'");
      ParseVarDecl(Stage::kWaitAndSee);
    } else if (IsIdent("uncertainty")) {
      ParseSharedSet();
    } else if (IsIdent("min") || IsIdent("max")) {
      ParseObjective();
    } else if (Cur().type == Tok::kIdent) {
      ParseConstraint();
    } else {
      Unexpected("a statement");
    }
  }

  void CheckNewName(const Token& name) {
    if (Keywords().count(name.text) != 0) {
      Fail(name.span, ParseErrorKind::kSyntax,
           "'" + std::string(name.text) + "' is a reserved word");
    }
  }

  // var a, b >= 0 <= 10;   adaptive var y >= 0 rule=linear;
  void ParseVarDecl(Stage stage) {
    const Token kw = Take();  // 'var'
    std::vector<Token> names;
    do {
      if (!names.empty()) Take();  // ','
      Token name = Expect(Tok::kIdent, "in variable declaration");
      CheckNewName(name);
      const std::string id(name.text);
      if (model_.FindVar(id) != nullptr) {
        Fail(name.span, ParseErrorKind::kSyntax,
             used_.count(id) != 0
                 ? "variable '" + id + "' declared after its first use"
                 : "variable '" + id + "' declared twice");
      }
      names.push_back(name);
    } while (Cur().type == Tok::kComma);

    VariableDecl decl;
    decl.stage = stage;
    bool have_lower = false;
    bool have_upper = false;
    for (;;) {
      if (Cur().type == Tok::kGe && !have_lower) {
        Take();
        decl.lower = ParseSignedNumber(true);
        have_lower = true;
      } else if (Cur().type == Tok::kLe && !have_upper) {
        Take();
        decl.upper = ParseSignedNumber(true);
        have_upper = true;
      } else if (IsIdent("rule")) {
        const Token rule_tok = Take();
        if (stage != Stage::kWaitAndSee) {
          Fail(rule_tok.span, ParseErrorKind::kSyntax,
               "'rule' only applies to adaptive variables");
        }
        Expect(Tok::kAssign, "after 'rule'");
        const Token kind = Expect(Tok::kIdent, "decision rule kind");
        if (kind.text == "linear") {
          decl.rule = RuleKind::kLinear;
        } else if (kind.text == "static") {
          decl.rule = RuleKind::kStatic;
        } else {
          Fail(kind.span, ParseErrorKind::kUnknownSymbol,
               "unknown decision rule '" + std::string(kind.text) +
                   "' (expected linear or static)");
        }
      } else {
        break;
      }
    }
    if (decl.lower > decl.upper) {
      Fail(kw.span, ParseErrorKind::kSyntax, "lower bound exceeds upper bound");
    }
    Expect(Tok::kSemicolon, "to end the declaration");
    for (const Token& name : names) {
      decl.id = std::string(name.text);
      model_.vars.push_back(decl);
    }
  }

  void ParseSharedSet() {
    const Token kw = Take();
    Expect(Tok::kColon, "after 'uncertainty'");
    if (declared_shared_set_) {
      Fail(kw.span, ParseErrorKind::kSyntax, "shared uncertainty set declared twice");
    }
    if (model_.adaptive_set) {
      Fail(kw.span, ParseErrorKind::kSyntax,
           "shared uncertainty set must be declared before adaptive rows use it");
    }
    SetSyntax syntax = ParseSet();
    model_.adaptive_set = BuildSet(syntax, std::nullopt);
    declared_shared_set_ = true;
    Expect(Tok::kSemicolon, "after the shared set");
  }

  void ParseObjective() {
    const Token kw = Take();
    if (have_objective_) {
      Fail(kw.span, ParseErrorKind::kSyntax, "second objective");
    }
    have_objective_ = true;
    Expect(Tok::kColon, "after '" + std::string(kw.text) + "'");
    Objective& obj = model_.objective;
    obj.sense =
        kw.text == "max" ? ObjectiveSense::kMaximize : ObjectiveSense::kMinimize;
    ParsedExpr expr = ParseExpr();
    std::vector<std::string> order;
    SplitExpr(expr, obj.expr, obj.adaptive, order);
    obj.expr.AddConstant(expr.constant);
    const bool adaptive = obj.adaptive.HasTerms();
    while (IsIdent("uncertain")) {
      const Token clause = Cur();
      if (obj.uncertainty) {
        Fail(clause.span, ParseErrorKind::kSyntax, "duplicate 'uncertain' clause");
      }
      obj.uncertainty = ParseCoefficientClause(order, adaptive);
    }
    if (IsIdent("rhs_uncertain")) {
      Fail(Cur().span, ParseErrorKind::kSyntax,
           "objectives have no right-hand side; use 'uncertain'");
    }
    Expect(Tok::kSemicolon, "after the objective");
  }

  void ParseConstraint() {
    const Token name = Take();
    CheckNewName(name);
    const std::string id(name.text);
    if (!row_ids_.insert(id).second) {
      Fail(name.span, ParseErrorKind::kSyntax, "duplicate constraint '" + id + "'");
    }
    Expect(Tok::kColon, "after constraint name");
    ParsedExpr left = ParseExpr();
    const Token sense_tok = Cur();
    Sense sense;
    if (sense_tok.type == Tok::kLe) {
      sense = Sense::kLessEqual;
    } else if (sense_tok.type == Tok::kGe) {
      sense = Sense::kGreaterEqual;
    } else if (sense_tok.type == Tok::kAssign) {
      sense = Sense::kEqual;
    } else {
      Unexpected("'<=', '>=' or '='");
    }
    Take();
    ParsedExpr right = ParseExpr();
    // Move everything to the left: left - right  sense  0.
    for (ExprTerm t : right.terms) {
      t.coefficient = -t.coefficient;
      left.terms.push_back(std::move(t));
    }
    left.constant -= right.constant;

    Constraint row;
    row.id = id;
    row.sense = sense;
    std::vector<std::string> order;
    SplitExpr(left, row.lhs, row.adaptive, order);
    row.rhs = left.constant == 0.0 ? 0.0 : -left.constant;
    const bool adaptive = row.HasAdaptive();

    for (;;) {
      if (IsIdent("uncertain")) {
        if (row.uncertainty) {
          Fail(Cur().span, ParseErrorKind::kSyntax, "duplicate 'uncertain' clause");
        }
        const SourceSpan span = Cur().span;
        RejectRobustEquality(sense, span);
        row.uncertainty = ParseCoefficientClause(order, adaptive);
      } else if (IsIdent("rhs_uncertain")) {
        if (row.rhs_uncertainty) {
          Fail(Cur().span, ParseErrorKind::kSyntax,
               "duplicate 'rhs_uncertain' clause");
        }
        const SourceSpan span = Cur().span;
        RejectRobustEquality(sense, span);
        row.rhs_uncertainty = ParseRhsClause(row, adaptive);
      } else {
        break;
      }
    }
    if (adaptive && sense == Sense::kEqual) {
      Fail(sense_tok.span, ParseErrorKind::kSyntax,
           "equality rows cannot contain adaptive variables (robust equality)");
    }
    if (row.uncertainty && row.rhs_uncertainty &&
        !(row.uncertainty->set == row.rhs_uncertainty->set)) {
      Fail(name.span, ParseErrorKind::kDimension,
           "'uncertain' and 'rhs_uncertain' on one row must use the same set");
    }
    Expect(Tok::kSemicolon, "to end the constraint");
    model_.constraints.push_back(std::move(row));
  }

  void RejectRobustEquality(Sense sense, const SourceSpan& span) const {
    if (sense == Sense::kEqual) {
      Fail(span, ParseErrorKind::kSyntax,
           "robust equality constraints are not supported; split into '<=' "
           "and '>=' rows");
    }
  }

  // ---- expressions ------------------------------------------------------

  ParsedExpr ParseExpr() {
    ParsedExpr expr;
    bool first = true;
    for (;;) {
      double sign = 1.0;
      if (Cur().type == Tok::kPlus || Cur().type == Tok::kMinus) {
        sign = Take().type == Tok::kMinus ? -1.0 : 1.0;
      } else if (!first) {
        break;
      }
      first = false;
      if (Cur().type == Tok::kNumber) {
        const double value = Take().number * sign;
        if (Cur().type == Tok::kStar) {
          Take();
          const Token var = Expect(Tok::kIdent, "after '*'");
          expr.terms.push_back(UseVar(var, value));
        } else {
          expr.constant += value;
        }
      } else if (Cur().type == Tok::kIdent && !IsIdent("inf")) {
        const Token var = Take();
        double coefficient = sign;
        if (Cur().type == Tok::kStar) {
          Take();
          coefficient *= Expect(Tok::kNumber, "after '*'").number;
        }
        expr.terms.push_back(UseVar(var, coefficient));
      } else {
        Unexpected("a term");
      }
    }
    return expr;
  }

  ExprTerm UseVar(const Token& tok, double coefficient) {
    CheckNewName(tok);
    const std::string id(tok.text);
    if (model_.FindVar(id) == nullptr) {
      VariableDecl decl;
      decl.id = id;
      model_.vars.push_back(decl);
    }
    used_.insert(id);
    return {id, coefficient, tok.span};
  }

  // Sorts terms into the here-and-now and adaptive parts and records the
  // order in which here-and-now variables first appear.
  void SplitExpr(const ParsedExpr& expr, LinExpr& here, LinExpr& adaptive,
                 std::vector<std::string>& order) {
    for (const ExprTerm& t : expr.terms) {
      const VariableDecl* v = model_.FindVar(t.id);
      if (v->stage == Stage::kWaitAndSee) {
        adaptive.AddTerm(t.id, t.coefficient);
      } else {
        here.AddTerm(t.id, t.coefficient);
      }
    }
    std::set<std::string> seen;
    for (const ExprTerm& t : expr.terms) {
      if (here.Coefficient(t.id) != 0.0 && seen.insert(t.id).second) {
        order.push_back(t.id);
      }
    }
  }

  // ---- uncertainty clauses ------------------------------------------------

  // uncertain(on=[...], P=[[...]], Z=<set>)
  UncertainBlock ParseCoefficientClause(const std::vector<std::string>& row_vars,
                                        bool adaptive) {
    const Token kw = Take();
    Expect(Tok::kLParen, "after '" + std::string(kw.text) + "'");
    std::optional<std::vector<Token>> on;
    std::optional<MatrixLiteral> p_matrix;
    std::optional<SetSyntax> set;
    std::set<std::string> seen;
    while (Cur().type != Tok::kRParen) {
      if (!seen.empty()) Expect(Tok::kComma, "between arguments");
      const Token key = Expect(Tok::kIdent, "argument name");
      if (!seen.insert(std::string(key.text)).second) {
        Fail(key.span, ParseErrorKind::kSyntax,
             "duplicate argument '" + std::string(key.text) + "'");
      }
      Expect(Tok::kAssign, "after argument name");
      if (key.text == "on") {
        on = ParseIdentList();
      } else if (key.text == "P") {
        p_matrix = ParseMatrix();
      } else if (key.text == "Z") {
        set = ParseSet();
      } else {
        Fail(key.span, ParseErrorKind::kUnknownSymbol,
             "unknown argument '" + std::string(key.text) +
                 "' (expected on, P or Z)");
      }
    }
    const Token close = Take();

    UncertainBlock block{{}, {}, NormBall{NormIndex::Two(), 0.0, 1}};
    if (on) {
      std::set<std::string> unique;
      for (const Token& t : *on) {
        const std::string id(t.text);
        const VariableDecl* v = model_.FindVar(id);
        if (v == nullptr) {
          Fail(t.span, ParseErrorKind::kUnknownSymbol,
               "unknown variable '" + id + "' in on=[...]");
        }
        if (v->stage == Stage::kWaitAndSee) {
          Fail(t.span, ParseErrorKind::kSyntax,
               "coefficients of wait-and-see variable '" + id +
                   "' cannot be uncertain (fixed recourse)");
        }
        if (!unique.insert(id).second) {
          Fail(t.span, ParseErrorKind::kSyntax, "'" + id + "' listed twice");
        }
        block.on.push_back(id);
      }
    } else {
      block.on = row_vars;
    }
    const int n = static_cast<int>(block.on.size());

    std::optional<int> context_dim;
    if (p_matrix) {
      block.P = ToMatrix(*p_matrix, n);
      context_dim = static_cast<int>(block.P.cols());
    } else if (n > 0) {
      context_dim = n;
    }

    if (set) {
      block.set = BuildSet(*set, context_dim);
    } else if (adaptive && model_.adaptive_set) {
      block.set = *model_.adaptive_set;
    } else {
      Fail(close.span, ParseErrorKind::kSyntax, "missing Z=<set>");
    }
    const int dim = block.set.dim();
    if (!p_matrix) {
      if (n == 0) {
        block.P = Eigen::MatrixXd::Zero(0, dim);
      } else if (dim != n) {
        Fail(kw.span, ParseErrorKind::kDimension,
             "identity P needs a set of dimension " + std::to_string(n) +
                 ", got " + std::to_string(dim));
      } else {
        block.P = Eigen::MatrixXd::Identity(n, n);
      }
    } else if (block.P.cols() != dim) {
      Fail(p_matrix->span, ParseErrorKind::kDimension,
           "P has " + std::to_string(block.P.cols()) +
               " columns but the set has dimension " + std::to_string(dim));
    }
    if (adaptive) AdoptShared(block.set, kw.span);
    return block;
  }

  // rhs_uncertain(p=[...], Z=<set>)
  RhsUncertainty ParseRhsClause(const Constraint& row, bool adaptive) {
    const Token kw = Take();
    Expect(Tok::kLParen, "after 'rhs_uncertain'");
    std::optional<std::vector<double>> p;
    SourceSpan p_span;
    std::optional<SetSyntax> set;
    std::set<std::string> seen;
    while (Cur().type != Tok::kRParen) {
      if (!seen.empty()) Expect(Tok::kComma, "between arguments");
      const Token key = Expect(Tok::kIdent, "argument name");
      if (!seen.insert(std::string(key.text)).second) {
        Fail(key.span, ParseErrorKind::kSyntax,
             "duplicate argument '" + std::string(key.text) + "'");
      }
      Expect(Tok::kAssign, "after argument name");
      if (key.text == "p") {
        p_span = Cur().span;
        p = ParseVector();
      } else if (key.text == "Z") {
        set = ParseSet();
      } else {
        Fail(key.span, ParseErrorKind::kUnknownSymbol,
             "unknown argument '" + std::string(key.text) +
                 "' (expected p or Z)");
      }
    }
    const Token close = Take();

    std::optional<UncertaintySet> resolved;
    if (set) {
      resolved = BuildSet(*set, p ? std::optional<int>(static_cast<int>(p->size()))
                                  : std::optional<int>(1));
    } else if (row.uncertainty) {
      resolved = row.uncertainty->set;
    } else if (adaptive && model_.adaptive_set) {
      resolved = *model_.adaptive_set;
    } else {
      Fail(close.span, ParseErrorKind::kSyntax, "missing Z=<set>");
    }
    const int dim = resolved->dim();
    Eigen::VectorXd vec;
    if (p) {
      if (static_cast<int>(p->size()) != dim) {
        Fail(p_span, ParseErrorKind::kDimension,
             "p has " + std::to_string(p->size()) +
                 " entries but the set has dimension " + std::to_string(dim));
      }
      vec = Eigen::Map<const Eigen::VectorXd>(p->data(),
                                              static_cast<Eigen::Index>(p->size()));
    } else if (dim == 1) {
      vec = Eigen::VectorXd::Ones(1);
    } else {
      Fail(kw.span, ParseErrorKind::kDimension,
           "rhs_uncertain over a set of dimension " + std::to_string(dim) +
               " needs p=[...]");
    }
    if (adaptive) AdoptShared(*resolved, kw.span);
    return RhsUncertainty{vec, *resolved};
  }

  // The first explicit set on an adaptive row becomes the shared one when the
  // model has no 'uncertainty:' statement.
  void AdoptShared(const UncertaintySet& set, const SourceSpan& span) {
    if (!model_.adaptive_set) {
      model_.adaptive_set = set;
    } else if (!(set == *model_.adaptive_set)) {
      Fail(span, ParseErrorKind::kDimension,
           "adaptive rows must all use the shared uncertainty set");
    }
  }

  // ---- literals ---------------------------------------------------------

  double ParseSignedNumber(bool allow_inf) {
    double sign = 1.0;
    if (Cur().type == Tok::kMinus || Cur().type == Tok::kPlus) {
      sign = Take().type == Tok::kMinus ? -1.0 : 1.0;
    }
    if (allow_inf && IsIdent("inf")) {
      Take();
      return sign * kInfinity;
    }
    return sign * Expect(Tok::kNumber, "(number)").number;
  }

  std::vector<Token> ParseIdentList() {
    Expect(Tok::kLBracket, "to open the list");
    std::vector<Token> ids;
    while (Cur().type != Tok::kRBracket) {
      if (!ids.empty()) Expect(Tok::kComma, "between list items");
      ids.push_back(Expect(Tok::kIdent, "variable name"));
    }
    Take();
    return ids;
  }

  std::vector<double> ParseVector() {
    Expect(Tok::kLBracket, "to open the vector");
    std::vector<double> v;
    while (Cur().type != Tok::kRBracket) {
      if (!v.empty()) Expect(Tok::kComma, "between vector entries");
      v.push_back(ParseSignedNumber(false));
    }
    Take();
    return v;
  }

  MatrixLiteral ParseMatrix() {
    MatrixLiteral m;
    m.span = Cur().span;
    Expect(Tok::kLBracket, "to open the matrix");
    while (Cur().type != Tok::kRBracket) {
      if (!m.rows.empty()) Expect(Tok::kComma, "between matrix rows");
      m.rows.push_back(ParseVector());
    }
    Take();
    return m;
  }

  Eigen::MatrixXd ToMatrix(const MatrixLiteral& m, std::optional<int> rows) {
    if (rows && static_cast<int>(m.rows.size()) != *rows) {
      Fail(m.span, ParseErrorKind::kDimension,
           "matrix has " + std::to_string(m.rows.size()) + " rows, expected " +
               std::to_string(*rows));
    }
    const std::size_t cols = m.rows.empty() ? 0 : m.rows.front().size();
    for (const auto& r : m.rows) {
      if (r.size() != cols) {
        Fail(m.span, ParseErrorKind::kDimension, "ragged matrix rows");
      }
    }
    Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows.size()),
                        static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m.rows[i][j];
      }
    }
    return out;
  }

  // ---- sets -------------------------------------------------------------

  SetSyntax ParseSet() {
    const Token name = Expect(Tok::kIdent, "set kind");
    SetSyntax s;
    s.span = name.span;
    Expect(Tok::kLParen, "after set kind");
    if (name.text == "ball") {
      s.kind = SetSyntax::Kind::kBall;
      bool have_p = false;
      bool have_r = false;
      std::set<std::string> seen;
      while (Cur().type != Tok::kRParen) {
        if (!seen.empty()) Expect(Tok::kComma, "between arguments");
        const Token key = Expect(Tok::kIdent, "ball argument");
        if (!seen.insert(std::string(key.text)).second) {
          Fail(key.span, ParseErrorKind::kSyntax,
               "duplicate argument '" + std::string(key.text) + "'");
        }
        Expect(Tok::kAssign, "after argument name");
        if (key.text == "p") {
          const SourceSpan at = Cur().span;
          s.p = ParseSignedNumber(true);
          if (!(s.p >= 1.0)) {
            Fail(at, ParseErrorKind::kSyntax, "norm index p must be >= 1");
          }
          have_p = true;
        } else if (key.text == "r") {
          const SourceSpan at = Cur().span;
          s.radius = ParseSignedNumber(false);
          if (s.radius < 0.0) {
            Fail(at, ParseErrorKind::kSyntax, "radius must be >= 0");
          }
          have_r = true;
        } else if (key.text == "dim") {
          const Token t = Expect(Tok::kNumber, "dimension");
          if (t.number < 1 || t.number != std::floor(t.number) || t.number > 1e6) {
            Fail(t.span, ParseErrorKind::kDimension,
                 "dimension must be a positive integer");
          }
          s.dim = static_cast<int>(t.number);
        } else {
          Fail(key.span, ParseErrorKind::kUnknownSymbol,
               "unknown ball argument '" + std::string(key.text) +
                   "' (expected p, r or dim)");
        }
      }
      if (!have_p || !have_r) {
        Fail(name.span, ParseErrorKind::kSyntax, "ball needs p=... and r=...");
      }
    } else if (name.text == "poly") {
      s.kind = SetSyntax::Kind::kPoly;
      std::optional<MatrixLiteral> D;
      std::optional<std::vector<double>> d;
      SourceSpan d_span;
      std::set<std::string> seen;
      while (Cur().type != Tok::kRParen) {
        if (!seen.empty()) Expect(Tok::kComma, "between arguments");
        const Token key = Expect(Tok::kIdent, "poly argument");
        if (!seen.insert(std::string(key.text)).second) {
          Fail(key.span, ParseErrorKind::kSyntax,
               "duplicate argument '" + std::string(key.text) + "'");
        }
        Expect(Tok::kAssign, "after argument name");
        if (key.text == "D") {
          D = ParseMatrix();
        } else if (key.text == "d") {
          d_span = Cur().span;
          d = ParseVector();
        } else {
          Fail(key.span, ParseErrorKind::kUnknownSymbol,
               "unknown poly argument '" + std::string(key.text) +
                   "' (expected D or d)");
        }
      }
      if (!D || !d) Fail(name.span, ParseErrorKind::kSyntax, "poly needs D=... and d=...");
      s.D = ToMatrix(*D, std::nullopt);
      if (s.D.rows() == 0 || s.D.cols() == 0) {
        Fail(D->span, ParseErrorKind::kDimension, "D must be non-empty");
      }
      if (static_cast<Eigen::Index>(d->size()) != s.D.rows()) {
        Fail(d_span, ParseErrorKind::kDimension,
             "d has " + std::to_string(d->size()) + " entries but D has " +
                 std::to_string(s.D.rows()) + " rows");
      }
      s.d = Eigen::Map<const Eigen::VectorXd>(d->data(),
                                              static_cast<Eigen::Index>(d->size()));
      s.dim = static_cast<int>(s.D.cols());
    } else if (name.text == "intersect" || name.text == "minkowski") {
      s.kind = name.text == "intersect" ? SetSyntax::Kind::kIntersect
                                        : SetSyntax::Kind::kMinkowski;
      while (Cur().type != Tok::kRParen) {
        if (!s.members.empty()) Expect(Tok::kComma, "between member sets");
        s.members.push_back(ParseSet());
      }
      if (s.members.empty()) {
        Fail(name.span, ParseErrorKind::kSyntax,
             std::string(name.text) + " needs at least one member set");
      }
    } else {
      Fail(name.span, ParseErrorKind::kUnknownSymbol,
           "unknown set kind '" + std::string(name.text) +
               "' (expected ball, poly, intersect or minkowski)");
    }
    Take();  // ')'
    return s;
  }

  // Dimension stated anywhere in the subtree; conflicts are errors.
  std::optional<int> KnownDim(const SetSyntax& s) const {
    if (s.kind == SetSyntax::Kind::kBall || s.kind == SetSyntax::Kind::kPoly) {
      return s.dim;
    }
    std::optional<int> dim;
    for (const SetSyntax& m : s.members) {
      std::optional<int> md = KnownDim(m);
      if (md && dim && *md != *dim) {
        Fail(m.span, ParseErrorKind::kDimension,
             "member has dimension " + std::to_string(*md) + ", expected " +
                 std::to_string(*dim));
      }
      if (md) dim = md;
    }
    return dim;
  }

  UncertaintySet BuildSet(const SetSyntax& s, std::optional<int> context_dim) {
    std::optional<int> dim = KnownDim(s);
    if (dim && context_dim && *dim != *context_dim) {
      Fail(s.span, ParseErrorKind::kDimension,
           "set has dimension " + std::to_string(*dim) + " but " +
               std::to_string(*context_dim) + " is required here");
    }
    if (!dim) dim = context_dim;
    if (!dim) {
      Fail(s.span, ParseErrorKind::kDimension,
           "cannot infer the set dimension; add dim=...");
    }
    return BuildResolved(s, *dim);
  }

  UncertaintySet BuildResolved(const SetSyntax& s, int dim) {
    switch (s.kind) {
      case SetSyntax::Kind::kBall:
        return UncertaintySet(NormBall{NormIndex(s.p), s.radius, dim});
      case SetSyntax::Kind::kPoly: {
        Polyhedral poly{s.D, s.d};
        if ((poly.d.array() < 0.0).any()) {
          Fail(s.span, ParseErrorKind::kUnboundedSet,
               "polyhedron must contain the origin (every d_i >= 0)");
        }
        const PolyhedronRanges ranges = CoordinateRanges(poly);
        if (!ranges.bounded) {
          Fail(s.span, ParseErrorKind::kUnboundedSet,
               "polyhedron is unbounded along coordinate " +
                   std::to_string(ranges.unbounded_coordinate + 1));
        }
        return UncertaintySet(std::move(poly));
      }
      case SetSyntax::Kind::kIntersect:
      case SetSyntax::Kind::kMinkowski: {
        std::vector<UncertaintySet> members;
        for (const SetSyntax& m : s.members) members.push_back(BuildResolved(m, dim));
        if (s.kind == SetSyntax::Kind::kIntersect) {
          return UncertaintySet(Intersection{std::move(members)});
        }
        return UncertaintySet(MinkowskiSum{std::move(members)});
      }
    }
    Fail(s.span, ParseErrorKind::kSyntax, "bad set");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Model model_;
  bool have_objective_ = false;
  bool declared_shared_set_ = false;
  std::set<std::string> row_ids_;
  std::set<std::string> used_;
};

}  // namespace

Model ParseModel(std::string_view source) {
  Parser parser(source);
  return parser.ParseModelText();
}

UncertaintySet ParseUncertaintySpec(std::string_view text) {
  Parser parser(text);
  return parser.ParseSetText();
}

}  // namespace roc
