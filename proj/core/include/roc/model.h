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

// Typed object model shared by every pipeline stage: variables, sparse linear
// expressions, uncertainty sets, uncertain constraints and decision rules.
// All types are plain values; nothing here mutates after a stage returns it.

#ifndef ROC_MODEL_H_
#define ROC_MODEL_H_

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "Eigen/Core"

namespace roc {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structural invariant violated (dimension mismatch, duplicate id, ...).
class ModelError : public Error {
 public:
  using Error::Error;
};

// A well-formed request the pipeline has no rule for (e.g. lowering a 3-norm).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Sparse affine expression sum_i c_i * x_i + constant. Terms are kept ordered
// by variable id and exact zeros are dropped, so == is structural equality.
class LinExpr {
 public:
  using Terms = std::map<std::string, double>;

  LinExpr() = default;
  explicit LinExpr(double constant) : constant_(constant) {}
  static LinExpr Term(const std::string& id, double coefficient);

  void AddTerm(const std::string& id, double coefficient);
  void AddConstant(double value) { constant_ += value; }
  void SetConstant(double value) { constant_ = value; }

  const Terms& terms() const { return terms_; }
  double constant() const { return constant_; }
  double Coefficient(const std::string& id) const;
  bool empty() const { return terms_.empty() && constant_ == 0.0; }
  bool HasTerms() const { return !terms_.empty(); }

  // Constant plus the sum over terms using values looked up by id; missing
  // ids count as zero.
  double Evaluate(const std::map<std::string, double>& values) const;

  LinExpr& operator+=(const LinExpr& other);
  LinExpr& operator-=(const LinExpr& other);
  LinExpr& operator*=(double factor);
  LinExpr operator-() const;

  friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
  friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
  friend LinExpr operator*(double factor, LinExpr e) { return e *= factor; }

  bool operator==(const LinExpr& other) const = default;

 private:
  Terms terms_;
  double constant_ = 0.0;
};

// Norm index p in [1, inf]. 1, 2 and inf are represented exactly.
class NormIndex {
 public:
  explicit NormIndex(double p);
  static NormIndex One() { return NormIndex(1.0); }
  static NormIndex Two() { return NormIndex(2.0); }
  static NormIndex Inf() { return NormIndex(kInfinity); }

  double value() const { return p_; }
  bool is_one() const { return p_ == 1.0; }
  bool is_two() const { return p_ == 2.0; }
  bool is_inf() const { return p_ == kInfinity; }

  bool operator==(const NormIndex& other) const = default;

 private:
  double p_;
};

// Hoelder conjugate q with 1/p + 1/q = 1. Throws ModelError for p < 1.
NormIndex DualNorm(NormIndex p);
NormIndex DualNorm(double p);

// ||v||_p for any p in [1, inf].
double Norm(const Eigen::VectorXd& v, NormIndex p);

class UncertaintySet;

struct NormBall {
  NormIndex p = NormIndex::Two();
  double radius = 0.0;
  int dim = 0;
};

// {z : D z <= d}.
struct Polyhedral {
  Eigen::MatrixXd D;
  Eigen::VectorXd d;
};

struct Intersection {
  std::vector<UncertaintySet> members;
};

struct MinkowskiSum {
  std::vector<UncertaintySet> members;
};

// Algebraic description of Z. Construction validates radius and dimension
// invariants; boundedness of polyhedra needs an LP and is checked by the
// parser (see CoordinateRanges in solver.h).
class UncertaintySet {
 public:
  using Node = std::variant<NormBall, Polyhedral, Intersection, MinkowskiSum>;

  UncertaintySet(NormBall ball);
  UncertaintySet(Polyhedral poly);
  UncertaintySet(Intersection inter);
  UncertaintySet(MinkowskiSum sum);

  int dim() const { return dim_; }
  const Node& node() const { return node_; }

  template <typename T>
  const T* As() const {
    return std::get_if<T>(&node_);
  }

  // True when the set is exactly {0}; its support function vanishes.
  bool IsZero() const;

  // z in Z up to `tol` on each defining inequality.
  bool Contains(const Eigen::VectorXd& z, double tol = 1e-9) const;

  std::string KindName() const;

  friend bool operator==(const UncertaintySet& a, const UncertaintySet& b);

 private:
  Node node_;
  int dim_ = 0;
};

bool operator==(const NormBall& a, const NormBall& b);
bool operator==(const Polyhedral& a, const Polyhedral& b);
bool operator==(const Intersection& a, const Intersection& b);
bool operator==(const MinkowskiSum& a, const MinkowskiSum& b);

// Perturbation of the coefficients of `on`: row coefficient vector is
// a_bar + P z, where a_bar is the nominal lhs of the owning constraint.
struct UncertainBlock {
  std::vector<std::string> on;  // row i of P belongs to variable on[i]
  Eigen::MatrixXd P;            // on.size() x set.dim()
  UncertaintySet set;

  // P^T x as one LinExpr per uncertainty coordinate.
  std::vector<LinExpr> SupportArgument() const;
  void Validate(const std::string& owner) const;
};
bool operator==(const UncertainBlock& a, const UncertainBlock& b);

// Uncertain right-hand side b(z) = rhs + p^T z.
struct RhsUncertainty {
  Eigen::VectorXd p;
  UncertaintySet set;
};
bool operator==(const RhsUncertainty& a, const RhsUncertainty& b);

enum class Stage { kHereAndNow, kWaitAndSee };
enum class RuleKind { kLinear, kStatic };
enum class Sense { kLessEqual, kGreaterEqual, kEqual };
enum class ObjectiveSense { kMinimize, kMaximize };

const char* ToString(Sense sense);

struct VariableDecl {
  std::string id;
  Stage stage = Stage::kHereAndNow;
  double lower = 0.0;
  double upper = kInfinity;
  // Set on the single variable used to fold uncertain right-hand sides.
  bool pinned_one = false;
  RuleKind rule = RuleKind::kLinear;  // wait-and-see only

  bool operator==(const VariableDecl& other) const = default;
};

struct Constraint {
  std::string id;
  LinExpr lhs;  // here-and-now part, nominal coefficients
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
  std::optional<UncertainBlock> uncertainty;
  std::optional<RhsUncertainty> rhs_uncertainty;
  LinExpr adaptive;  // fixed-recourse terms d^T y over wait-and-see variables

  bool IsUncertain() const {
    return uncertainty.has_value() || rhs_uncertainty.has_value();
  }
  bool HasAdaptive() const { return adaptive.HasTerms(); }
};
bool operator==(const Constraint& a, const Constraint& b);

struct Objective {
  ObjectiveSense sense = ObjectiveSense::kMinimize;
  LinExpr expr;
  std::optional<UncertainBlock> uncertainty;
  LinExpr adaptive;
};
bool operator==(const Objective& a, const Objective& b);

struct Model {
  std::vector<VariableDecl> vars;
  Objective objective;
  std::vector<Constraint> constraints;
  // The single z shared by every adaptive row and decision rule.
  std::optional<UncertaintySet> adaptive_set;

  const VariableDecl* FindVar(const std::string& id) const;
  bool HasAdaptive() const;
  std::vector<std::string> WaitAndSeeIds() const;
};
bool operator==(const Model& a, const Model& b);

// Checks every cross-object invariant (unique ids, bounds, P/Z agreement,
// robust equalities, adaptive terms only over wait-and-see variables).
void Validate(const Model& model);

// Evaluated policy y(z) = u + V^T z for all wait-and-see variables.
struct DecisionRule {
  RuleKind kind = RuleKind::kLinear;
  std::vector<std::string> ids;
  Eigen::VectorXd u;  // n2
  Eigen::MatrixXd V;  // L x n2; zero for static rules

  Eigen::VectorXd Evaluate(const Eigen::VectorXd& z) const;
};

bool SameMatrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace roc

#endif  // ROC_MODEL_H_
