// Copyright 2026 The amsplace Authors
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

// Solver-independent MILP container and the one backend (HiGHS) behind it.
// Higher layers build a MilpModel and never touch the backend directly.
//
// A model is confined to one thread while it is solved; distinct models may
// be solved concurrently.

#pragma once

#include <compare>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace amsplace {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class VarKind { kContinuous, kBinary };

// Handle to a model column. Default-constructed handles are invalid.
struct VarRef {
  int index = -1;

  bool valid() const { return index >= 0; }
  explicit operator bool() const { return valid(); }
  auto operator<=>(const VarRef&) const = default;
};

struct Variable {
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = kInfinity;
  std::string name;
};

struct Term {
  double coefficient = 0.0;
  VarRef var;
};

// Sum of terms plus a constant.
class LinExpr {
 public:
  LinExpr() = default;
  explicit LinExpr(double constant) : constant_(constant) {}

  LinExpr& add(double coefficient, VarRef var) {
    terms_.push_back({coefficient, var});
    return *this;
  }
  LinExpr& add(double constant) {
    constant_ += constant;
    return *this;
  }
  LinExpr& add(const LinExpr& other, double scale = 1.0);

  const std::vector<Term>& terms() const { return terms_; }
  double constant() const { return constant_; }

 private:
  std::vector<Term> terms_;
  double constant_ = 0.0;
};

enum class Sense { kLessEqual, kEqual, kGreaterEqual };

struct LinConstraint {
  std::vector<Term> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
  std::string name;
};

// Minimization model with optional warm-start values.
class MilpModel {
 public:
  VarRef addVariable(VarKind kind, double lower, double upper,
                     std::string name);
  VarRef addContinuous(std::string name, double lower = 0.0,
                       double upper = kInfinity) {
    return addVariable(VarKind::kContinuous, lower, upper, std::move(name));
  }
  VarRef addBinary(std::string name) {
    return addVariable(VarKind::kBinary, 0.0, 1.0, std::move(name));
  }

  // Adds lhs <sense> rhs; the constant part of lhs moves to the right.
  void addConstraint(const LinExpr& lhs, Sense sense, double rhs,
                     std::string name);
  void setObjective(LinExpr objective);
  void setBounds(VarRef var, double lower, double upper);

  void setWarmStart(VarRef var, double value);
  void clearWarmStart();
  bool hasWarmStart(VarRef var) const;
  // NaN marks columns without a hint.
  const std::vector<double>& warmStart() const { return warm_start_; }
  std::size_t warmStartCount() const;

  const std::vector<Variable>& variables() const { return variables_; }
  const Variable& variable(VarRef var) const;
  const std::vector<LinConstraint>& constraints() const { return constraints_; }
  const LinExpr& objective() const { return objective_; }
  int numBinaries() const;

  double evaluate(const LinExpr& expr, std::span<const double> values) const;
  // Largest violation of a row, a bound, or integrality by `values`.
  double maxViolation(std::span<const double> values) const;

 private:
  void checkVar(VarRef var, const char* where) const;

  std::vector<Variable> variables_;
  std::vector<LinConstraint> constraints_;
  LinExpr objective_;
  std::vector<double> warm_start_;
};

enum class Emphasis { kDefault, kFeasibility };

struct SolveParams {
  double timeLimit = kInfinity;  // seconds, > 0
  int threads = 1;
  double relativeGapTarget = 1e-6;
  Emphasis emphasis = Emphasis::kDefault;
  unsigned seed = 0;
  // Re-solve the LP with integers fixed at their rounded values so the
  // returned point satisfies the rows to LP precision.
  bool polish = true;
  bool verbose = false;
};

enum class SolveStatus { kOptimal, kFeasible, kInfeasible, kUnbounded,
                         kTimeoutNoSolution };

const char* toString(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::kTimeoutNoSolution;
  std::vector<double> values;
  double objective = kInfinity;
  double bound = -kInfinity;
  double wallTime = 0.0;

  bool hasSolution() const {
    return status == SolveStatus::kOptimal || status == SolveStatus::kFeasible;
  }
  double value(VarRef var) const { return values.at(var.index); }
};

SolveResult solve(const MilpModel& model, const SolveParams& params);

// Solves the pure LP left after fixing every binary column. Throws
// ContractError if a binary is left unfixed or fixed outside {0, 1}.
SolveResult solveLpRelaxationWithFixings(
    const MilpModel& model, std::span<const std::pair<VarRef, double>> fixings,
    const SolveParams& params);

// Debug dump in LP file format.
void writeLpFile(const MilpModel& model, const std::filesystem::path& path);

}  // namespace amsplace
