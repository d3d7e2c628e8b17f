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

#include "amsplace/milp.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <string>

#include "Highs.h"
#include "amsplace/errors.hpp"

namespace amsplace {

LinExpr& LinExpr::add(const LinExpr& other, double scale) {
  for (const auto& t : other.terms_) terms_.push_back({scale * t.coefficient, t.var});
  constant_ += scale * other.constant_;
  return *this;
}

VarRef MilpModel::addVariable(VarKind kind, double lower, double upper,
                              std::string name) {
  if (kind == VarKind::kBinary) {
    lower = std::max(lower, 0.0);
    upper = std::min(upper, 1.0);
  }
  if (std::isnan(lower) || std::isnan(upper) || lower > upper) {
    throw ContractError("variable " + name + ": empty bound interval");
  }
  variables_.push_back({kind, lower, upper, std::move(name)});
  warm_start_.push_back(std::numeric_limits<double>::quiet_NaN());
  return VarRef{static_cast<int>(variables_.size()) - 1};
}

void MilpModel::checkVar(VarRef var, const char* where) const {
  if (var.index < 0 || var.index >= static_cast<int>(variables_.size())) {
    throw ContractError(std::string(where) + ": undeclared variable");
  }
}

void MilpModel::addConstraint(const LinExpr& lhs, Sense sense, double rhs,
                              std::string name) {
  LinConstraint row;
  row.sense = sense;
  row.rhs = rhs - lhs.constant();
  row.name = std::move(name);
  for (const auto& t : lhs.terms()) {
    checkVar(t.var, "addConstraint");
    if (!std::isfinite(t.coefficient)) {
      throw ContractError("constraint " + row.name + ": non-finite coefficient");
    }
    if (t.coefficient != 0.0) row.terms.push_back(t);
  }
  if (!std::isfinite(row.rhs)) {
    throw ContractError("constraint " + row.name + ": non-finite right side");
  }
  constraints_.push_back(std::move(row));
}

void MilpModel::setObjective(LinExpr objective) {
  for (const auto& t : objective.terms()) checkVar(t.var, "setObjective");
  objective_ = std::move(objective);
}

void MilpModel::setBounds(VarRef var, double lower, double upper) {
  checkVar(var, "setBounds");
  if (lower > upper) throw ContractError("setBounds: empty interval");
  variables_[var.index].lower = lower;
  variables_[var.index].upper = upper;
}

void MilpModel::setWarmStart(VarRef var, double value) {
  checkVar(var, "setWarmStart");
  warm_start_[var.index] = value;
}

void MilpModel::clearWarmStart() {
  std::fill(warm_start_.begin(), warm_start_.end(),
            std::numeric_limits<double>::quiet_NaN());
}

bool MilpModel::hasWarmStart(VarRef var) const {
  checkVar(var, "hasWarmStart");
  return !std::isnan(warm_start_[var.index]);
}

std::size_t MilpModel::warmStartCount() const {
  return static_cast<std::size_t>(std::count_if(
      warm_start_.begin(), warm_start_.end(),
      [](double v) { return !std::isnan(v); }));
}

const Variable& MilpModel::variable(VarRef var) const {
  checkVar(var, "variable");
  return variables_[var.index];
}

int MilpModel::numBinaries() const {
  return static_cast<int>(std::count_if(
      variables_.begin(), variables_.end(),
      [](const Variable& v) { return v.kind == VarKind::kBinary; }));
}

double MilpModel::evaluate(const LinExpr& expr,
                           std::span<const double> values) const {
  double total = expr.constant();
  for (const auto& t : expr.terms()) total += t.coefficient * values[t.var.index];
  return total;
}

double MilpModel::maxViolation(std::span<const double> values) const {
  double worst = 0.0;
  for (std::size_t c = 0; c < variables_.size(); ++c) {
    const auto& v = variables_[c];
    worst = std::max({worst, v.lower - values[c], values[c] - v.upper});
    if (v.kind == VarKind::kBinary) {
      worst = std::max(worst, std::abs(values[c] - std::round(values[c])));
    }
  }
  for (const auto& row : constraints_) {
    double lhs = 0.0;
    for (const auto& t : row.terms) lhs += t.coefficient * values[t.var.index];
    switch (row.sense) {
      case Sense::kLessEqual: worst = std::max(worst, lhs - row.rhs); break;
      case Sense::kGreaterEqual: worst = std::max(worst, row.rhs - lhs); break;
      case Sense::kEqual: worst = std::max(worst, std::abs(lhs - row.rhs)); break;
    }
  }
  return worst;
}

const char* toString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasible: return "feasible";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kTimeoutNoSolution: return "timeout-no-solution";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

HighsLp toHighsLp(const MilpModel& model, bool withNames) {
  const auto& vars = model.variables();
  const auto& rows = model.constraints();
  HighsLp lp;
  lp.num_col_ = static_cast<HighsInt>(vars.size());
  lp.num_row_ = static_cast<HighsInt>(rows.size());
  lp.sense_ = ObjSense::kMinimize;
  lp.offset_ = model.objective().constant();
  lp.col_cost_.assign(vars.size(), 0.0);
  for (const auto& t : model.objective().terms()) {
    lp.col_cost_[t.var.index] += t.coefficient;
  }
  bool integral = false;
  lp.integrality_.assign(vars.size(), HighsVarType::kContinuous);
  for (std::size_t c = 0; c < vars.size(); ++c) {
    lp.col_lower_.push_back(vars[c].lower);
    lp.col_upper_.push_back(vars[c].upper);
    if (vars[c].kind == VarKind::kBinary) {
      lp.integrality_[c] = HighsVarType::kInteger;
      integral = true;
    }
  }
  if (!integral) lp.integrality_.clear();

  // Rows arrive row-wise; transpose into column-wise storage, merging
  // repeated columns within a row.
  std::vector<HighsInt> count(vars.size() + 1, 0);
  std::vector<std::vector<std::pair<int, double>>> merged(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto& entries = merged[r];
    for (const auto& t : rows[r].terms) entries.emplace_back(t.var.index, t.coefficient);
    std::sort(entries.begin(), entries.end());
    std::size_t out = 0;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      if (out > 0 && entries[out - 1].first == entries[k].first) {
        entries[out - 1].second += entries[k].second;
      } else {
        entries[out++] = entries[k];
      }
    }
    entries.resize(out);
    for (const auto& [col, value] : entries) {
      if (value != 0.0) ++count[col + 1];
    }
    const double rhs = rows[r].rhs;
    switch (rows[r].sense) {
      case Sense::kLessEqual:
        lp.row_lower_.push_back(-kHighsInf);
        lp.row_upper_.push_back(rhs);
        break;
      case Sense::kGreaterEqual:
        lp.row_lower_.push_back(rhs);
        lp.row_upper_.push_back(kHighsInf);
        break;
      case Sense::kEqual:
        lp.row_lower_.push_back(rhs);
        lp.row_upper_.push_back(rhs);
        break;
    }
  }
  for (std::size_t c = 0; c < vars.size(); ++c) count[c + 1] += count[c];
  auto& matrix = lp.a_matrix_;
  matrix.format_ = MatrixFormat::kColwise;
  matrix.num_col_ = lp.num_col_;
  matrix.num_row_ = lp.num_row_;
  matrix.start_ = count;
  matrix.index_.resize(count.back());
  matrix.value_.resize(count.back());
  std::vector<HighsInt> next(count.begin(), count.end() - 1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [col, value] : merged[r]) {
      if (value == 0.0) continue;
      const HighsInt slot = next[col]++;
      matrix.index_[slot] = static_cast<HighsInt>(r);
      matrix.value_[slot] = value;
    }
  }

  if (withNames) {
    for (std::size_t c = 0; c < vars.size(); ++c) {
      lp.col_names_.push_back(vars[c].name.empty() ? "c" + std::to_string(c)
                                                   : vars[c].name);
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      lp.row_names_.push_back(rows[r].name.empty() ? "r" + std::to_string(r)
                                                   : rows[r].name);
    }
  }
  return lp;
}

// HiGHS keeps one global task scheduler per process; it must be rebuilt
// when the requested thread count changes.
void configureThreads(int threads) {
  static std::mutex mutex;
  static int current = -1;
  std::lock_guard<std::mutex> lock(mutex);
  if (current != -1 && current != threads) Highs::resetGlobalScheduler(true);
  current = threads;
}

void applyOptions(Highs& highs, const SolveParams& params, double timeLimit) {
  highs.setOptionValue("output_flag", params.verbose);
  highs.setOptionValue("threads", static_cast<HighsInt>(std::max(1, params.threads)));
  highs.setOptionValue("random_seed", static_cast<HighsInt>(params.seed % 2147483647u));
  highs.setOptionValue("mip_rel_gap", params.relativeGapTarget);
  if (std::isfinite(timeLimit)) highs.setOptionValue("time_limit", timeLimit);
  if (params.emphasis == Emphasis::kFeasibility) {
    highs.setOptionValue("mip_heuristic_effort", 0.3);
  }
}

struct RawResult {
  HighsModelStatus status = HighsModelStatus::kNotset;
  bool hasPrimal = false;
  std::vector<double> values;
  double objective = kInfinity;
  double bound = -kInfinity;
};

RawResult runHighs(const HighsLp& lp, const SolveParams& params,
                   double timeLimit, const std::vector<double>* warmStart,
                   bool presolve = true) {
  Highs highs;
  applyOptions(highs, params, timeLimit);
  if (!presolve) highs.setOptionValue("presolve", "off");
  if (highs.passModel(lp) == HighsStatus::kError) {
    throw SolverError("HiGHS rejected the model");
  }
  if (warmStart != nullptr) {
    std::vector<HighsInt> index;
    std::vector<double> value;
    for (std::size_t c = 0; c < warmStart->size(); ++c) {
      const double v = (*warmStart)[c];
      if (std::isnan(v)) continue;
      index.push_back(static_cast<HighsInt>(c));
      value.push_back(std::clamp(v, lp.col_lower_[c], lp.col_upper_[c]));
    }
    if (!index.empty()) {
      HighsStatus s;
      if (index.size() == warmStart->size()) {
        HighsSolution sol;
        sol.col_value = value;
        s = highs.setSolution(sol);
      } else {
        s = highs.setSolution(static_cast<HighsInt>(index.size()), index.data(),
                              value.data());
      }
      if (s == HighsStatus::kError) {
        throw SolverError("HiGHS rejected the warm start");
      }
    }
  }
  if (highs.run() == HighsStatus::kError &&
      highs.getModelStatus() == HighsModelStatus::kNotset) {
    throw SolverError("HiGHS run failed");
  }
  RawResult out;
  out.status = highs.getModelStatus();
  const auto& info = highs.getInfo();
  out.hasPrimal = info.primal_solution_status == kSolutionStatusFeasible;
  if (out.hasPrimal) {
    out.values = highs.getSolution().col_value;
    out.objective = info.objective_function_value;
  }
  out.bound = lp.integrality_.empty() ? out.objective : info.mip_dual_bound;
  return out;
}

SolveResult solveLp(const MilpModel& model, HighsLp lp,
                    const SolveParams& params) {
  if (!(params.timeLimit > 0)) {
    throw ContractError("SolveParams.timeLimit must be positive");
  }
  configureThreads(params.threads);
  const auto start = Clock::now();
  const bool integral = !lp.integrality_.empty();
  const std::vector<double>* warm =
      integral && model.warmStartCount() > 0 ? &model.warmStart() : nullptr;

  RawResult raw = runHighs(lp, params, params.timeLimit, warm);
  if (raw.status == HighsModelStatus::kUnboundedOrInfeasible) {
    const double left = params.timeLimit - secondsSince(start);
    raw = runHighs(lp, params, std::max(left, 1.0), warm, false);
  }

  SolveResult result;
  switch (raw.status) {
    case HighsModelStatus::kOptimal:
      result.status = SolveStatus::kOptimal;
      break;
    case HighsModelStatus::kModelEmpty:
      result.status = SolveStatus::kOptimal;
      raw.hasPrimal = true;
      raw.values.assign(lp.num_col_, 0.0);
      raw.objective = lp.offset_;
      raw.bound = lp.offset_;
      break;
    case HighsModelStatus::kInfeasible:
      result.status = SolveStatus::kInfeasible;
      break;
    case HighsModelStatus::kUnbounded:
    case HighsModelStatus::kUnboundedOrInfeasible:
      result.status = SolveStatus::kUnbounded;
      break;
    case HighsModelStatus::kTimeLimit:
    case HighsModelStatus::kIterationLimit:
    case HighsModelStatus::kSolutionLimit:
    case HighsModelStatus::kInterrupt:
    case HighsModelStatus::kHighsInterrupt:
    case HighsModelStatus::kObjectiveBound:
    case HighsModelStatus::kObjectiveTarget:
    case HighsModelStatus::kUnknown:
      result.status = raw.hasPrimal ? SolveStatus::kFeasible
                                    : SolveStatus::kTimeoutNoSolution;
      break;
    default:
      throw SolverError("HiGHS failed with model status " +
                        std::to_string(static_cast<int>(raw.status)));
  }

  if (result.hasSolution()) {
    if (!raw.hasPrimal) throw SolverError("HiGHS reported no primal values");
    result.values = std::move(raw.values);
    result.objective = raw.objective;
    result.bound = raw.bound;
    if (integral && params.polish) {
      HighsLp fixed = lp;
      for (HighsInt c = 0; c < fixed.num_col_; ++c) {
        if (fixed.integrality_[c] == HighsVarType::kContinuous) continue;
        const double v = std::round(result.values[c]);
        fixed.col_lower_[c] = v;
        fixed.col_upper_[c] = v;
      }
      fixed.integrality_.clear();
      SolveParams lpParams = params;
      lpParams.timeLimit = kInfinity;
      RawResult polished = runHighs(fixed, lpParams, kInfinity, nullptr);
      const double slack = 1e-7 * (1.0 + std::abs(result.objective));
      if (polished.status == HighsModelStatus::kOptimal && polished.hasPrimal &&
          polished.objective <= result.objective + slack) {
        result.values = std::move(polished.values);
        result.objective = polished.objective;
      }
    }
  }
  result.wallTime = secondsSince(start);
  return result;
}

}  // namespace

SolveResult solve(const MilpModel& model, const SolveParams& params) {
  return solveLp(model, toHighsLp(model, false), params);
}

SolveResult solveLpRelaxationWithFixings(
    const MilpModel& model, std::span<const std::pair<VarRef, double>> fixings,
    const SolveParams& params) {
  const auto& vars = model.variables();
  std::vector<bool> fixed(vars.size(), false);
  HighsLp lp = toHighsLp(model, false);
  for (const auto& [var, value] : fixings) {
    if (var.index < 0 || var.index >= static_cast<int>(vars.size())) {
      throw ContractError("fixing refers to an undeclared variable");
    }
    if (vars[var.index].kind == VarKind::kBinary && value != 0.0 &&
        value != 1.0) {
      throw ContractError("binary " + vars[var.index].name +
                          " fixed outside {0, 1}");
    }
    lp.col_lower_[var.index] = value;
    lp.col_upper_[var.index] = value;
    fixed[var.index] = true;
  }
  for (std::size_t c = 0; c < vars.size(); ++c) {
    if (vars[c].kind == VarKind::kBinary && !fixed[c]) {
      throw ContractError("binary " + vars[c].name + " is not fixed");
    }
  }
  lp.integrality_.clear();
  return solveLp(model, std::move(lp), params);
}

void writeLpFile(const MilpModel& model, const std::filesystem::path& path) {
  Highs highs;
  highs.setOptionValue("output_flag", false);
  if (highs.passModel(toHighsLp(model, true)) == HighsStatus::kError ||
      highs.writeModel(path.string()) == HighsStatus::kError) {
    throw SolverError("cannot write LP file " + path.string());
  }
}

}  // namespace amsplace
