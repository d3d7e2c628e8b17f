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

#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "amsplace/errors.hpp"
#include "amsplace/milp.hpp"

namespace amsplace {
namespace {

TEST(Milp, SingleBound) {
  MilpModel m;
  const VarRef x = m.addContinuous("x");
  m.addConstraint(LinExpr().add(1.0, x), Sense::kGreaterEqual, 3.0, "lo");
  m.setObjective(LinExpr().add(1.0, x));
  const auto r = solve(m, {});
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.value(x), 3.0, 1e-9);
  EXPECT_NEAR(r.objective, 3.0, 1e-9);
}

TEST(Milp, KnapsackMatchesEnumeration) {
  const std::array<double, 3> value{6, 10, 12}, weight{1, 2, 3};
  const double cap = 5;
  double best = 0;
  for (int mask = 0; mask < 8; ++mask) {
    double v = 0, w = 0;
    for (int k = 0; k < 3; ++k) {
      if (mask >> k & 1) v += value[k], w += weight[k];
    }
    if (w <= cap) best = std::max(best, v);
  }
  MilpModel m;
  LinExpr load, obj;
  std::array<VarRef, 3> b;
  for (int k = 0; k < 3; ++k) {
    b[k] = m.addBinary("b" + std::to_string(k));
    load.add(weight[k], b[k]);
    obj.add(-value[k], b[k]);
  }
  m.addConstraint(load, Sense::kLessEqual, cap, "cap");
  m.setObjective(obj);
  EXPECT_EQ(m.numBinaries(), 3);
  const auto r = solve(m, {});
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(-r.objective, best, 1e-9);
}

TEST(Milp, Infeasible) {
  MilpModel m;
  const VarRef x = m.addContinuous("x", -kInfinity, kInfinity);
  m.addConstraint(LinExpr().add(1.0, x), Sense::kLessEqual, 0.0, "a");
  m.addConstraint(LinExpr().add(1.0, x), Sense::kGreaterEqual, 1.0, "b");
  m.setObjective(LinExpr().add(1.0, x));
  EXPECT_EQ(solve(m, {}).status, SolveStatus::kInfeasible);
}

TEST(Milp, ConstantMovesToRhs) {
  MilpModel m;
  const VarRef x = m.addContinuous("x");
  // x + 2 >= 5
  m.addConstraint(LinExpr(2.0).add(1.0, x), Sense::kGreaterEqual, 5.0, "c");
  m.setObjective(LinExpr().add(1.0, x));
  const auto r = solve(m, {});
  ASSERT_TRUE(r.hasSolution());
  EXPECT_NEAR(r.value(x), 3.0, 1e-9);
}

TEST(Milp, WarmStartBookkeeping) {
  MilpModel m;
  const VarRef x = m.addContinuous("x");
  const VarRef b = m.addBinary("b");
  EXPECT_EQ(m.warmStartCount(), 0u);
  m.setWarmStart(x, 1.0);
  m.setWarmStart(x, 1.0);
  EXPECT_EQ(m.warmStartCount(), 1u);
  EXPECT_TRUE(m.hasWarmStart(x));
  EXPECT_FALSE(m.hasWarmStart(b));
  m.clearWarmStart();
  EXPECT_EQ(m.warmStartCount(), 0u);
  EXPECT_THROW(m.setWarmStart(VarRef{7}, 1.0), ContractError);
}

TEST(Milp, MaxViolation) {
  MilpModel m;
  const VarRef x = m.addContinuous("x", 0.0, 4.0);
  const VarRef b = m.addBinary("b");
  m.addConstraint(LinExpr().add(1.0, x).add(1.0, b), Sense::kLessEqual, 3.0, "r");
  EXPECT_DOUBLE_EQ(m.maxViolation(std::vector<double>{2.0, 1.0}), 0.0);
  EXPECT_DOUBLE_EQ(m.maxViolation(std::vector<double>{3.5, 1.0}), 1.5);
  EXPECT_DOUBLE_EQ(m.maxViolation(std::vector<double>{1.0, 0.5}), 0.5);
}

MilpModel fixingModel(VarRef& x, VarRef& b) {
  MilpModel m;
  x = m.addContinuous("x");
  b = m.addBinary("b");
  // x >= 2 b + 1
  m.addConstraint(LinExpr().add(1.0, x).add(-2.0, b), Sense::kGreaterEqual, 1.0,
                  "link");
  m.setObjective(LinExpr().add(1.0, x));
  return m;
}

TEST(LpWithFixings, SolvesPureLp) {
  VarRef x, b;
  const MilpModel m = fixingModel(x, b);
  const std::array<std::pair<VarRef, double>, 1> fix{{{b, 1.0}}};
  const auto r = solveLpRelaxationWithFixings(m, fix, {});
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.value(x), 3.0, 1e-9);
  EXPECT_NEAR(r.value(b), 1.0, 1e-12);
}

TEST(LpWithFixings, ContradictionIsInfeasible) {
  VarRef x, b;
  MilpModel m = fixingModel(x, b);
  m.addConstraint(LinExpr().add(1.0, x), Sense::kLessEqual, 2.0, "cap");
  const std::array<std::pair<VarRef, double>, 1> fix{{{b, 1.0}}};
  EXPECT_EQ(solveLpRelaxationWithFixings(m, fix, {}).status,
            SolveStatus::kInfeasible);
}

TEST(LpWithFixings, RequiresEveryBinaryFixed) {
  VarRef x, b;
  const MilpModel m = fixingModel(x, b);
  EXPECT_THROW(solveLpRelaxationWithFixings(m, {}, {}), ContractError);
  const std::array<std::pair<VarRef, double>, 1> half{{{b, 0.5}}};
  EXPECT_THROW(solveLpRelaxationWithFixings(m, half, {}), ContractError);
}

}  // namespace
}  // namespace amsplace
