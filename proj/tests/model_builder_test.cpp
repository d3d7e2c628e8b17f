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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "amsplace/errors.hpp"
#include "amsplace/model_builder.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

namespace amsplace {
namespace {

using testutil::makeInstance;
using testutil::makePlacement;

SolveResult solveModel(const PlacementModel& pm, double limit = 60.0) {
  SolveParams p;
  p.timeLimit = limit;
  return solve(pm.model, p);
}

Placement solveToPlacement(const Instance& inst, const BuildOptions& opt) {
  const PlacementModel pm = buildFullModel(inst, opt);
  const SolveResult r = solveModel(pm);
  EXPECT_EQ(r.status, SolveStatus::kOptimal);
  return extractPlacement(inst, pm, r);
}

TEST(BigM, HalfPerimeterBound) {
  Instance inst = makeInstance({{{1, 1}}, {{2, 2}}}, 3.0);
  BuildOptions opt;
  opt.halfPerimeterBound = 100.0;
  EXPECT_DOUBLE_EQ(computeBigM(inst, opt), 103.0);
  inst.distances.setDefaultDistance(0.0);
  opt.halfPerimeterBound = 50.0;
  EXPECT_DOUBLE_EQ(computeBigM(inst, opt), 50.0);
  opt.bigM = 7.0;
  EXPECT_DOUBLE_EQ(computeBigM(inst, opt), 7.0);
}

// Largest left-hand side a deactivated separation row can reach when both
// rectangles stay inside the square canvas [0, L]^2.
double worstDeactivatedRow(const Instance& inst, double L, double step) {
  double worst = -1e300;
  const double a = inst.distances(0, 1);
  for (const auto& vi : inst.rectangles[0].variants) {
    for (const auto& vj : inst.rectangles[1].variants) {
      for (double xi = 0; xi + vi.width <= L + 1e-9; xi += step) {
        for (double xj = 0; xj + vj.width <= L + 1e-9; xj += step) {
          worst = std::max({worst, xi + vi.width + a - xj, xj + vj.width + a - xi});
        }
      }
    }
  }
  return worst;
}

TEST(BigM, UnboundedPairIsSafe) {
  // Max dimensions 10 and 20, a_M = 2. A feasible pair fits in a row of
  // length 10 + 20 + 2 = 32; a deactivated row then reaches 32 + a_M.
  Instance inst = makeInstance({{{10, 4}, {4, 10}}, {{20, 5}, {5, 20}}}, 2.0);
  const double M = computeBigM(inst, {});
  EXPECT_DOUBLE_EQ(M, 34.0);
  const double worst = worstDeactivatedRow(inst, 32.0, 0.5);
  EXPECT_LE(worst, M + 1e-9);
  EXPECT_GT(worst, 32.0);
}

TEST(BigM, SafeAgainstOracle) {
  // M large enough never cuts off the optimum.
  for (std::uint64_t seed = 100; seed < 106; ++seed) {
    const Instance inst = oracle::tinyInstance(seed, 3, 2);
    const auto want = oracle::bruteForce(inst, {1, 1});
    const Placement p = solveToPlacement(inst, {});
    EXPECT_NEAR(criterion(inst, p, {1, 1}), want.value, 1e-6 * want.value);
  }
}

TEST(BinaryCount, FullModel) {
  std::vector<std::vector<Variant>> vs(10, {{1, 2}, {2, 1}});
  const Instance inst = makeInstance(vs);
  EXPECT_EQ(fullModelBinaryCount(inst), 200);
  const PlacementModel pm = buildFullModel(inst, {});
  EXPECT_EQ(pm.vars.placementBinaries, 200);
  EXPECT_EQ(pm.model.numBinaries(), 200);
}

TEST(BinaryCount, RestrictedModel) {
  std::vector<std::vector<Variant>> vs(10, {{1, 2}, {2, 1}});
  const Instance inst = makeInstance(vs);
  const std::vector<RectId> group{2, 5, 7};
  EXPECT_EQ(restrictedModelBinaryCount(inst, group), 102);
  std::vector<std::pair<double, double>> xy;
  for (int i = 0; i < 10; ++i) xy.emplace_back(3.0 * i, 0.0);
  const Placement base = makePlacement(xy, 30, 2);
  const PlacementModel pm = buildPartialModel(inst, {}, base, group);
  EXPECT_EQ(pm.model.numBinaries(), 102);
  std::vector<RectId> all(10);
  for (int i = 0; i < 10; ++i) all[i] = i;
  EXPECT_EQ(restrictedModelBinaryCount(inst, all), fullModelBinaryCount(inst));
}

TEST(FullModel, SingleRectangle) {
  const Instance inst = makeInstance({{{3, 5}, {2, 2}, {6, 1}}});
  const Placement p = solveToPlacement(inst, {});
  EXPECT_EQ(p.rects[0].variant, 1);
  EXPECT_NEAR(p.rects[0].x, 0.0, 1e-9);
  EXPECT_NEAR(p.rects[0].y, 0.0, 1e-9);
  EXPECT_NEAR(p.width + p.height, 4.0, 1e-9);
}

TEST(FullModel, ThreeUnitSquares) {
  const Instance inst = makeInstance({{{1, 1}}, {{1, 1}}, {{1, 1}}});
  const auto want = oracle::bruteForce(inst, {1, 0});
  EXPECT_NEAR(want.value, 4.0, 1e-9);
  const Placement p = solveToPlacement(inst, {{}, {}, {}, {1, 0}});
  EXPECT_NEAR(p.width + p.height, 4.0, 1e-6);
  EXPECT_TRUE(validate(inst, p).empty());
}

TEST(FullModel, RandomOptimaAreFeasible) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance inst = oracle::tinyInstance(seed, 4, 2);
    const Placement p = solveToPlacement(inst, {});
    EXPECT_TRUE(validate(inst, p).empty()) << "seed " << seed;
  }
}

TEST(FullModel, SymmetryGroupBlockageAndAspect) {
  Instance inst = makeInstance(
      {{{2, 3}}, {{2, 3}}, {{4, 1}, {1, 4}}, {{3, 3}}, {{1, 2}, {2, 1}}}, 0.5);
  inst.symmetryGroups.push_back({{{0, 1}}, {2}});
  inst.nets = {{{0, 3, 4}, 1.0}, {{1, 2}, 2.0}};
  addBlockage(inst, {0, 0, 2, 2, {3, 4}, -1});
  inst.aspect = {0.6, 0.95};
  const Placement p = solveToPlacement(inst, {});
  EXPECT_TRUE(validate(inst, p).empty());
  const double ratio = std::min(p.width, p.height) / std::max(p.width, p.height);
  EXPECT_GE(ratio, 0.6 - 1e-6);
  EXPECT_LE(ratio, 0.95 + 1e-6);
}

TEST(SymmetryBreaking, SameOptimum) {
  for (std::uint64_t seed = 20; seed < 24; ++seed) {
    const Instance inst = oracle::tinyInstance(seed, 3, 2);
    BuildOptions sb;
    sb.symmetryBreaking = true;
    const PlacementModel pm = buildFullModel(inst, sb);
    const SolveResult r = solveModel(pm);
    ASSERT_EQ(r.status, SolveStatus::kOptimal);
    const Placement p = extractPlacement(inst, pm, r);
    const double plain = criterion(inst, solveToPlacement(inst, {}), {1, 1});
    EXPECT_NEAR(criterion(inst, p, {1, 1}), plain, 1e-6 * plain);
    const RectId K = largestRectangle(inst);
    const auto k = geometryOf(inst, p, K);
    EXPECT_LE(2 * k.x + k.w, p.width + 1e-6);
    EXPECT_LE(2 * k.y + k.h, p.height + 1e-6);
  }
}

TEST(SymmetryBreaking, SquareKeepsAllVariants) {
  const Instance inst = makeInstance({{{3, 3}}, {{1, 2}, {2, 1}}});
  BuildOptions sb;
  sb.symmetryBreaking = true;
  const PlacementModel pm = buildFullModel(inst, sb);
  EXPECT_EQ(largestRectangle(inst), 0);
  EXPECT_EQ(pm.model.variable(pm.vars.rects[0].select[0]).upper, 1.0);
  EXPECT_EQ(pm.model.variable(pm.vars.rects[1].select[1]).upper, 1.0);
}

TEST(SymmetryBreaking, RotatedVariantOfKFixedWhenClosed) {
  const Instance inst = makeInstance({{{4, 2}, {2, 4}}, {{1, 2}, {2, 1}}});
  BuildOptions sb;
  sb.symmetryBreaking = true;
  const PlacementModel pm = buildFullModel(inst, sb);
  EXPECT_EQ(pm.model.variable(pm.vars.rects[0].select[1]).upper, 0.0);
  // Not closed under transposition: rotation stays free.
  const Instance open = makeInstance({{{4, 2}, {2, 4}}, {{1, 2}}});
  const PlacementModel pm2 = buildFullModel(open, sb);
  EXPECT_EQ(pm2.model.variable(pm2.vars.rects[0].select[1]).upper, 1.0);
}

TEST(SymmetryBreaking, RejectsGroupsAndBlockages) {
  Instance inst = makeInstance({{{1, 1}}, {{1, 1}}});
  inst.symmetryGroups.push_back({{{0, 1}}, {}});
  BuildOptions sb;
  sb.symmetryBreaking = true;
  EXPECT_THROW(buildFullModel(inst, sb), ContractError);
  Instance blocked = makeInstance({{{1, 1}}, {{1, 1}}});
  addBlockage(blocked, {3, 3, 1, 1, {0}, -1});
  EXPECT_THROW(buildFullModel(blocked, sb), ContractError);
}

TEST(HalfPerimeterBound, TightSlackAndInfeasible) {
  const Instance inst = oracle::tinyInstance(42, 3, 2);
  const auto area = oracle::bruteForce(inst, {1, 0});
  const double minWH = area.value;
  const CriterionWeights w{1, 0};

  BuildOptions tight;
  tight.weights = w;
  tight.halfPerimeterBound = minWH;
  const PlacementModel pm = buildFullModel(inst, tight);
  EXPECT_DOUBLE_EQ(pm.vars.bigM,
                   minWH + std::max(0.0, inst.distances.maxDistance(inst.selectableIds())));
  const SolveResult r = solveModel(pm);
  ASSERT_TRUE(r.hasSolution());
  EXPECT_NEAR(r.objective, minWH, 1e-6 * minWH);

  BuildOptions below = tight;
  below.halfPerimeterBound = 0.99 * minWH;
  EXPECT_EQ(solveModel(buildFullModel(inst, below)).status,
            SolveStatus::kInfeasible);

  const auto full = oracle::bruteForce(inst, {1, 1});
  BuildOptions slack;
  slack.halfPerimeterBound = 1.2 * full.halfPerimeter;
  const Placement p = solveToPlacement(inst, slack);
  EXPECT_NEAR(criterion(inst, p, {1, 1}), full.value, 1e-6 * full.value);
}

TEST(LeastViolated, HandExample) {
  EXPECT_EQ(leastViolatedRelation({0, 0, 4, 2}, {5, 0, 2, 2}, 0.0), 1);
  EXPECT_EQ(leastViolatedRelation({1, 1, 2, 2}, {1, 1, 2, 2}, 0.0), 1);
  EXPECT_EQ(leastViolatedRelation({0, 5, 1, 1}, {0, 0, 1, 1}, 0.0), 4);
}

TEST(LeastViolated, MatchesReevaluation) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 20), s(0.5, 6), d(-1, 2);
  for (int t = 0; t < 100; ++t) {
    const RectGeometry a{u(rng), u(rng), s(rng), s(rng)};
    const RectGeometry b{u(rng), u(rng), s(rng), s(rng)};
    const double dist = d(rng);
    const double v[4] = {a.x + a.w + dist - b.x, a.y + a.h + dist - b.y,
                         b.x + b.w + dist - a.x, b.y + b.h + dist - a.y};
    const int want = static_cast<int>(std::min_element(v, v + 4) - v) + 1;
    EXPECT_EQ(leastViolatedRelation(a, b, dist), want);
  }
}

TEST(WarmStart, FeasiblePlacementObjectiveIsCriterion) {
  Instance inst = makeInstance({{{2, 1}, {1, 2}}, {{1, 1}}, {{3, 1}}}, 0.5);
  inst.nets = {{{0, 1}, 1.0}, {{1, 2}, 3.0}};
  const Placement p = makePlacement({{0, 0}, {2.5, 0}, {0, 1.5}}, 3.5, 2.5);
  ASSERT_TRUE(validate(inst, p).empty());
  PlacementModel pm = buildFullModel(inst, {});
  warmStartFromPlacement(pm, inst, p);
  const auto& hint = pm.model.warmStart();
  EXPECT_EQ(pm.model.warmStartCount(), pm.model.variables().size());
  EXPECT_LE(pm.model.maxViolation(hint), 1e-9);
  EXPECT_NEAR(pm.model.evaluate(pm.model.objective(), hint),
              criterion(inst, p, {1, 1}), 1e-9);

  // Idempotent.
  const std::vector<double> once = hint;
  warmStartFromPlacement(pm, inst, p);
  EXPECT_EQ(pm.model.warmStart(), once);

  // Decoding the hint reproduces the placement.
  SolveResult fake;
  fake.status = SolveStatus::kFeasible;
  fake.values = once;
  EXPECT_EQ(extractPlacement(inst, pm, fake), p);

  // The backend accepts it as incumbent.
  const SolveResult r = solveModel(pm);
  ASSERT_TRUE(r.hasSolution());
  EXPECT_LE(r.objective, criterion(inst, p, {1, 1}) + 1e-9);
}

TEST(WarmStart, OverlappingHintStillSolves) {
  const Instance inst = makeInstance({{{2, 2}}, {{2, 2}}, {{1, 3}, {3, 1}}}, 1.0);
  const Placement bad = makePlacement({{0, 0}, {1, 1}, {0.5, 0.5}}, 3, 3);
  ASSERT_FALSE(validate(inst, bad).empty());
  PlacementModel pm = buildFullModel(inst, {});
  warmStartFromPlacement(pm, inst, bad);
  const SolveResult r = solveModel(pm);
  ASSERT_TRUE(r.hasSolution());
  EXPECT_TRUE(validate(inst, extractPlacement(inst, pm, r)).empty());
}

TEST(Extract, FractionalSelectionFails) {
  const Instance inst = makeInstance({{{2, 1}, {1, 2}}});
  const PlacementModel pm = buildFullModel(inst, {});
  SolveResult fake;
  fake.status = SolveStatus::kFeasible;
  fake.values.assign(pm.model.variables().size(), 0.0);
  fake.values[pm.vars.rects[0].select[0].index] = 0.5;
  fake.values[pm.vars.rects[0].select[1].index] = 0.5;
  EXPECT_THROW(extractPlacement(inst, pm, fake), ExtractionError);
  SolveResult none;
  EXPECT_THROW(extractPlacement(inst, pm, none), ExtractionError);
}

TEST(BinaryFixings, FixEveryBinary) {
  const Instance inst = oracle::tinyInstance(9, 4, 2);
  const PlacementModel pm = buildFullModel(inst, {});
  const SolveResult r = solveModel(pm);
  const Placement p = extractPlacement(inst, pm, r);
  const auto fix = binaryFixings(pm, inst, p);
  EXPECT_EQ(static_cast<int>(fix.size()), pm.model.numBinaries());
  const SolveResult lp = solveLpRelaxationWithFixings(pm.model, fix, {});
  ASSERT_EQ(lp.status, SolveStatus::kOptimal);
  EXPECT_NEAR(lp.objective, r.objective, 1e-6 * std::abs(r.objective));
}

TEST(VarMap, RelationOrientation) {
  VarMap v;
  v.addRelation(3, 1, {VarRef{0}, VarRef{1}, VarRef{2}, VarRef{3}});
  const RelationVars* r = v.relation(1, 3);
  ASSERT_NE(r, nullptr);
  // "3 left of 1" is "1 right of 3".
  EXPECT_EQ((*r)[0].index, 2);
  EXPECT_EQ((*r)[1].index, 3);
  EXPECT_EQ((*r)[2].index, 0);
  EXPECT_EQ((*r)[3].index, 1);
  EXPECT_EQ(v.relation(3, 1), r);
  EXPECT_EQ(v.relation(0, 1), nullptr);
}

}  // namespace
}  // namespace amsplace
