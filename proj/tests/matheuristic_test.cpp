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
#include <random>

#include "amsplace/errors.hpp"
#include "amsplace/fdgd.hpp"
#include "amsplace/instance_gen.hpp"
#include "amsplace/matheuristic.hpp"
#include "test_util.hpp"

namespace amsplace {
namespace {

using testutil::makeInstance;
using testutil::makePlacement;

Instance fourSquares() {
  return makeInstance({{{1, 1}}, {{1, 1}}, {{1, 1}}, {{1, 1}}});
}

TEST(SelectGroup, NearestByProximity) {
  const Instance inst = fourSquares();
  const Placement p = makePlacement({{0, 0}, {1, 0}, {2, 0}, {0, 3}}, 3, 4);
  EXPECT_EQ(selectGroup(inst, p, 0.5, 3.5, 1), (std::vector<RectId>{3}));
  // A corner of rectangle 2 puts it first.
  EXPECT_EQ(selectGroup(inst, p, 3.0, 0.0, 1), (std::vector<RectId>{2}));
  EXPECT_EQ(selectGroup(inst, p, 3.0, 0.0, 2), (std::vector<RectId>{1, 2}));
  EXPECT_EQ(selectGroup(inst, p, 1.0, 1.0, 4), (std::vector<RectId>{0, 1, 2, 3}));
  EXPECT_THROW(selectGroup(inst, p, 0, 0, 5), ContractError);
  EXPECT_THROW(selectGroup(inst, p, 0, 0, 0), ContractError);
}

TEST(SelectGroup, MatchesBruteForceRanking) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 30);
  const Instance inst = makeInstance(std::vector<std::vector<Variant>>(
      12, std::vector<Variant>{{2, 3}}));
  for (int t = 0; t < 30; ++t) {
    std::vector<std::pair<double, double>> xy;
    for (int i = 0; i < 12; ++i) xy.emplace_back(u(rng), u(rng));
    const Placement p = makePlacement(xy, 40, 40);
    const double px = u(rng), py = u(rng);
    std::vector<std::pair<double, RectId>> ranked;
    for (int i = 0; i < 12; ++i) {
      const double x = xy[i].first, y = xy[i].second;
      ranked.emplace_back(std::max({std::abs(px - x), std::abs(px - x - 2),
                                    std::abs(py - y), std::abs(py - y - 3)}),
                          i);
    }
    std::sort(ranked.begin(), ranked.end());
    std::vector<RectId> want;
    for (int k = 0; k < 4; ++k) want.push_back(ranked[k].second);
    std::sort(want.begin(), want.end());
    EXPECT_EQ(selectGroup(inst, p, px, py, 4), want);
  }
}

TEST(SelectGroup, AddsSymmetryPartner) {
  Instance inst = fourSquares();
  inst.symmetryGroups.push_back({{{0, 3}}, {}});
  const Placement p = makePlacement({{0, 0}, {1, 0}, {2, 0}, {0, 3}}, 3, 4);
  EXPECT_EQ(selectGroup(inst, p, 0.0, 0.0, 1), (std::vector<RectId>{0, 3}));
}

TEST(RestrictedModel, OptimumNoWorseThanStart) {
  GenSpec spec;
  spec.n = 12;
  spec.seed = 2;
  const Instance inst = generate(spec);
  const Placement start = legalize(inst, fdgdLayout(inst, {}), 5.0);
  for (int t = 0; t < 3; ++t) {
    const auto group = selectGroup(inst, start, 5.0 * t, 5.0 * t, 4);
    const PlacementModel pm = buildRestrictedModel(inst, start, group, {});
    SolveParams params;
    params.timeLimit = 30;
    const SolveResult r = solve(pm.model, params);
    ASSERT_TRUE(r.hasSolution());
    EXPECT_LE(r.objective, criterion(inst, start, {1, 1}) + 1e-6);
    const Placement p = extractPlacement(inst, pm, r);
    EXPECT_TRUE(validate(inst, p).empty());
    for (RectId i = 0; i < 12; ++i) {
      if (!std::binary_search(group.begin(), group.end(), i)) {
        EXPECT_EQ(p.rects[i], start.rects[i]);
      }
    }
  }
}

TEST(Intensify, ProtrudingRectangleMovesIn) {
  Instance inst = fourSquares();
  inst.nets.push_back({{0, 3}, 1.0});
  const Placement p = makePlacement({{0, 0}, {1, 0}, {2, 0}, {0, 3}}, 3, 4);
  MhConfig config;
  config.g = 2;
  const double before = criterion(inst, p, {1, 1});
  const StepResult r = intensifyStep(inst, p, 0.5, 3.5, config);
  ASSERT_TRUE(r.improved);
  EXPECT_TRUE(validate(inst, r.placement).empty());
  const auto after = evaluate(inst, r.placement, {1, 1});
  EXPECT_LT(after.value, before - 1e-9);
  EXPECT_LT(after.areaTerm, 7.0);
  EXPECT_LT(after.connectivity, 3.0);
}

TEST(Intensify, OptimalPlacementIsNotImproved) {
  const Instance inst = makeInstance({{{1, 1}}, {{1, 1}}, {{1, 1}}});
  const Placement p = makePlacement({{0, 0}, {1, 0}, {2, 0}}, 3, 1);
  MhConfig config;
  config.g = 2;
  config.build.weights = {1, 0};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ux(0, 3), uy(0, 1);
  for (int t = 0; t < 5; ++t) {
    const StepResult r = intensifyStep(inst, p, ux(rng), uy(rng), config);
    EXPECT_FALSE(r.improved);
    EXPECT_EQ(r.placement, p);
  }
}

TEST(FineOpt, GapAtEdgeCloses) {
  const Instance inst = makeInstance({{{2, 2}}, {{2, 2}}});
  const Placement p = makePlacement({{0, 0}, {2, 0}}, 9, 2);
  const Placement q = lpFineOptimize(inst, p, {});
  EXPECT_NEAR(q.width, p.width - 5.0, 1e-6);
  EXPECT_NEAR(q.height, 2.0, 1e-6);
  EXPECT_TRUE(validate(inst, q).empty());
}

TEST(FineOpt, CompactPlacementUnchanged) {
  Instance inst = makeInstance({{{2, 2}}, {{1, 2}}, {{3, 1}}}, 0.0);
  inst.nets.push_back({{0, 1, 2}, 1.0});
  const Placement p = makePlacement({{0, 0}, {2, 0}, {0, 2}}, 3, 3);
  ASSERT_TRUE(validate(inst, p).empty());
  const Placement q = lpFineOptimize(inst, p, {});
  EXPECT_LE(criterion(inst, q, {1, 1}), criterion(inst, p, {1, 1}) + 1e-9);
  EXPECT_NEAR(q.width + q.height, 6.0, 1e-6);
}

TEST(Swap, CompatiblePositions) {
  const Instance inst = makeInstance({{{10, 10}}, {{10, 12}}, {{10, 13}}});
  const Placement p = makePlacement({{0, 0}, {11, 0}, {22, 0}}, 32, 13);
  EXPECT_EQ(compatiblePositions(inst, p, 0, 0.25), (std::vector<RectId>{0, 1}));
  EXPECT_EQ(compatiblePositions(inst, p, 2, 0.25), (std::vector<RectId>{1, 2}));
}

TEST(Swap, GroupMembersStay) {
  Instance inst = makeInstance({{{1, 1}}, {{1, 1}}, {{1, 1}}});
  inst.symmetryGroups.push_back({{}, {1}});
  Placement p = makePlacement({{0, 0}, {2, 0}, {4, 0}}, 5, 1);
  p.axes = {2.5};
  EXPECT_EQ(compatiblePositions(inst, p, 1, 0.25), (std::vector<RectId>{1}));
  EXPECT_EQ(compatiblePositions(inst, p, 0, 0.25), (std::vector<RectId>{0, 2}));
}

TEST(Swap, IdenticalPairSwapsFree) {
  const Instance inst = makeInstance({{{2, 2}}, {{2, 2}}}, 1.0);
  const Placement p = makePlacement({{0, 0}, {3, 0}}, 5, 2);
  MhConfig config;
  config.minSwapsFraction = 0.5;
  const SwapModel sm = buildSwapModel(inst, p, config);
  EXPECT_EQ(sm.minSwaps, 1);
  const SolveResult r = solve(sm.model, {});
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_EQ(decodeAssignment(sm, r), (std::vector<int>{1, 0}));
  EXPECT_NEAR(r.value(sm.xi), 0.0, 1e-9);
  // Enumerating both assignments: identity pays the penalty, the swap does not.
  EXPECT_NEAR(r.objective, 7.0, 1e-6);
}

TEST(Swap, IncompatibleForcesIdentity) {
  const Instance inst = makeInstance({{{1, 1}}, {{2, 2}}, {{4, 4}}});
  const Placement p = makePlacement({{0, 0}, {1, 0}, {3, 0}}, 7, 4);
  MhConfig config;
  const SwapModel sm = buildSwapModel(inst, p, config);
  EXPECT_EQ(sm.minSwaps, 1);
  const SolveResult r = solve(sm.model, {});
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_EQ(decodeAssignment(sm, r), (std::vector<int>{0, 1, 2}));
  EXPECT_NEAR(r.value(sm.xi), 1.0, 1e-9);
  EXPECT_NEAR(r.objective, 7.0 + 4.0 + sm.penalty * 1.0, 1e-6);
  EXPECT_EQ(diversify(inst, p, config), p);
}

TEST(Diversify, RepairedPlacementIsFeasible) {
  GenSpec spec;
  spec.n = 10;
  spec.seed = 6;
  const Instance inst = generate(spec);
  const Placement start = legalize(inst, fdgdLayout(inst, {}), 5.0);
  MhConfig config;
  config.areaDiff = 10.0;
  config.stepTimeLimit = 10.0;
  const Placement q = diversify(inst, start, config);
  EXPECT_TRUE(validate(inst, q).empty());
}

TEST(Run, ZeroBudget) {
  const Instance inst = fourSquares();
  const Placement p = makePlacement({{0, 0}, {1, 0}, {2, 0}, {0, 3}}, 3, 4);
  MhConfig config;
  config.g = 2;
  config.totalBudget = 0.0;
  const MhResult r = run(inst, p, config);
  EXPECT_EQ(r.best, p);
  EXPECT_TRUE(r.trace.events.empty());
  EXPECT_EQ(r.iterations, 0);
}

TEST(Run, RejectsInfeasibleStart) {
  const Instance inst = fourSquares();
  const Placement p = makePlacement({{0, 0}, {0, 0}, {2, 0}, {0, 3}}, 3, 4);
  MhConfig config;
  config.totalBudget = 1.0;
  EXPECT_THROW(run(inst, p, config), ContractError);
}

TEST(Run, BestNeverWorseAndTraceConsistent) {
  GenSpec spec;
  spec.n = 10;
  spec.seed = 12;
  const Instance inst = generate(spec);
  const Placement start = legalize(inst, fdgdLayout(inst, {}), 10.0);
  MhConfig config;
  config.g = 4;
  config.totalBudget = 60.0;
  config.maxIterations = 40;
  config.useDiversification = true;
  config.nonImprovingThreshold = 3;
  config.logicalClock = true;
  double lastBest = criterion(inst, start, {1, 1});
  long calls = 0;
  const MhResult r = run(inst, start, config,
                         [&](const Placement& current, const Placement& best) {
                           ++calls;
                           EXPECT_TRUE(validate(inst, current).empty());
                           const double b = criterion(inst, best, {1, 1});
                           EXPECT_LE(b, lastBest + 1e-12);
                           lastBest = b;
                         });
  EXPECT_EQ(calls, r.iterations);
  EXPECT_LE(criterion(inst, r.best, {1, 1}), criterion(inst, start, {1, 1}));
  EXPECT_TRUE(validate(inst, r.best).empty());
  double lastTime = 0.0;
  for (const auto& e : r.trace.events) {
    EXPECT_GE(e.time, lastTime);
    lastTime = e.time;
  }
}

TEST(Trace, RoundTrip) {
  MhTrace t;
  t.events = {{0.5, TraceKind::kIntensifyAccept, 123.25, 40.5, 1234.125},
              {1.0, TraceKind::kFineOpt, 120.0, 40.0, 1200.0},
              {2.0, TraceKind::kIntensifyReject, 120.0, 40.0, 1200.0},
              {3.0, TraceKind::kDiversify, 130.0 + 1.0 / 3.0, 41.0, 1300.0}};
  const std::string text = t.serialize();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "0.500000 intensify-accept 123.25 40.5 1234.125");
  const MhTrace back = MhTrace::parse(text);
  ASSERT_EQ(back.events.size(), 4u);
  EXPECT_EQ(back.events[3].kind, TraceKind::kDiversify);
  EXPECT_EQ(back.events[3].criterion, 130.0 + 1.0 / 3.0);
  EXPECT_EQ(back.serialize(), text);
  EXPECT_THROW(MhTrace::parse("1.0 teleport 1 2 3\n"), ParseError);
}

}  // namespace
}  // namespace amsplace
