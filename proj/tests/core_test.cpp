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

#include "amsplace/core.hpp"
#include "amsplace/errors.hpp"
#include "test_util.hpp"

namespace amsplace {
namespace {

using testutil::makeInstance;
using testutil::makePlacement;

TEST(Hpwl, TwoMemberNet) {
  Instance inst = makeInstance({{{4, 2}}, {{2, 4}}});
  inst.nets.push_back({{0, 1}, 2.0});
  const Placement p = makePlacement({{0, 0}, {10, 10}}, 12, 14);
  EXPECT_DOUBLE_EQ(hpwl(inst, p), 40.0);
}

TEST(Hpwl, SingleMemberNetIsZero) {
  Instance inst = makeInstance({{{4, 2}}, {{2, 4}}});
  inst.nets.push_back({{1}, 5.0});
  EXPECT_DOUBLE_EQ(hpwl(inst, makePlacement({{0, 0}, {10, 10}}, 12, 14)), 0.0);
}

TEST(Hpwl, MatchesNaiveScan) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  std::vector<std::vector<Variant>> vs;
  for (int i = 0; i < 5; ++i) vs.push_back({{1.0 + i, 2.0 + i}});
  Instance inst = makeInstance(vs);
  inst.nets = {{{0, 1, 2}, 1.0}, {{1, 3}, 2.5}, {{0, 2, 3, 4}, 0.5}};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::pair<double, double>> xy;
    for (int i = 0; i < 5; ++i) xy.emplace_back(u(rng), u(rng));
    const Placement p = makePlacement(xy, 60, 60);
    double expect = 0.0;
    for (const auto& net : inst.nets) {
      double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
      for (RectId id : net.members) {
        const auto& v = inst.rectangles[id].variants[0];
        const double cx = xy[id].first + v.width / 2;
        const double cy = xy[id].second + v.height / 2;
        xlo = std::min(xlo, cx);
        xhi = std::max(xhi, cx);
        ylo = std::min(ylo, cy);
        yhi = std::max(yhi, cy);
      }
      expect += net.cost * ((xhi - xlo) + (yhi - ylo));
    }
    EXPECT_NEAR(hpwl(inst, p), expect, 1e-9 * expect);
  }
}

TEST(Criterion, AreaOnly) {
  Instance inst = makeInstance({{{1, 1}}});
  EXPECT_DOUBLE_EQ(criterion(inst, makePlacement({{0, 0}}, 10, 5), {1, 1}), 15);
}

TEST(Criterion, NormalisedConnectivity) {
  Instance inst = makeInstance({{{4, 2}}, {{2, 4}}});
  inst.nets.push_back({{0, 1}, 2.0});
  const Placement p = makePlacement({{0, 0}, {10, 10}}, 10, 5);
  EXPECT_DOUBLE_EQ(criterion(inst, p, {1, 1}), 35.0);
  const auto b = evaluate(inst, p, {1, 1});
  EXPECT_DOUBLE_EQ(b.areaTerm, 15.0);
  EXPECT_DOUBLE_EQ(b.connectivity, 40.0);
}

// L_A = 307.9 and L_C = 3232.0 recombine as c_A L_A + c_C / sum(c) L_C.
TEST(Criterion, RecombinesReportedComponents) {
  Instance inst = makeInstance({{{1, 1}}, {{1, 1}}});
  inst.nets.push_back({{0, 1}, 20.0});
  // Centroid offsets 100 + 61.6 give HPWL 20 * 161.6 = 3232.
  const Placement p = makePlacement({{0, 0}, {100, 61.6}}, 200, 107.9);
  const auto b = evaluate(inst, p, {1, 1});
  EXPECT_NEAR(b.areaTerm, 307.9, 1e-9);
  EXPECT_NEAR(b.connectivity, 3232.0, 1e-9);
  EXPECT_NEAR(b.value, 307.9 + 3232.0 / 20.0, 1e-9);
  EXPECT_NEAR(criterion(inst, p, {2, 3}), 2 * 307.9 + 3 * 3232.0 / 20.0, 1e-9);
}

TEST(Validate, GapEqualToDistanceIsFeasible) {
  Instance inst = makeInstance({{{1, 1}}, {{1, 1}}}, 1.0);
  EXPECT_TRUE(validate(inst, makePlacement({{0, 0}, {2, 0}}, 3, 1)).empty());
}

TEST(Validate, DistanceDeficitIsOverlap) {
  Instance inst = makeInstance({{{1, 1}}, {{1, 1}}}, 1.5);
  const auto v = validate(inst, makePlacement({{0, 0}, {2, 0}}, 3, 1));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::kOverlap);
  EXPECT_NEAR(v[0].magnitude, 0.5, 1e-12);
}

TEST(Validate, NegativeDistanceLetsPocketsMerge) {
  Instance inst = makeInstance({{{1, 1}}, {{1, 1}}}, -1.0);
  EXPECT_TRUE(validate(inst, makePlacement({{0, 0}, {0.5, 0}}, 1.5, 1)).empty());
  inst.distances.setDefaultDistance(0.0);
  EXPECT_FALSE(validate(inst, makePlacement({{0, 0}, {0.5, 0}}, 1.5, 1)).empty());
}

TEST(Validate, SymmetricPairOnAxis) {
  Instance inst = makeInstance({{{2, 2}}, {{2, 2}}});
  inst.symmetryGroups.push_back({{{0, 1}}, {}});
  Placement p = makePlacement({{0, 0}, {6, 0}}, 8, 2);
  p.axes = {4.0};
  EXPECT_TRUE(validate(inst, p).empty());
  p.axes = {4.5};
  const auto v = validate(inst, p);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].kind, ViolationKind::kSymmetry);
}

TEST(Validate, OutOfBoundsAndBadVariant) {
  Instance inst = makeInstance({{{2, 2}}});
  auto v = validate(inst, makePlacement({{1, 0}}, 2, 2));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::kBounds);
  Placement bad = makePlacement({{0, 0}}, 2, 2, {3});
  v = validate(inst, bad);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].kind, ViolationKind::kVariant);
}

TEST(Validate, BlockageAndAspect) {
  Instance inst = makeInstance({{{2, 2}}, {{2, 2}}});
  addBlockage(inst, {0, 0, 3, 3, {0}, -1});
  ASSERT_EQ(inst.rectangles.size(), 3u);
  EXPECT_FALSE(inst.rectangles[2].selectable);
  // Rectangle 1 is not blocked and may sit on the area.
  Placement p = makePlacement({{4, 0}, {0, 0}, {0, 0}}, 6, 3);
  EXPECT_TRUE(validate(inst, p).empty());
  p.rects[0] = {1, 0, 0};
  p.rects[1] = {4, 0, 0};
  const auto v = validate(inst, p);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].kind, ViolationKind::kBlockage);

  Instance tall = makeInstance({{{1, 4}}});
  tall.aspect = {0.5, 1.0};
  const auto a = validate(tall, makePlacement({{0, 0}}, 1, 4));
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].kind, ViolationKind::kAspectRatio);
}

TEST(Proximity, FarthestEdge) {
  EXPECT_DOUBLE_EQ(proximity(0, 0, {3, 4, 2, 1}), 5.0);
  const RectGeometry sq{2, 3, 6, 6};
  EXPECT_DOUBLE_EQ(proximity(sq.centerX(), sq.centerY(), sq), 3.0);
}

TEST(Proximity, ArgminMatchesReevaluation) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 40.0), s(0.5, 8.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RectGeometry> rs;
    for (int i = 0; i < 10; ++i) rs.push_back({u(rng), u(rng), s(rng), s(rng)});
    const double px = u(rng), py = u(rng);
    int got = 0, want = 0;
    double bestGot = 1e300, bestWant = 1e300;
    for (int i = 0; i < 10; ++i) {
      const auto& r = rs[i];
      const double ref = std::max({std::abs(px - r.x), std::abs(px - r.x - r.w),
                                   std::abs(py - r.y), std::abs(py - r.y - r.h)});
      const double p = proximity(px, py, r);
      if (p < bestGot) bestGot = p, got = i;
      if (ref < bestWant) bestWant = ref, want = i;
    }
    EXPECT_EQ(got, want);
  }
}

TEST(SeparationDeficit, SignConvention) {
  const RectGeometry a{0, 0, 1, 1}, b{3, 0, 1, 1};
  EXPECT_LE(separationDeficit(a, b, 2.0), 0.0);
  EXPECT_NEAR(separationDeficit(a, b, 2.5), 0.5, 1e-12);
}

TEST(CheckInstance, RejectsBrokenReferences) {
  Instance inst = makeInstance({{{1, 1}}, {{1, 1}}});
  inst.nets.push_back({{0, 5}, 1.0});
  EXPECT_THROW(checkInstance(inst), InputError);
  Instance noVariant = makeInstance({{}});
  EXPECT_THROW(checkInstance(noVariant), InputError);
  Instance sizes = makeInstance({{{0, 1}}});
  EXPECT_THROW(checkInstance(sizes), InputError);
}

TEST(Instance, GroupLookups) {
  Instance inst = makeInstance({{{1, 1}}, {{1, 1}}, {{1, 1}}, {{1, 1}}});
  inst.symmetryGroups.push_back({{{0, 2}}, {3}});
  EXPECT_EQ(inst.groupOf(3), 0);
  EXPECT_FALSE(inst.groupOf(1).has_value());
  EXPECT_EQ(inst.symmetryPartner(2), 0);
  EXPECT_FALSE(inst.symmetryPartner(3).has_value());
}

}  // namespace
}  // namespace amsplace
