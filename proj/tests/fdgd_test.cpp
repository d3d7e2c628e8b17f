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

#include <cmath>

#include "amsplace/errors.hpp"
#include "amsplace/fdgd.hpp"
#include "amsplace/instance_gen.hpp"
#include "test_util.hpp"

namespace amsplace {
namespace {

using testutil::makeInstance;

double centroidDistance(const RoughLayout& r, int i, int j) {
  return std::hypot(r.cx[i] - r.cx[j], r.cy[i] - r.cy[j]);
}

TEST(Fdgd, SpringShrinks) {
  Instance inst = makeInstance({{{2, 2}}, {{2, 2}}, {{2, 2}}, {{2, 2}}}, 0.5);
  inst.nets.push_back({{0, 3}, 1.0});
  FdgdParams params;
  params.seed = 4;
  const RoughLayout start = initialLayout(inst, params);
  const RoughLayout end = fdgdLayout(inst, params);
  EXPECT_LE(centroidDistance(end, 0, 3), centroidDistance(start, 0, 3) + 1e-9);
}

TEST(Fdgd, RepulsionOnlyKeepsBoxesApart) {
  const Instance inst = makeInstance({{{3, 1}}, {{2, 2}}, {{1, 4}}}, 1.0);
  const RoughLayout r = fdgdLayout(inst, {});
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const auto& a = inst.rectangles[i].variants[0];
      const auto& b = inst.rectangles[j].variants[0];
      const double gx = std::abs(r.cx[i] - r.cx[j]) - (a.width + b.width) / 2 - 1.0;
      const double gy = std::abs(r.cy[i] - r.cy[j]) - (a.height + b.height) / 2 - 1.0;
      EXPECT_GE(std::max(gx, gy), -1e-9) << i << "," << j;
    }
  }
}

TEST(Fdgd, Deterministic) {
  GenSpec spec;
  spec.n = 20;
  spec.seed = 8;
  const Instance inst = generate(spec);
  FdgdParams params;
  params.seed = 17;
  const RoughLayout a = fdgdLayout(inst, params);
  const RoughLayout b = fdgdLayout(inst, params);
  EXPECT_EQ(a.cx, b.cx);
  EXPECT_EQ(a.cy, b.cy);
}

TEST(Fdgd, SymmetryClusterIsMirrored) {
  Instance inst = makeInstance({{{2, 1}}, {{2, 1}}, {{3, 1}}, {{1, 1}}}, 0.5);
  inst.symmetryGroups.push_back({{{0, 1}}, {2}});
  inst.nets.push_back({{0, 3}, 1.0});
  const RoughLayout r = fdgdLayout(inst, {});
  EXPECT_NEAR(r.cy[0], r.cy[1], 1e-9);
  // Pair centroids straddle the self-symmetric centroid.
  EXPECT_NEAR(r.cx[0] + r.cx[1], 2 * r.cx[2], 1e-9);
}

TEST(Legalize, OverlappingSquares) {
  const Instance inst = makeInstance({{{2, 2}}, {{2, 2}}, {{2, 2}}}, 0.5);
  RoughLayout rough{{1, 1.5, 2}, {1, 1.2, 1.4}};
  const Placement p = legalize(inst, rough, 20.0);
  EXPECT_TRUE(validate(inst, p).empty());
}

TEST(Legalize, FeasibleRoughIsNotWorsened) {
  Instance inst = makeInstance({{{2, 2}}, {{3, 1}, {1, 3}}, {{1, 1}}}, 0.5);
  inst.nets.push_back({{0, 1, 2}, 1.0});
  const RoughLayout rough{{1, 6, 10}, {1, 5, 1}};
  const Placement start = roughPlacement(inst, rough);
  ASSERT_TRUE(validate(inst, start).empty());
  const Placement p = legalize(inst, rough, 20.0);
  EXPECT_TRUE(validate(inst, p).empty());
  EXPECT_LE(criterion(inst, p, {1, 1}), criterion(inst, start, {1, 1}) + 1e-9);
}

TEST(Legalize, NeedsBudget) {
  const Instance inst = makeInstance({{{1, 1}}});
  EXPECT_THROW(legalize(inst, {{0.5}, {0.5}}, 0.0), ContractError);
}

}  // namespace
}  // namespace amsplace
