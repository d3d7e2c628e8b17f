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

#include "amsplace/errors.hpp"
#include "amsplace/instance_gen.hpp"
#include "amsplace/io.hpp"
#include "test_util.hpp"

namespace amsplace {
namespace {

TEST(InstanceIo, MinimalRoundTrip) {
  const std::string text =
      R"({"name": "one", "rectangles": [{"id": 0, "variants": [{"w": 3, "h": 2}]}]})";
  const Instance inst = parseInstance(text);
  ASSERT_EQ(inst.rectangles.size(), 1u);
  EXPECT_EQ(inst.rectangles[0].variants[0], (Variant{3, 2}));
  EXPECT_TRUE(inst.nets.empty());
  EXPECT_EQ(parseInstance(serializeInstance(inst)), inst);
}

TEST(InstanceIo, NegativeDistanceSurvives) {
  Instance inst = testutil::makeInstance({{{1, 1}}, {{1, 1}}, {{2, 1}}}, 0.5);
  inst.distances.setOverride(0, 1, -1.0);
  const Instance back = parseInstance(serializeInstance(inst));
  EXPECT_EQ(back, inst);
  EXPECT_DOUBLE_EQ(back.distances(1, 0), -1.0);
  EXPECT_DOUBLE_EQ(back.distances(0, 2), 0.5);
  // Merged pockets: the override allows an overlap of one unit.
  const Placement p = testutil::makePlacement({{0, 0}, {0, 0}, {3, 0}}, 5, 1);
  EXPECT_TRUE(validate(back, p).empty());
}

TEST(InstanceIo, FullFeatureRoundTrip) {
  Instance inst = testutil::makeInstance(
      {{{1, 2}, {2, 1}}, {{1, 2}, {2, 1}}, {{3, 3}}, {{4, 1}}}, 1.0);
  inst.nets = {{{0, 1, 2}, 2.0}, {{2, 3}, 1.0}};
  inst.symmetryGroups.push_back({{{0, 1}}, {2}});
  addBlockage(inst, {5, 5, 2, 3, {3}, -1});
  inst.aspect = {0.25, 0.9};
  EXPECT_EQ(parseInstance(serializeInstance(inst)), inst);
}

TEST(InstanceIo, GeneratedInstanceIsByteStable) {
  GenSpec spec;
  spec.n = 50;
  spec.seed = 3;
  const std::string once = serializeInstance(generate(spec));
  const std::string twice = serializeInstance(parseInstance(once));
  EXPECT_EQ(once, twice);
}

TEST(InstanceIo, SchemaErrorsNameTheField) {
  try {
    parseInstance(R"({"name": "x", "rectangles": [{"id": 0, "variants": [{"w": "a", "h": 1}]}]})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("variants"), std::string::npos);
  }
  EXPECT_THROW(parseInstance("{not json"), ParseError);
  EXPECT_THROW(
      parseInstance(R"({"name": "x", "rectangles": [{"id": 0, "variants": [{"w": 1, "h": 1}]}],
                        "nets": [{"cost": 1, "members": [0, 4]}]})"),
      InputError);
}

TEST(PlacementIo, RoundTripWithMetrics) {
  Instance inst = testutil::makeInstance({{{4, 2}}, {{2, 4}}});
  inst.nets.push_back({{0, 1}, 2.0});
  const Placement p = testutil::makePlacement({{0, 0}, {10, 10}}, 12, 14);
  const auto file = parsePlacement(serializePlacement(inst, p, {1, 1}), &inst);
  EXPECT_EQ(file.instanceName, "t");
  EXPECT_EQ(file.placement, p);
  ASSERT_TRUE(file.hpwl && file.area && file.criterion);
  EXPECT_DOUBLE_EQ(*file.hpwl, 40.0);
  EXPECT_DOUBLE_EQ(*file.area, 168.0);
  EXPECT_DOUBLE_EQ(*file.criterion, 26.0 + 20.0);
}

TEST(PlacementIo, UnknownRectangleIsReferenceError) {
  Instance inst = testutil::makeInstance({{{1, 1}}});
  const std::string text =
      R"({"instance": "t", "rects": [{"id": 3, "x": 0, "y": 0, "variant": 0}], "W": 1, "H": 1, "axes": []})";
  EXPECT_THROW(parsePlacement(text), ReferenceError);
  EXPECT_THROW(parsePlacement(text, &inst), ReferenceError);
}

}  // namespace
}  // namespace amsplace
