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

#include "amsplace/svg.hpp"
#include "test_util.hpp"

namespace amsplace {
namespace {

int count(const std::string& text, const std::string& what) {
  int n = 0;
  for (auto pos = text.find(what); pos != std::string::npos;
       pos = text.find(what, pos + 1)) {
    ++n;
  }
  return n;
}

TEST(Svg, RectanglesAndFrameOnly) {
  const Instance inst = testutil::makeInstance({{{2, 1}}, {{1, 1}}});
  const Placement p = testutil::makePlacement({{0, 0}, {2, 0}}, 3, 1);
  const std::string svg = renderSvg(inst, p);
  EXPECT_EQ(count(svg, "<rect id=\"r"), 2);
  EXPECT_EQ(count(svg, "fill=\"white\""), 1);
  EXPECT_EQ(count(svg, "class=\"net\""), 0);
  EXPECT_EQ(count(svg, "class=\"axis\""), 0);
  EXPECT_EQ(svg.rfind("</svg>\n"), svg.size() - 7);
}

TEST(Svg, GroupColourAxisAndNets) {
  Instance inst = testutil::makeInstance({{{2, 2}}, {{2, 2}}, {{1, 1}}});
  inst.symmetryGroups.push_back({{{0, 1}}, {}});
  inst.nets.push_back({{0, 2}, 1.0});
  addBlockage(inst, {0, 3, 1, 1, {2}, -1});
  Placement p = testutil::makePlacement({{0, 0}, {4, 0}, {3, 3}, {0, 3}}, 6, 4);
  p.axes = {3.0};
  SvgOptions opt;
  opt.nets = true;
  const std::string svg = renderSvg(inst, p, opt);
  EXPECT_EQ(count(svg, "fill=\"#e6194b\""), 2);
  EXPECT_EQ(count(svg, "class=\"axis\""), 1);
  EXPECT_EQ(count(svg, "class=\"net\""), 1);
  EXPECT_EQ(count(svg, "class=\"blockage\""), 1);
  EXPECT_EQ(svg, renderSvg(inst, p, opt));
}

}  // namespace
}  // namespace amsplace
