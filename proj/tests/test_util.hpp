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

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "amsplace/core.hpp"

namespace testutil {

// Instance with one rectangle per variant list, ids in order.
inline amsplace::Instance makeInstance(
    const std::vector<std::vector<amsplace::Variant>>& variants,
    double distance = 0.0) {
  amsplace::Instance inst;
  inst.name = "t";
  for (std::size_t i = 0; i < variants.size(); ++i) {
    amsplace::Rectangle r;
    r.id = static_cast<amsplace::RectId>(i);
    r.variants = variants[i];
    inst.rectangles.push_back(std::move(r));
  }
  inst.distances.setDefaultDistance(distance);
  return inst;
}

inline amsplace::Placement makePlacement(
    const std::vector<std::pair<double, double>>& xy, double W, double H,
    std::vector<int> variants = {}) {
  amsplace::Placement p;
  for (std::size_t i = 0; i < xy.size(); ++i) {
    p.rects.push_back({xy[i].first, xy[i].second,
                       variants.empty() ? 0 : variants[i]});
  }
  p.width = W;
  p.height = H;
  return p;
}

inline std::filesystem::path scratchDir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("amsplace_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testutil
