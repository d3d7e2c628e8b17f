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

// Force-directed rough layout and its legalization through the full model.
//
// Nets act as springs between member centroids; rectangles whose
// distance-inflated boxes overlap repel along the axis of smaller overlap.
// Each symmetry group moves as one rigid cluster with its pairs mirrored
// about a provisional axis.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "amsplace/core.hpp"
#include "amsplace/model_builder.hpp"

namespace amsplace {

struct FdgdParams {
  int iterations = 500;
  // Initial displacement cap; the mean rectangle max-dimension when unset.
  std::optional<double> step;
  double decay = 0.99;
  std::uint64_t seed = 0;
};

// Centroids per rectangle id. Blockage dummies carry their fixed centre.
struct RoughLayout {
  std::vector<double> cx;
  std::vector<double> cy;
};

// Grid start the force loop begins from; no two inflated boxes overlap.
RoughLayout initialLayout(const Instance& instance, const FdgdParams& params);

RoughLayout fdgdLayout(const Instance& instance, const FdgdParams& params);

// Placement with variant 0 everywhere, centred on the rough centroids and
// shifted into the first quadrant. Usually infeasible.
Placement roughPlacement(const Instance& instance, const RoughLayout& rough);

struct LegalizeOptions {
  BuildOptions build;
  int threads = 1;
  unsigned seed = 0;
};

// Fixes the least-violated relations of the rough placement, solves the
// remaining LP for a feasible start, then improves it with the full model
// until `budget` seconds have passed. Throws LegalizationError when neither
// step yields a placement.
Placement legalize(const Instance& instance, const RoughLayout& rough,
                   double budget, const LegalizeOptions& options = {});

}  // namespace amsplace
