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

// Synthetic instances: a mix of small rotation-only devices and larger
// devices with several near-constant-area shapes, random multi-pin nets and
// optional symmetry groups appended after the n independent rectangles.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amsplace/core.hpp"

namespace amsplace {

struct GroupSpec {
  int pairs = 2;
  int selfSymmetric = 1;
};

struct GenSpec {
  std::string name;  // defaults to gen_n<n>_s<seed>
  int n = 50;
  bool withSymmetry = false;
  std::vector<GroupSpec> groups;  // used when withSymmetry
  std::uint64_t seed = 0;
  double smallFraction = 0.7;
  int minVariants = 3;
  int maxVariants = 6;
  double minSize = 2.0;
  double maxSize = 40.0;
  double netsPerRectangle = 1.2;
  int minNetSize = 2;
  int maxNetSize = 6;
  double defaultDistance = 1.0;
  double mergedPocketFraction = 0.1;
  double mergedPocketDistance = -0.5;
};

// Throws SpecError on contradictory settings.
void checkSpec(const GenSpec& spec);

std::string genSpecToJson(const GenSpec& spec);
GenSpec genSpecFromJson(const std::string& text);

// Deterministic per spec. The spec is embedded in Instance::genspec.
Instance generate(const GenSpec& spec);

}  // namespace amsplace
