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

#include "amsplace/core.hpp"

namespace amsplace {

struct SvgOptions {
  double canvas = 800.0;  // pixels along the longer side
  bool nets = false;      // draw net bounding boxes
  bool labels = true;
};

// Frame, rectangles (one colour per symmetry group, grey otherwise), hatched
// blockages and dashed symmetry axes. Output is byte-stable per input.
std::string renderSvg(const Instance& instance, const Placement& placement,
                      const SvgOptions& options = {});

void writeSvg(const Instance& instance, const Placement& placement,
              const std::filesystem::path& path, const SvgOptions& options = {});

}  // namespace amsplace
