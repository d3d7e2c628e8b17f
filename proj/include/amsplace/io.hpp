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

// JSON instance and placement files. Serialization is canonical: writing an
// object read from a canonical file reproduces the same bytes.

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "amsplace/core.hpp"

namespace amsplace {

Instance parseInstance(const std::string& text);
std::string serializeInstance(const Instance& instance);
Instance readInstance(const std::filesystem::path& path);
void writeInstance(const Instance& instance, const std::filesystem::path& path);

// A placement file together with the metrics it reports.
struct PlacementFile {
  std::string instanceName;
  Placement placement;
  std::optional<CriterionWeights> weights;
  std::optional<double> hpwl;
  std::optional<double> area;
  std::optional<double> criterion;
};

// Reported metrics (hpwl, area = W * H, criterion) are recomputed from the
// instance on every write.
std::string serializePlacement(const Instance& instance,
                               const Placement& placement,
                               const CriterionWeights& weights);
void writePlacement(const Instance& instance, const Placement& placement,
                    const CriterionWeights& weights,
                    const std::filesystem::path& path);

// Without an instance only the schema is checked; with one, rectangle ids
// and the axis count are resolved against it.
PlacementFile parsePlacement(const std::string& text,
                             const Instance* instance = nullptr);
PlacementFile readPlacement(const std::filesystem::path& path,
                            const Instance* instance = nullptr);

std::string readTextFile(const std::filesystem::path& path);
void writeTextFile(const std::filesystem::path& path, const std::string& text);

}  // namespace amsplace
