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

// One placement run under a wall-clock budget:
//   ilp       full model for the whole budget
//   fdgd-ilp  force-directed layout, then legalization and the full model
//   mh        a third of the budget for the start solution, the rest for
//             the matheuristic

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "amsplace/core.hpp"
#include "amsplace/matheuristic.hpp"
#include "amsplace/metrics.hpp"

namespace amsplace {

enum class Mode { kIlp, kFdgdIlp, kMh };
enum class MhVariant { kPlain, kDiversify, kNoWarmStart };

Mode parseMode(const std::string& text);
MhVariant parseMhVariant(const std::string& text);

struct ExperimentConfig {
  Mode mode = Mode::kMh;
  MhVariant mhVariant = MhVariant::kPlain;
  int g = 10;
  CriterionWeights weights;
  double totalBudget = 60.0;  // seconds
  double stepTimeLimit = 10.0;
  bool symmetryBreaking = false;
  // W + H <= (1 + slack) * L_A of a legalized force-directed start.
  std::optional<double> whSlack;
  std::uint64_t seed = 0;
  int threads = 1;
  std::optional<long> maxIterations;
  bool logicalClock = false;
  std::filesystem::path outDir = ".";
  std::function<void(const std::string&)> logger;
};

// ILP, FDGD-ILP, MH-<g>, MH-<g>D or MH-<g>B.
std::string methodName(const ExperimentConfig& config);

struct ExperimentOutput {
  ResultRecord record;
  std::optional<Placement> placement;
  MhTrace trace;
};

// Runs one experiment and writes <outDir>/<instance>.<method>.placement.json
// (and .trace.txt for mh). A run without any placement yields a failed row.
ExperimentOutput runExperiment(const Instance& instance,
                               const ExperimentConfig& config);
ExperimentOutput runExperiment(const std::filesystem::path& instancePath,
                               const ExperimentConfig& config);

}  // namespace amsplace
