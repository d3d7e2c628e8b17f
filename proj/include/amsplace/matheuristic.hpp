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

// Matheuristic local search. Intensification frees the g rectangles nearest
// to a random point of the bounding box, re-solves that restricted model and
// polishes accepted moves with an LP over the implied relations.
// Diversification solves an assignment model that swaps the positions of
// area-compatible rectangles and repairs the result with the full model.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "amsplace/core.hpp"
#include "amsplace/milp.hpp"
#include "amsplace/model_builder.hpp"

namespace amsplace {

struct MhConfig {
  int g = 10;
  double stepTimeLimit = 10.0;   // seconds per solver call
  int nonImprovingThreshold = 10;
  bool useDiversification = false;
  double areaDiff = 0.25;        // A_diff
  double minSwapsFraction = 1.0 / 3.0;
  std::uint64_t seed = 0;
  double totalBudget = 0.0;      // seconds
  // Optional cap on loop iterations.
  std::optional<long> maxIterations;
  // Stamp trace events with the iteration number instead of wall time.
  bool logicalClock = false;
  BuildOptions build;
  int threads = 1;
};

enum class TraceKind { kIntensifyAccept, kIntensifyReject, kDiversify, kFineOpt };

const char* toString(TraceKind kind);

struct TraceEvent {
  double time = 0.0;
  TraceKind kind = TraceKind::kIntensifyReject;
  double criterion = 0.0;
  double areaTerm = 0.0;      // L_A
  double connectivity = 0.0;  // L_C
};

struct MhTrace {
  std::vector<TraceEvent> events;

  // One `time_s kind criterion L_A L_C` line per event.
  std::string serialize() const;
  static MhTrace parse(const std::string& text);
  void write(const std::filesystem::path& path) const;
  static MhTrace read(const std::filesystem::path& path);
};

// The g selectable rectangles nearest to (px, py) by proximity, ties by id,
// plus the symmetry partners of any selected pair member. Sorted by id.
std::vector<RectId> selectGroup(const Instance& instance,
                                const Placement& placement, double px,
                                double py, int g);

// Restricted model over `group`, warm-started with `placement`.
PlacementModel buildRestrictedModel(const Instance& instance,
                                    const Placement& placement,
                                    std::span<const RectId> group,
                                    const BuildOptions& options);

struct StepResult {
  Placement placement;
  bool improved = false;
};

StepResult intensifyStep(const Instance& instance, const Placement& placement,
                         double px, double py, const MhConfig& config);

// LP over the least-violated relations, variants and aspect orientation of
// `placement`. Never returns a worse placement. Throws InternalError when the
// LP is infeasible.
Placement lpFineOptimize(const Instance& instance, const Placement& placement,
                         const MhConfig& config);

struct SwapModel {
  MilpModel model;
  std::vector<RectId> ids;  // selectable rectangles; positions share indexing
  // assign[a] lists (position index, p binary) for the positions in T_i.
  std::vector<std::vector<std::pair<int, VarRef>>> assign;
  VarRef xi;
  VarRef width;
  VarRef height;
  int minSwaps = 0;      // N
  double penalty = 0.0;  // c_xi
};

// T_i: rectangles whose areas differ by at most A_diff relative to the
// smaller one. Symmetry-group members only keep their own position.
std::vector<RectId> compatiblePositions(const Instance& instance,
                                        const Placement& placement, RectId i,
                                        double areaDiff);

SwapModel buildSwapModel(const Instance& instance, const Placement& placement,
                         const MhConfig& config);

// Position index taken by each rectangle of `model.ids`.
std::vector<int> decodeAssignment(const SwapModel& model,
                                  const SolveResult& result);

Placement diversify(const Instance& instance, const Placement& placement,
                    const MhConfig& config);

struct MhResult {
  Placement best;
  MhTrace trace;
  long iterations = 0;
  long diversifications = 0;
};

// Called after every loop iteration with the current and best placements.
using MhObserver = std::function<void(const Placement& current,
                                      const Placement& best)>;
// Receives diagnostic messages (failed steps and the like).
using MhLogger = std::function<void(const std::string&)>;

MhResult run(const Instance& instance, const Placement& initial,
             const MhConfig& config, const MhObserver& observer = {},
             const MhLogger& logger = {});

}  // namespace amsplace
