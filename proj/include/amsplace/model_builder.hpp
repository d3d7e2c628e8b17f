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

// Big-M placement model. Every rectangle owns coordinates (x, y), size
// (w, h) and one selection binary per variant; every unordered pair owns
// four relation binaries (left of, below, right of, above) of which at least
// one must hold. Rectangles may be frozen at the coordinates of a base
// placement, in which case they enter the model as constants and pairs of
// frozen rectangles are dropped entirely.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "amsplace/core.hpp"
#include "amsplace/milp.hpp"

namespace amsplace {

struct BuildOptions {
  bool symmetryBreaking = false;
  std::optional<double> halfPerimeterBound;  // P in W + H <= P
  std::optional<double> bigM;
  CriterionWeights weights;
};

using RelationVars = std::array<VarRef, 4>;

struct RectVars {
  bool free = false;
  VarRef x, y, w, h;
  std::vector<VarRef> select;
};

struct NetVars {
  VarRef xMax, xMin, yMax, yMin;
};

class VarMap {
 public:
  std::vector<RectVars> rects;  // by rectangle id
  VarRef width;
  VarRef height;
  std::vector<NetVars> nets;    // invalid refs for nets with no free member
  std::vector<VarRef> axes;     // invalid refs for groups with no free member
  VarRef aspect;                // r_R, present only when u_R < 1
  double bigM = 0.0;

  // Selection binaries plus rectangle-pair relation binaries.
  int placementBinaries = 0;
  int blockageBinaries = 0;

  void addRelation(RectId i, RectId j, RelationVars vars);
  // Relation binaries of the pair, oriented so that index 0 means
  // "min(i, j) left of max(i, j)".
  const RelationVars* relation(RectId i, RectId j) const;
  const std::vector<std::pair<RectId, RectId>>& relationPairs() const {
    return pairs_;
  }

  void addBlockageRelation(RectId rect, int blockage, RelationVars vars);
  const RelationVars* blockageRelation(RectId rect, int blockage) const;
  const std::vector<std::pair<RectId, int>>& blockagePairs() const {
    return blockage_pairs_;
  }

 private:
  static long long key(long long a, long long b) { return (a << 32) | b; }

  std::vector<std::pair<RectId, RectId>> pairs_;
  std::vector<RelationVars> pair_vars_;
  std::unordered_map<long long, int> pair_index_;
  std::vector<std::pair<RectId, int>> blockage_pairs_;
  std::vector<RelationVars> blockage_vars_;
  std::unordered_map<long long, int> blockage_index_;
};

struct PlacementModel {
  MilpModel model;
  VarMap vars;
  BuildOptions options;
  // Source of the frozen rectangles; empty for the full model.
  std::optional<Placement> base;
};

// M = P + a_M under a half-perimeter bound P. Without one, M = L + a_M where
// L = sum_i max_k max(w_i^k, h_i^k) + (n - 1) max(a_M, 0) plus the farthest
// blockage edge, i.e. the width of all rectangles laid out in one row.
double computeBigM(const Instance& instance, const BuildOptions& options);

// sum_i m_i + 2 n (n - 1) over selectable rectangles.
int fullModelBinaryCount(const Instance& instance);
// sum_{i in G} m_i + 2 g (g - 1) + 4 g (n - g).
int restrictedModelBinaryCount(const Instance& instance,
                               std::span<const RectId> freeIds);

// The complete model; applies the symmetry-breaking and W + H toggles of
// `options`.
PlacementModel buildFullModel(const Instance& instance,
                              const BuildOptions& options);

// Model in which only `freeIds` move; everything else is frozen at `base`.
// Pairs of a free and a frozen rectangle keep their four relation binaries.
PlacementModel buildPartialModel(const Instance& instance,
                                 const BuildOptions& options,
                                 const Placement& base,
                                 std::span<const RectId> freeIds);

// Removes the rotated variants of the largest rectangle K and confines K's
// centroid to the quadrant nearest the origin. Rotation is only fixed when
// every variant list is closed under transposition. Throws ContractError on
// instances with symmetry groups or blockages.
void addSymmetryBreaking(PlacementModel& pm, const Instance& instance);

// Adds W + H <= P. The caller is expected to have built with M = P + a_M.
void addHalfPerimeterBound(PlacementModel& pm, double bound);

// Rectangle with the largest variant area; ties to the lowest id.
RectId largestRectangle(const Instance& instance);

// 1..4 for left of / below / right of / above: the relation whose
// separation inequality is least violated; ties go to the smaller index.
int leastViolatedRelation(const RectGeometry& i, const RectGeometry& j,
                          double distance);

// Hints every model column from `placement`, which need not be feasible.
void warmStartFromPlacement(PlacementModel& pm, const Instance& instance,
                            const Placement& placement);

// Fixes every binary: chosen variants, least-violated relations, and the
// aspect orientation of `placement`.
std::vector<std::pair<VarRef, double>> binaryFixings(
    const PlacementModel& pm, const Instance& instance,
    const Placement& placement);

// Decodes a solver result. Throws ExtractionError when no selection binary
// of a rectangle is within 1e-4 of one.
Placement extractPlacement(const Instance& instance, const PlacementModel& pm,
                           const SolveResult& result);

}  // namespace amsplace
