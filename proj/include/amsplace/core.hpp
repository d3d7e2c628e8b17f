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

// Domain model of the analog placement problem: rectangles with size
// variants, weighted nets, pairwise minimum distances, vertical symmetry
// groups, blockage areas and aspect-ratio bounds. All lengths are in µm.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace amsplace {

using RectId = int;

// Feasibility tolerance on lengths.
inline constexpr double kGeomTolerance = 1e-6;
// Relative tolerance for comparing criterion values.
inline constexpr double kCriterionRelTolerance = 1e-9;

struct Variant {
  double width = 0.0;
  double height = 0.0;

  bool operator==(const Variant&) const = default;
};

struct Rectangle {
  RectId id = 0;
  std::vector<Variant> variants;
  // False for blockage dummies, which sit at a fixed position.
  bool selectable = true;

  bool operator==(const Rectangle&) const = default;
};

struct Net {
  std::vector<RectId> members;
  double cost = 1.0;

  bool operator==(const Net&) const = default;
};

// Minimum allowed distance a_{i,j} between two rectangles. Symmetric; a
// negative value lets pockets merge.
class DistanceRule {
 public:
  DistanceRule() = default;
  explicit DistanceRule(double default_distance)
      : default_(default_distance) {}

  double defaultDistance() const { return default_; }
  void setDefaultDistance(double d) { default_ = d; }

  double operator()(RectId i, RectId j) const;
  void setOverride(RectId i, RectId j, double distance);

  // Overrides keyed by (min id, max id).
  const std::map<std::pair<RectId, RectId>, double>& overrides() const {
    return overrides_;
  }

  // a_M: the largest distance over all pairs among `ids`.
  double maxDistance(const std::vector<RectId>& ids) const;

  bool operator==(const DistanceRule&) const = default;

 private:
  double default_ = 0.0;
  std::map<std::pair<RectId, RectId>, double> overrides_;
};

// Rectangles sharing one vertical symmetry axis x_G.
struct SymmetryGroup {
  std::vector<std::pair<RectId, RectId>> pairs;
  std::vector<RectId> selfSymmetric;

  std::vector<RectId> members() const;
  bool operator==(const SymmetryGroup&) const = default;
};

// Fixed canvas region that the listed rectangles must keep clear of. The
// area is mirrored by a non-selectable dummy rectangle `rectangleId`.
struct BlockageArea {
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;
  std::vector<RectId> blockedIds;
  RectId rectangleId = -1;

  bool operator==(const BlockageArea&) const = default;
};

struct AspectRatioBounds {
  double lower = 0.0;
  double upper = 1.0;

  bool hasUpper() const { return upper < 1.0; }
  bool operator==(const AspectRatioBounds&) const = default;
};

struct Instance {
  std::string name;
  std::vector<Rectangle> rectangles;
  std::vector<Net> nets;
  DistanceRule distances;
  std::vector<SymmetryGroup> symmetryGroups;
  std::vector<BlockageArea> blockages;
  AspectRatioBounds aspect;
  // Generator configuration as JSON text; empty for hand-made instances.
  std::string genspec;

  bool operator==(const Instance&) const = default;

  std::vector<RectId> selectableIds() const;
  int selectableCount() const;
  double totalNetCost() const;

  // Index of the symmetry group containing `id`, if any.
  std::optional<int> groupOf(RectId id) const;
  // Partner of `id` in its symmetry pair, if any.
  std::optional<RectId> symmetryPartner(RectId id) const;
  bool isBlockedBy(RectId id, const BlockageArea& blockage) const;
};

// Appends a blockage together with its dummy rectangle.
void addBlockage(Instance& instance, BlockageArea blockage);

// Throws InputError / ReferenceError when an instance breaks its
// invariants (ids, variant sizes, nets, groups, blockages, aspect bounds).
void checkInstance(const Instance& instance);

struct PlacedRect {
  double x = 0.0;
  double y = 0.0;
  int variant = 0;

  bool operator==(const PlacedRect&) const = default;
};

struct Placement {
  std::vector<PlacedRect> rects;
  double width = 0.0;   // W
  double height = 0.0;  // H
  std::vector<double> axes;  // x_G per symmetry group

  bool operator==(const Placement&) const = default;
};

struct RectGeometry {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double centerX() const { return x + w / 2.0; }
  double centerY() const { return y + h / 2.0; }
};

RectGeometry geometryOf(const Instance& instance, const Placement& placement,
                        RectId id);

struct CriterionWeights {
  double area = 1.0;          // c_A
  double connectivity = 1.0;  // c_C

  bool operator==(const CriterionWeights&) const = default;
};

struct CriterionBreakdown {
  double areaTerm = 0.0;      // L_A = W + H
  double connectivity = 0.0;  // L_C = HPWL
  double value = 0.0;         // weighted criterion
};

// Weighted half-perimeter wirelength over net member centroids.
double hpwl(const Instance& instance, const Placement& placement);

CriterionBreakdown evaluate(const Instance& instance,
                            const Placement& placement,
                            const CriterionWeights& weights);

// c_A (W + H) + c_C / sum(c_e) * HPWL; the connectivity term is zero for an
// instance without nets.
double criterion(const Instance& instance, const Placement& placement,
                 const CriterionWeights& weights);

enum class ViolationKind { kOverlap, kBlockage, kSymmetry, kAspectRatio,
                           kBounds, kVariant };

const char* toString(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<RectId> ids;
  double magnitude = 0.0;
};

std::vector<Violation> validate(const Instance& instance,
                                const Placement& placement,
                                double tolerance = kGeomTolerance);

// Largest deficit of the four separation inequalities between two placed
// rectangles; <= 0 when they are separated by at least `distance`.
double separationDeficit(const RectGeometry& a, const RectGeometry& b,
                         double distance);

// Chebyshev-style distance from a point to the farthest edge of a rectangle.
double proximity(double px, double py, const RectGeometry& rect);

}  // namespace amsplace
