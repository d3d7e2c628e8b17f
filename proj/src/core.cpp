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

#include "amsplace/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "amsplace/errors.hpp"

namespace amsplace {

namespace {

std::pair<RectId, RectId> orderedPair(RectId i, RectId j) {
  return i < j ? std::make_pair(i, j) : std::make_pair(j, i);
}

bool validId(const Instance& instance, RectId id) {
  return id >= 0 && id < static_cast<RectId>(instance.rectangles.size());
}

void requireSelectable(const Instance& instance, RectId id,
                       const std::string& where) {
  if (!validId(instance, id)) {
    throw ReferenceError(where + ": unknown rectangle id " +
                         std::to_string(id));
  }
  if (!instance.rectangles[id].selectable) {
    throw ReferenceError(where + ": rectangle " + std::to_string(id) +
                         " is a blockage dummy");
  }
}

}  // namespace

double DistanceRule::operator()(RectId i, RectId j) const {
  auto it = overrides_.find(orderedPair(i, j));
  return it == overrides_.end() ? default_ : it->second;
}

void DistanceRule::setOverride(RectId i, RectId j, double distance) {
  overrides_[orderedPair(i, j)] = distance;
}

double DistanceRule::maxDistance(const std::vector<RectId>& ids) const {
  const std::set<RectId> members(ids.begin(), ids.end());
  const std::size_t n = members.size();
  if (n < 2) return 0.0;
  const std::size_t pairs = n * (n - 1) / 2;
  std::size_t overridden = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [key, value] : overrides_) {
    if (members.count(key.first) && members.count(key.second)) {
      ++overridden;
      best = std::max(best, value);
    }
  }
  if (overridden < pairs) best = std::max(best, default_);
  return best;
}

std::vector<RectId> SymmetryGroup::members() const {
  std::vector<RectId> out;
  for (const auto& [i, j] : pairs) {
    out.push_back(i);
    out.push_back(j);
  }
  out.insert(out.end(), selfSymmetric.begin(), selfSymmetric.end());
  return out;
}

std::vector<RectId> Instance::selectableIds() const {
  std::vector<RectId> ids;
  for (const auto& r : rectangles) {
    if (r.selectable) ids.push_back(r.id);
  }
  return ids;
}

int Instance::selectableCount() const {
  return static_cast<int>(std::count_if(
      rectangles.begin(), rectangles.end(),
      [](const Rectangle& r) { return r.selectable; }));
}

double Instance::totalNetCost() const {
  double total = 0.0;
  for (const auto& net : nets) total += net.cost;
  return total;
}

std::optional<int> Instance::groupOf(RectId id) const {
  for (std::size_t g = 0; g < symmetryGroups.size(); ++g) {
    const auto members = symmetryGroups[g].members();
    if (std::find(members.begin(), members.end(), id) != members.end()) {
      return static_cast<int>(g);
    }
  }
  return std::nullopt;
}

std::optional<RectId> Instance::symmetryPartner(RectId id) const {
  for (const auto& group : symmetryGroups) {
    for (const auto& [i, j] : group.pairs) {
      if (i == id) return j;
      if (j == id) return i;
    }
  }
  return std::nullopt;
}

bool Instance::isBlockedBy(RectId id, const BlockageArea& blockage) const {
  return std::find(blockage.blockedIds.begin(), blockage.blockedIds.end(),
                   id) != blockage.blockedIds.end();
}

void addBlockage(Instance& instance, BlockageArea blockage) {
  Rectangle dummy;
  dummy.id = static_cast<RectId>(instance.rectangles.size());
  dummy.selectable = false;
  dummy.variants.push_back({blockage.width, blockage.height});
  blockage.rectangleId = dummy.id;
  instance.rectangles.push_back(std::move(dummy));
  instance.blockages.push_back(std::move(blockage));
}

void checkInstance(const Instance& instance) {
  const auto& rects = instance.rectangles;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    const auto& r = rects[i];
    const std::string where = "rectangles[" + std::to_string(i) + "]";
    if (r.id != static_cast<RectId>(i)) {
      throw InputError(where + ": ids must be contiguous from 0, got " +
                       std::to_string(r.id));
    }
    if (r.variants.empty()) throw InputError(where + ": no variants");
    for (const auto& v : r.variants) {
      const bool finite = std::isfinite(v.width) && std::isfinite(v.height);
      const bool positive = r.selectable ? (v.width > 0 && v.height > 0)
                                         : (v.width >= 0 && v.height >= 0);
      if (!finite || !positive) {
        throw InputError(where + ": variant sizes must be positive");
      }
    }
  }

  std::size_t dummies = 0;
  for (const auto& r : rects) dummies += r.selectable ? 0 : 1;
  if (dummies != instance.blockages.size()) {
    throw InputError("blockages: " + std::to_string(instance.blockages.size()) +
                     " areas but " + std::to_string(dummies) +
                     " non-selectable rectangles");
  }
  std::set<RectId> dummyIds;
  for (std::size_t b = 0; b < instance.blockages.size(); ++b) {
    const auto& area = instance.blockages[b];
    const std::string where = "blockages[" + std::to_string(b) + "]";
    if (!validId(instance, area.rectangleId) ||
        rects[area.rectangleId].selectable ||
        !dummyIds.insert(area.rectangleId).second) {
      throw ReferenceError(where + ": bad dummy rectangle id " +
                           std::to_string(area.rectangleId));
    }
    const auto& v = rects[area.rectangleId].variants;
    if (v.size() != 1 || v[0].width != area.width ||
        v[0].height != area.height) {
      throw InputError(where + ": dummy rectangle size differs from area");
    }
    if (area.width < 0 || area.height < 0 || area.x < 0 || area.y < 0) {
      throw InputError(where + ": negative geometry");
    }
    for (RectId id : area.blockedIds) {
      requireSelectable(instance, id, where + ".blocked");
    }
  }

  for (std::size_t e = 0; e < instance.nets.size(); ++e) {
    const auto& net = instance.nets[e];
    const std::string where = "nets[" + std::to_string(e) + "]";
    if (net.members.empty()) throw InputError(where + ": no members");
    if (!(net.cost >= 0) || !std::isfinite(net.cost)) {
      throw InputError(where + ": cost must be non-negative");
    }
    for (RectId id : net.members) requireSelectable(instance, id, where);
  }

  for (const auto& [key, value] : instance.distances.overrides()) {
    if (!validId(instance, key.first) || !validId(instance, key.second)) {
      throw ReferenceError("distance.overrides: unknown rectangle id");
    }
    if (!std::isfinite(value)) {
      throw InputError("distance.overrides: non-finite distance");
    }
  }

  std::set<RectId> grouped;
  for (std::size_t g = 0; g < instance.symmetryGroups.size(); ++g) {
    const auto& group = instance.symmetryGroups[g];
    const std::string where = "symmetry[" + std::to_string(g) + "]";
    for (RectId id : group.members()) {
      requireSelectable(instance, id, where);
      if (!grouped.insert(id).second) {
        throw InputError(where + ": rectangle " + std::to_string(id) +
                         " appears in more than one group slot");
      }
    }
    for (const auto& [i, j] : group.pairs) {
      if (rects[i].variants != rects[j].variants) {
        throw InputError(where + ": pair (" + std::to_string(i) + ", " +
                         std::to_string(j) + ") has different variant lists");
      }
    }
  }

  const auto& ar = instance.aspect;
  if (!(ar.lower >= 0 && ar.lower <= ar.upper && ar.upper <= 1)) {
    throw InputError("aspect: need 0 <= l <= u <= 1");
  }
}

RectGeometry geometryOf(const Instance& instance, const Placement& placement,
                        RectId id) {
  if (!validId(instance, id) ||
      id >= static_cast<RectId>(placement.rects.size())) {
    throw InputError("placement has no rectangle " + std::to_string(id));
  }
  const auto& placed = placement.rects[id];
  const auto& variants = instance.rectangles[id].variants;
  if (placed.variant < 0 ||
      placed.variant >= static_cast<int>(variants.size())) {
    throw InputError("rectangle " + std::to_string(id) +
                     " uses unknown variant " + std::to_string(placed.variant));
  }
  const auto& v = variants[placed.variant];
  return {placed.x, placed.y, v.width, v.height};
}

double hpwl(const Instance& instance, const Placement& placement) {
  double total = 0.0;
  for (const auto& net : instance.nets) {
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = xmin;
    double ymax = -xmin;
    for (RectId id : net.members) {
      const auto g = geometryOf(instance, placement, id);
      xmin = std::min(xmin, g.centerX());
      xmax = std::max(xmax, g.centerX());
      ymin = std::min(ymin, g.centerY());
      ymax = std::max(ymax, g.centerY());
    }
    if (!net.members.empty()) {
      total += net.cost * ((xmax - xmin) + (ymax - ymin));
    }
  }
  return total;
}

CriterionBreakdown evaluate(const Instance& instance,
                            const Placement& placement,
                            const CriterionWeights& weights) {
  CriterionBreakdown out;
  out.areaTerm = placement.width + placement.height;
  out.connectivity = hpwl(instance, placement);
  out.value = weights.area * out.areaTerm;
  const double netCost = instance.totalNetCost();
  if (netCost > 0) out.value += weights.connectivity / netCost * out.connectivity;
  return out;
}

double criterion(const Instance& instance, const Placement& placement,
                 const CriterionWeights& weights) {
  return evaluate(instance, placement, weights).value;
}

const char* toString(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kOverlap: return "overlap";
    case ViolationKind::kBlockage: return "blockage";
    case ViolationKind::kSymmetry: return "symmetry";
    case ViolationKind::kAspectRatio: return "aspect-ratio";
    case ViolationKind::kBounds: return "bounds";
    case ViolationKind::kVariant: return "variant";
  }
  return "unknown";
}

double separationDeficit(const RectGeometry& a, const RectGeometry& b,
                         double distance) {
  const double leftOf = a.x + a.w + distance - b.x;
  const double below = a.y + a.h + distance - b.y;
  const double rightOf = b.x + b.w + distance - a.x;
  const double above = b.y + b.h + distance - a.y;
  return std::min({leftOf, below, rightOf, above});
}

std::vector<Violation> validate(const Instance& instance,
                                const Placement& placement, double tolerance) {
  const auto n = static_cast<RectId>(instance.rectangles.size());
  if (static_cast<RectId>(placement.rects.size()) != n) {
    throw InputError("placement covers " +
                     std::to_string(placement.rects.size()) +
                     " rectangles, instance has " + std::to_string(n));
  }
  if (placement.axes.size() != instance.symmetryGroups.size()) {
    throw InputError("placement axis count differs from symmetry groups");
  }

  std::vector<Violation> out;
  auto report = [&](ViolationKind kind, std::vector<RectId> ids, double m) {
    if (m > tolerance) out.push_back({kind, std::move(ids), m});
  };

  std::vector<RectGeometry> geom(n);
  std::vector<bool> usable(n, true);
  for (RectId i = 0; i < n; ++i) {
    const int k = placement.rects[i].variant;
    const int m = static_cast<int>(instance.rectangles[i].variants.size());
    if (k < 0 || k >= m) {
      out.push_back({ViolationKind::kVariant, {i}, 1.0});
      usable[i] = false;
      continue;
    }
    geom[i] = geometryOf(instance, placement, i);
  }

  const double W = placement.width;
  const double H = placement.height;
  for (RectId i = 0; i < n; ++i) {
    if (!usable[i] || !instance.rectangles[i].selectable) continue;
    const auto& g = geom[i];
    report(ViolationKind::kBounds, {i},
           std::max({-g.x, -g.y, g.x + g.w - W, g.y + g.h - H}));
  }

  for (const auto& area : instance.blockages) {
    const RectId d = area.rectangleId;
    if (usable[d]) {
      report(ViolationKind::kBlockage, {d},
             std::max(std::abs(geom[d].x - area.x),
                      std::abs(geom[d].y - area.y)));
    }
    const RectGeometry fixed{area.x, area.y, area.width, area.height};
    for (RectId i : area.blockedIds) {
      if (!usable[i]) continue;
      report(ViolationKind::kBlockage, {i, d},
             separationDeficit(geom[i], fixed, 0.0));
    }
  }

  const auto ids = instance.selectableIds();
  for (std::size_t a = 0; a < ids.size(); ++a) {
    for (std::size_t b = a + 1; b < ids.size(); ++b) {
      const RectId i = ids[a];
      const RectId j = ids[b];
      if (!usable[i] || !usable[j]) continue;
      report(ViolationKind::kOverlap, {i, j},
             separationDeficit(geom[i], geom[j], instance.distances(i, j)));
    }
  }

  for (std::size_t gi = 0; gi < instance.symmetryGroups.size(); ++gi) {
    const auto& group = instance.symmetryGroups[gi];
    const double axis = placement.axes[gi];
    for (const auto& [i, j] : group.pairs) {
      if (!usable[i] || !usable[j]) continue;
      const auto& p = geom[i];
      const auto& q = geom[j];
      report(ViolationKind::kSymmetry, {i, j},
             std::max({std::abs(p.w - q.w), std::abs(p.h - q.h),
                       std::abs(p.y - q.y),
                       std::abs(p.x + q.x + p.w - 2.0 * axis)}));
    }
    for (RectId i : group.selfSymmetric) {
      if (!usable[i]) continue;
      report(ViolationKind::kSymmetry, {i},
             std::abs(2.0 * geom[i].x + geom[i].w - 2.0 * axis));
    }
  }

  const auto& ar = instance.aspect;
  const double lo = std::min(W, H);
  const double hi = std::max(W, H);
  report(ViolationKind::kAspectRatio, {}, ar.lower * hi - lo);
  if (ar.hasUpper()) report(ViolationKind::kAspectRatio, {}, lo - ar.upper * hi);
  return out;
}

double proximity(double px, double py, const RectGeometry& rect) {
  return std::max({std::abs(rect.x - px), std::abs(rect.x + rect.w - px),
                   std::abs(rect.y - py), std::abs(rect.y + rect.h - py)});
}

}  // namespace amsplace
