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

#include "amsplace/model_builder.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "amsplace/errors.hpp"

namespace amsplace {

namespace {

std::string tag(const char* base, RectId i) {
  return std::string(base) + "_" + std::to_string(i);
}

std::string tag(const char* base, RectId i, long long j) {
  return tag(base, i) + "_" + std::to_string(j);
}

double maxDim(const Rectangle& r) {
  double best = 0.0;
  for (const auto& v : r.variants) best = std::max({best, v.width, v.height});
  return best;
}

double blockageExtent(const Instance& instance) {
  double extent = 0.0;
  for (const auto& b : instance.blockages) {
    extent = std::max({extent, b.x + b.width, b.y + b.height});
  }
  return extent;
}

// Geometry of rectangle i as linear expressions: columns for free
// rectangles, constants for frozen ones.
struct GeomExpr {
  LinExpr x, y, w, h;
};

class Builder {
 public:
  Builder(const Instance& instance, const BuildOptions& options,
          const Placement* base, std::span<const RectId> freeIds)
      : inst_(instance), base_(base) {
    pm_.options = options;
    if (base != nullptr) pm_.base = *base;
    const std::size_t total = instance.rectangles.size();
    free_.assign(total, base == nullptr);
    if (base != nullptr) {
      if (base->rects.size() != total) {
        throw ContractError("base placement does not match the instance");
      }
      for (RectId i : freeIds) {
        if (i < 0 || i >= static_cast<RectId>(total) ||
            !instance.rectangles[i].selectable) {
          throw ContractError("free set holds a non-selectable id " +
                              std::to_string(i));
        }
        free_[i] = true;
      }
    }
    for (std::size_t i = 0; i < total; ++i) {
      if (!instance.rectangles[i].selectable) free_[i] = false;
    }
  }

  PlacementModel build() {
    checkPairs();
    auto& m = pm_.model;
    auto& v = pm_.vars;
    v.bigM = computeBigM(inst_, pm_.options);

    v.width = m.addContinuous("W");
    v.height = m.addContinuous("H");
    addRectangles();
    addPairs();
    addBlockages();
    addAspect();
    addSymmetry();
    addObjective();
    return std::move(pm_);
  }

 private:
  void checkPairs() const {
    for (const auto& g : inst_.symmetryGroups) {
      for (const auto& [i, j] : g.pairs) {
        if (inst_.rectangles[i].variants != inst_.rectangles[j].variants) {
          throw ModelError("symmetric pair (" + std::to_string(i) + ", " +
                           std::to_string(j) + ") has unequal variant lists");
        }
      }
    }
  }

  GeomExpr geom(RectId i) const {
    GeomExpr e;
    const auto& rv = pm_.vars.rects[i];
    if (rv.free) {
      e.x.add(1.0, rv.x);
      e.y.add(1.0, rv.y);
      e.w.add(1.0, rv.w);
      e.h.add(1.0, rv.h);
    } else {
      const RectGeometry g = fixedGeometry(i);
      e.x.add(g.x);
      e.y.add(g.y);
      e.w.add(g.w);
      e.h.add(g.h);
    }
    return e;
  }

  RectGeometry fixedGeometry(RectId i) const {
    if (!inst_.rectangles[i].selectable) {
      for (const auto& b : inst_.blockages) {
        if (b.rectangleId == i) return {b.x, b.y, b.width, b.height};
      }
    }
    return geometryOf(inst_, *base_, i);
  }

  void addRectangles() {
    auto& m = pm_.model;
    auto& v = pm_.vars;
    v.rects.resize(inst_.rectangles.size());
    double minW = 0.0;
    double minH = 0.0;
    for (const auto& rect : inst_.rectangles) {
      const RectId i = rect.id;
      auto& rv = v.rects[i];
      rv.free = free_[i];
      if (!rect.selectable) continue;
      if (!rv.free) {
        const RectGeometry g = fixedGeometry(i);
        minW = std::max(minW, g.x + g.w);
        minH = std::max(minH, g.y + g.h);
        continue;
      }
      double wlo = kInfinity, whi = 0.0, hlo = kInfinity, hhi = 0.0;
      for (const auto& var : rect.variants) {
        wlo = std::min(wlo, var.width);
        whi = std::max(whi, var.width);
        hlo = std::min(hlo, var.height);
        hhi = std::max(hhi, var.height);
      }
      rv.x = m.addContinuous(tag("x", i));
      rv.y = m.addContinuous(tag("y", i));
      rv.w = m.addContinuous(tag("w", i), wlo, whi);
      rv.h = m.addContinuous(tag("h", i), hlo, hhi);
      LinExpr pick, wsum, hsum;
      wsum.add(-1.0, rv.w);
      hsum.add(-1.0, rv.h);
      for (std::size_t k = 0; k < rect.variants.size(); ++k) {
        const VarRef s = m.addBinary(tag("s", i, static_cast<long long>(k)));
        rv.select.push_back(s);
        pick.add(1.0, s);
        wsum.add(rect.variants[k].width, s);
        hsum.add(rect.variants[k].height, s);
      }
      v.placementBinaries += static_cast<int>(rect.variants.size());
      m.addConstraint(pick, Sense::kEqual, 1.0, tag("pick", i));
      m.addConstraint(wsum, Sense::kEqual, 0.0, tag("wsel", i));
      m.addConstraint(hsum, Sense::kEqual, 0.0, tag("hsel", i));
      m.addConstraint(LinExpr().add(1.0, rv.x).add(1.0, rv.w).add(-1.0, v.width),
                      Sense::kLessEqual, 0.0, tag("inW", i));
      m.addConstraint(
          LinExpr().add(1.0, rv.y).add(1.0, rv.h).add(-1.0, v.height),
          Sense::kLessEqual, 0.0, tag("inH", i));
    }
    m.setBounds(v.width, minW, kInfinity);
    m.setBounds(v.height, minH, kInfinity);
  }

  // Four big-M separations of a and b with gap `a` plus the disjunction.
  RelationVars addSeparation(const GeomExpr& gi, const GeomExpr& gj,
                             double gap, const std::string& name) {
    auto& m = pm_.model;
    const double M = pm_.vars.bigM;
    RelationVars r;
    LinExpr any;
    for (int k = 0; k < 4; ++k) {
      r[k] = m.addBinary("r" + std::to_string(k + 1) + "_" + name);
      any.add(1.0, r[k]);
    }
    m.addConstraint(any, Sense::kGreaterEqual, 1.0, "or_" + name);
    // lhs + gap <= M (1 - r)  <=>  lhs + M r <= M - gap
    const auto row = [&](const LinExpr& lo, const LinExpr& size,
                         const LinExpr& hi, VarRef rk, int k) {
      LinExpr e;
      e.add(lo).add(size).add(hi, -1.0).add(M, rk);
      m.addConstraint(e, Sense::kLessEqual, M - gap,
                      "sep" + std::to_string(k) + "_" + name);
    };
    row(gi.x, gi.w, gj.x, r[0], 1);
    row(gi.y, gi.h, gj.y, r[1], 2);
    row(gj.x, gj.w, gi.x, r[2], 3);
    row(gj.y, gj.h, gi.y, r[3], 4);
    return r;
  }

  void addPairs() {
    const auto ids = inst_.selectableIds();
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = a + 1; b < ids.size(); ++b) {
        const RectId i = ids[a];
        const RectId j = ids[b];
        if (!free_[i] && !free_[j]) continue;
        const std::string name = std::to_string(i) + "_" + std::to_string(j);
        pm_.vars.addRelation(
            i, j, addSeparation(geom(i), geom(j), inst_.distances(i, j), name));
        pm_.vars.placementBinaries += 4;
      }
    }
  }

  void addBlockages() {
    for (std::size_t b = 0; b < inst_.blockages.size(); ++b) {
      const auto& area = inst_.blockages[b];
      GeomExpr fixed;
      fixed.x.add(area.x);
      fixed.y.add(area.y);
      fixed.w.add(area.width);
      fixed.h.add(area.height);
      for (RectId i : area.blockedIds) {
        if (!free_[i]) continue;
        const std::string name = "b" + std::to_string(b) + "_" + std::to_string(i);
        pm_.vars.addBlockageRelation(
            i, static_cast<int>(b), addSeparation(geom(i), fixed, 0.0, name));
        pm_.vars.blockageBinaries += 4;
      }
    }
  }

  void addAspect() {
    auto& m = pm_.model;
    auto& v = pm_.vars;
    const auto& ar = inst_.aspect;
    if (ar.lower > 0.0) {
      m.addConstraint(LinExpr().add(ar.lower, v.width).add(-1.0, v.height),
                      Sense::kLessEqual, 0.0, "aspect_lo_w");
      m.addConstraint(LinExpr().add(ar.lower, v.height).add(-1.0, v.width),
                      Sense::kLessEqual, 0.0, "aspect_lo_h");
    }
    if (ar.hasUpper()) {
      // r_R = 0: H <= u W (landscape); r_R = 1: W <= u H (portrait).
      const double M = v.bigM;
      v.aspect = m.addBinary("rR");
      m.addConstraint(
          LinExpr().add(1.0, v.height).add(-ar.upper, v.width).add(-M, v.aspect),
          Sense::kLessEqual, 0.0, "aspect_up_h");
      m.addConstraint(
          LinExpr().add(1.0, v.width).add(-ar.upper, v.height).add(M, v.aspect),
          Sense::kLessEqual, M, "aspect_up_w");
    }
  }

  void addSymmetry() {
    auto& m = pm_.model;
    auto& v = pm_.vars;
    v.axes.assign(inst_.symmetryGroups.size(), VarRef{});
    for (std::size_t g = 0; g < inst_.symmetryGroups.size(); ++g) {
      const auto& group = inst_.symmetryGroups[g];
      const auto members = group.members();
      if (std::none_of(members.begin(), members.end(),
                       [&](RectId i) { return free_[i]; })) {
        continue;
      }
      const VarRef axis = m.addContinuous("xG_" + std::to_string(g));
      v.axes[g] = axis;
      for (const auto& [i, j] : group.pairs) {
        const std::string name = std::to_string(i) + "_" + std::to_string(j);
        const GeomExpr gi = geom(i);
        const GeomExpr gj = geom(j);
        m.addConstraint(LinExpr().add(gi.w).add(gj.w, -1.0), Sense::kEqual, 0.0,
                        "symw_" + name);
        m.addConstraint(LinExpr().add(gi.h).add(gj.h, -1.0), Sense::kEqual, 0.0,
                        "symh_" + name);
        m.addConstraint(LinExpr().add(gi.y).add(gj.y, -1.0), Sense::kEqual, 0.0,
                        "symy_" + name);
        m.addConstraint(
            LinExpr().add(gi.x).add(gj.x).add(gi.w).add(-2.0, axis),
            Sense::kEqual, 0.0, "symx_" + name);
      }
      for (RectId i : group.selfSymmetric) {
        const GeomExpr gi = geom(i);
        m.addConstraint(LinExpr().add(gi.x, 2.0).add(gi.w).add(-2.0, axis),
                        Sense::kEqual, 0.0, tag("symself", i));
      }
    }
  }

  void addObjective() {
    auto& m = pm_.model;
    auto& v = pm_.vars;
    const auto& w = pm_.options.weights;
    LinExpr obj;
    obj.add(w.area, v.width).add(w.area, v.height);
    const double total = inst_.totalNetCost();
    const double scale = total > 0.0 ? w.connectivity / total : 0.0;
    v.nets.assign(inst_.nets.size(), NetVars{});
    for (std::size_t e = 0; e < inst_.nets.size(); ++e) {
      const auto& net = inst_.nets[e];
      if (net.members.empty()) continue;
      const bool anyFree = std::any_of(net.members.begin(), net.members.end(),
                                       [&](RectId i) { return free_[i]; });
      if (!anyFree) {
        double xlo = kInfinity, xhi = -kInfinity, ylo = kInfinity, yhi = -kInfinity;
        for (RectId i : net.members) {
          const RectGeometry g = fixedGeometry(i);
          xlo = std::min(xlo, g.centerX());
          xhi = std::max(xhi, g.centerX());
          ylo = std::min(ylo, g.centerY());
          yhi = std::max(yhi, g.centerY());
        }
        obj.add(scale * net.cost * ((xhi - xlo) + (yhi - ylo)));
        continue;
      }
      const std::string id = std::to_string(e);
      NetVars nv;
      nv.xMax = m.addContinuous("XM_" + id);
      nv.xMin = m.addContinuous("Xm_" + id);
      nv.yMax = m.addContinuous("YM_" + id);
      nv.yMin = m.addContinuous("Ym_" + id);
      for (RectId i : net.members) {
        const GeomExpr g = geom(i);
        LinExpr cx, cy;
        cx.add(g.x).add(g.w, 0.5);
        cy.add(g.y).add(g.h, 0.5);
        const std::string name = id + "_" + std::to_string(i);
        m.addConstraint(LinExpr().add(1.0, nv.xMax).add(cx, -1.0),
                        Sense::kGreaterEqual, 0.0, "netxM_" + name);
        m.addConstraint(LinExpr().add(1.0, nv.xMin).add(cx, -1.0),
                        Sense::kLessEqual, 0.0, "netxm_" + name);
        m.addConstraint(LinExpr().add(1.0, nv.yMax).add(cy, -1.0),
                        Sense::kGreaterEqual, 0.0, "netyM_" + name);
        m.addConstraint(LinExpr().add(1.0, nv.yMin).add(cy, -1.0),
                        Sense::kLessEqual, 0.0, "netym_" + name);
      }
      const double c = scale * net.cost;
      obj.add(c, nv.xMax).add(-c, nv.xMin).add(c, nv.yMax).add(-c, nv.yMin);
      v.nets[e] = nv;
    }
    m.setObjective(std::move(obj));
  }

  const Instance& inst_;
  const Placement* base_;
  std::vector<bool> free_;
  PlacementModel pm_;
};

RectGeometry blockageGeometry(const BlockageArea& b) {
  return {b.x, b.y, b.width, b.height};
}

// Least violated relation of a free rectangle against a fixed blockage,
// restricted to relations the rectangle can satisfy at x, y >= 0.
int blockageRelation(const RectGeometry& g, const RectGeometry& b) {
  const double viol[4] = {g.x + g.w - b.x, g.y + g.h - b.y, b.x + b.w - g.x,
                          b.y + b.h - g.y};
  const bool possible[4] = {b.x - g.w >= -kGeomTolerance,
                            b.y - g.h >= -kGeomTolerance, true, true};
  int best = 2;
  for (int k = 0; k < 4; ++k) {
    if (!possible[k]) continue;
    if (viol[k] < viol[best] || (viol[k] == viol[best] && k < best)) best = k;
  }
  return best + 1;
}

// Portrait placements take r_R = 1 when that branch is less violated.
double aspectOrientation(const Instance& instance, double W, double H) {
  const double u = instance.aspect.upper;
  return (W - u * H) < (H - u * W) ? 1.0 : 0.0;
}

}  // namespace

void VarMap::addRelation(RectId i, RectId j, RelationVars vars) {
  if (i > j) {
    std::swap(i, j);
    std::swap(vars[0], vars[2]);
    std::swap(vars[1], vars[3]);
  }
  pair_index_.emplace(key(i, j), static_cast<int>(pair_vars_.size()));
  pairs_.emplace_back(i, j);
  pair_vars_.push_back(vars);
}

const RelationVars* VarMap::relation(RectId i, RectId j) const {
  auto it = pair_index_.find(key(std::min(i, j), std::max(i, j)));
  return it == pair_index_.end() ? nullptr : &pair_vars_[it->second];
}

void VarMap::addBlockageRelation(RectId rect, int blockage, RelationVars vars) {
  blockage_index_.emplace(key(rect, blockage),
                          static_cast<int>(blockage_vars_.size()));
  blockage_pairs_.emplace_back(rect, blockage);
  blockage_vars_.push_back(vars);
}

const RelationVars* VarMap::blockageRelation(RectId rect, int blockage) const {
  auto it = blockage_index_.find(key(rect, blockage));
  return it == blockage_index_.end() ? nullptr : &blockage_vars_[it->second];
}

double computeBigM(const Instance& instance, const BuildOptions& options) {
  if (options.bigM) return *options.bigM;
  const auto ids = instance.selectableIds();
  const double aM = std::max(instance.distances.maxDistance(ids), 0.0);
  if (options.halfPerimeterBound) {
    return std::max(*options.halfPerimeterBound, blockageExtent(instance)) + aM;
  }
  double L = 0.0;
  for (RectId i : ids) L += maxDim(instance.rectangles[i]);
  if (!ids.empty()) L += static_cast<double>(ids.size() - 1) * aM;
  L += blockageExtent(instance);
  return L + aM;
}

int fullModelBinaryCount(const Instance& instance) {
  int count = 0;
  const auto ids = instance.selectableIds();
  for (RectId i : ids) {
    count += static_cast<int>(instance.rectangles[i].variants.size());
  }
  const int n = static_cast<int>(ids.size());
  return count + 2 * n * (n - 1);
}

int restrictedModelBinaryCount(const Instance& instance,
                               std::span<const RectId> freeIds) {
  const std::set<RectId> group(freeIds.begin(), freeIds.end());
  int count = 0;
  for (RectId i : group) {
    count += static_cast<int>(instance.rectangles[i].variants.size());
  }
  const int g = static_cast<int>(group.size());
  const int n = instance.selectableCount();
  return count + 2 * g * (g - 1) + 4 * g * (n - g);
}

PlacementModel buildFullModel(const Instance& instance,
                              const BuildOptions& options) {
  if (options.halfPerimeterBound && *options.halfPerimeterBound <= 0.0) {
    throw ContractError("half-perimeter bound must be positive");
  }
  PlacementModel pm = Builder(instance, options, nullptr, {}).build();
  if (pm.vars.placementBinaries != fullModelBinaryCount(instance)) {
    throw InternalError("full model binary count mismatch");
  }
  if (options.symmetryBreaking) addSymmetryBreaking(pm, instance);
  if (options.halfPerimeterBound) {
    addHalfPerimeterBound(pm, *options.halfPerimeterBound);
  }
  return pm;
}

PlacementModel buildPartialModel(const Instance& instance,
                                 const BuildOptions& options,
                                 const Placement& base,
                                 std::span<const RectId> freeIds) {
  PlacementModel pm = Builder(instance, options, &base, freeIds).build();
  if (pm.vars.placementBinaries !=
      restrictedModelBinaryCount(instance, freeIds)) {
    throw InternalError("restricted model binary count mismatch");
  }
  if (options.halfPerimeterBound) {
    addHalfPerimeterBound(pm, *options.halfPerimeterBound);
  }
  return pm;
}

RectId largestRectangle(const Instance& instance) {
  RectId best = -1;
  double bestArea = -1.0;
  for (RectId i : instance.selectableIds()) {
    double area = 0.0;
    for (const auto& v : instance.rectangles[i].variants) {
      area = std::max(area, v.width * v.height);
    }
    if (area > bestArea) {
      bestArea = area;
      best = i;
    }
  }
  return best;
}

void addSymmetryBreaking(PlacementModel& pm, const Instance& instance) {
  if (!instance.symmetryGroups.empty()) {
    throw ContractError("symmetry breaking needs an instance without symmetry groups");
  }
  if (!instance.blockages.empty()) {
    throw ContractError("symmetry breaking needs an instance without blockages");
  }
  const RectId K = largestRectangle(instance);
  if (K < 0) return;
  const auto& rv = pm.vars.rects[K];
  if (!rv.free) throw ContractError("symmetry breaking needs K to be free");

  const auto rotatedOf = [](const std::vector<Variant>& vs, std::size_t k) {
    for (std::size_t q = 0; q < k; ++q) {
      if (vs[q].width == vs[k].height && vs[q].height == vs[k].width &&
          vs[k].width != vs[k].height) {
        return true;
      }
    }
    return false;
  };
  // Transposing the whole layout maps solutions onto solutions only if every
  // variant list is closed under transposition.
  bool closed = true;
  for (RectId i : instance.selectableIds()) {
    const auto& vs = instance.rectangles[i].variants;
    for (const auto& v : vs) {
      const Variant t{v.height, v.width};
      if (std::find(vs.begin(), vs.end(), t) == vs.end()) closed = false;
    }
  }
  if (closed) {
    const auto& vs = instance.rectangles[K].variants;
    for (std::size_t k = 0; k < vs.size(); ++k) {
      if (rotatedOf(vs, k)) pm.model.setBounds(rv.select[k], 0.0, 0.0);
    }
  }
  auto& m = pm.model;
  m.addConstraint(
      LinExpr().add(2.0, rv.x).add(1.0, rv.w).add(-1.0, pm.vars.width),
      Sense::kLessEqual, 0.0, "sb_quadrant_x");
  m.addConstraint(
      LinExpr().add(2.0, rv.y).add(1.0, rv.h).add(-1.0, pm.vars.height),
      Sense::kLessEqual, 0.0, "sb_quadrant_y");
}

void addHalfPerimeterBound(PlacementModel& pm, double bound) {
  if (!(bound > 0.0)) throw ContractError("half-perimeter bound must be positive");
  pm.model.addConstraint(
      LinExpr().add(1.0, pm.vars.width).add(1.0, pm.vars.height),
      Sense::kLessEqual, bound, "half_perimeter");
}

int leastViolatedRelation(const RectGeometry& i, const RectGeometry& j,
                          double distance) {
  const double viol[4] = {i.x + i.w + distance - j.x, i.y + i.h + distance - j.y,
                          j.x + j.w + distance - i.x, j.y + j.h + distance - i.y};
  int best = 0;
  for (int k = 1; k < 4; ++k) {
    if (viol[k] < viol[best]) best = k;
  }
  return best + 1;
}

namespace {

void setRelationHint(MilpModel& m, const RelationVars& r, int k) {
  for (int q = 0; q < 4; ++q) m.setWarmStart(r[q], q + 1 == k ? 1.0 : 0.0);
}

}  // namespace

void warmStartFromPlacement(PlacementModel& pm, const Instance& instance,
                            const Placement& placement) {
  auto& m = pm.model;
  const auto& v = pm.vars;
  if (placement.rects.size() != instance.rectangles.size()) {
    throw InputError("placement does not match the instance");
  }
  std::vector<RectGeometry> geom(instance.rectangles.size());
  for (const auto& rect : instance.rectangles) {
    geom[rect.id] = geometryOf(instance, placement, rect.id);
  }
  for (const auto& b : instance.blockages) {
    geom[b.rectangleId] = blockageGeometry(b);
  }

  double W = placement.width;
  double H = placement.height;
  for (RectId i : instance.selectableIds()) {
    W = std::max(W, geom[i].x + geom[i].w);
    H = std::max(H, geom[i].y + geom[i].h);
  }
  m.setWarmStart(v.width, W);
  m.setWarmStart(v.height, H);

  for (RectId i : instance.selectableIds()) {
    const auto& rv = v.rects[i];
    if (!rv.free) continue;
    m.setWarmStart(rv.x, std::max(0.0, geom[i].x));
    m.setWarmStart(rv.y, std::max(0.0, geom[i].y));
    m.setWarmStart(rv.w, geom[i].w);
    m.setWarmStart(rv.h, geom[i].h);
    for (std::size_t k = 0; k < rv.select.size(); ++k) {
      m.setWarmStart(rv.select[k],
                     static_cast<int>(k) == placement.rects[i].variant ? 1.0 : 0.0);
    }
  }

  for (const auto& [i, j] : v.relationPairs()) {
    setRelationHint(m, *v.relation(i, j),
                    leastViolatedRelation(geom[i], geom[j], instance.distances(i, j)));
  }
  for (const auto& [i, b] : v.blockagePairs()) {
    setRelationHint(m, *v.blockageRelation(i, b),
                    blockageRelation(geom[i], blockageGeometry(instance.blockages[b])));
  }

  for (std::size_t e = 0; e < instance.nets.size(); ++e) {
    const auto& nv = v.nets[e];
    if (!nv.xMax) continue;
    double xlo = kInfinity, xhi = -kInfinity, ylo = kInfinity, yhi = -kInfinity;
    for (RectId i : instance.nets[e].members) {
      xlo = std::min(xlo, geom[i].centerX());
      xhi = std::max(xhi, geom[i].centerX());
      ylo = std::min(ylo, geom[i].centerY());
      yhi = std::max(yhi, geom[i].centerY());
    }
    m.setWarmStart(nv.xMax, xhi);
    m.setWarmStart(nv.xMin, xlo);
    m.setWarmStart(nv.yMax, yhi);
    m.setWarmStart(nv.yMin, ylo);
  }

  for (std::size_t g = 0; g < v.axes.size(); ++g) {
    if (!v.axes[g]) continue;
    double axis = 0.0;
    if (g < placement.axes.size()) {
      axis = placement.axes[g];
    } else {
      const auto members = instance.symmetryGroups[g].members();
      for (RectId i : members) axis += geom[i].centerX();
      axis /= static_cast<double>(members.size());
    }
    m.setWarmStart(v.axes[g], std::max(0.0, axis));
  }

  if (v.aspect) m.setWarmStart(v.aspect, aspectOrientation(instance, W, H));
}

std::vector<std::pair<VarRef, double>> binaryFixings(
    const PlacementModel& pm, const Instance& instance,
    const Placement& placement) {
  const auto& v = pm.vars;
  std::vector<std::pair<VarRef, double>> out;
  std::vector<RectGeometry> geom(instance.rectangles.size());
  for (const auto& rect : instance.rectangles) {
    geom[rect.id] = geometryOf(instance, placement, rect.id);
  }
  for (RectId i : instance.selectableIds()) {
    const auto& rv = v.rects[i];
    for (std::size_t k = 0; k < rv.select.size(); ++k) {
      out.emplace_back(rv.select[k],
                       static_cast<int>(k) == placement.rects[i].variant ? 1.0 : 0.0);
    }
  }
  const auto fix = [&](const RelationVars& r, int k) {
    for (int q = 0; q < 4; ++q) out.emplace_back(r[q], q + 1 == k ? 1.0 : 0.0);
  };
  for (const auto& [i, j] : v.relationPairs()) {
    fix(*v.relation(i, j),
        leastViolatedRelation(geom[i], geom[j], instance.distances(i, j)));
  }
  for (const auto& [i, b] : v.blockagePairs()) {
    fix(*v.blockageRelation(i, b),
        blockageRelation(geom[i], blockageGeometry(instance.blockages[b])));
  }
  if (v.aspect) {
    double W = placement.width;
    double H = placement.height;
    for (RectId i : instance.selectableIds()) {
      W = std::max(W, geom[i].x + geom[i].w);
      H = std::max(H, geom[i].y + geom[i].h);
    }
    out.emplace_back(v.aspect, aspectOrientation(instance, W, H));
  }
  return out;
}

Placement extractPlacement(const Instance& instance, const PlacementModel& pm,
                           const SolveResult& result) {
  if (!result.hasSolution()) {
    throw ExtractionError(std::string("no solution to extract (status ") +
                          toString(result.status) + ")");
  }
  if (result.values.size() != pm.model.variables().size()) {
    throw ExtractionError("solution size does not match the model");
  }
  const auto& v = pm.vars;
  Placement out;
  out.rects.resize(instance.rectangles.size());
  for (const auto& rect : instance.rectangles) {
    const RectId i = rect.id;
    const auto& rv = v.rects[i];
    if (!rect.selectable) {
      for (const auto& b : instance.blockages) {
        if (b.rectangleId == i) out.rects[i] = PlacedRect{b.x, b.y, 0};
      }
      continue;
    }
    if (!rv.free) {
      out.rects[i] = pm.base->rects[i];
      continue;
    }
    int chosen = -1;
    for (std::size_t k = 0; k < rv.select.size(); ++k) {
      if (std::abs(result.value(rv.select[k]) - 1.0) <= 1e-4) {
        chosen = static_cast<int>(k);
        break;
      }
    }
    if (chosen < 0) {
      throw ExtractionError("rectangle " + std::to_string(i) +
                            " has no selected variant");
    }
    out.rects[i] = PlacedRect{std::max(0.0, result.value(rv.x)),
                              std::max(0.0, result.value(rv.y)), chosen};
  }
  out.width = result.value(v.width);
  out.height = result.value(v.height);
  out.axes.assign(instance.symmetryGroups.size(), 0.0);
  for (std::size_t g = 0; g < v.axes.size(); ++g) {
    if (v.axes[g]) {
      out.axes[g] = result.value(v.axes[g]);
    } else if (pm.base && g < pm.base->axes.size()) {
      out.axes[g] = pm.base->axes[g];
    }
  }
  return out;
}

}  // namespace amsplace
