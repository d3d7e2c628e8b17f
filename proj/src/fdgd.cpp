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

#include "amsplace/fdgd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "amsplace/errors.hpp"

namespace amsplace {

namespace {

// Rigid body: one free rectangle or a whole symmetry group.
struct Entity {
  std::vector<RectId> members;
  std::vector<double> offX, offY;  // member centroid relative to the body
  double halfW = 0.0;
  double halfH = 0.0;
};

double spacing(const Instance& instance) {
  return std::max(instance.distances.maxDistance(instance.selectableIds()), 0.0);
}

std::vector<Entity> buildEntities(const Instance& instance) {
  const double gap = spacing(instance);
  std::vector<Entity> out;
  std::vector<bool> grouped(instance.rectangles.size(), false);
  for (const auto& group : instance.symmetryGroups) {
    Entity e;
    double y = 0.0;
    double halfW = 0.0;
    const auto row = [&](RectId id, double cx) {
      const auto& v = instance.rectangles[id].variants[0];
      e.members.push_back(id);
      e.offX.push_back(cx);
      e.offY.push_back(y + v.height / 2.0);
      halfW = std::max(halfW, std::abs(cx) + v.width / 2.0);
      grouped[id] = true;
    };
    for (const auto& [i, j] : group.pairs) {
      const auto& v = instance.rectangles[i].variants[0];
      const double off = v.width / 2.0 + gap / 2.0;
      row(i, -off);
      row(j, off);
      y += v.height + gap;
    }
    for (RectId i : group.selfSymmetric) {
      row(i, 0.0);
      y += instance.rectangles[i].variants[0].height + gap;
    }
    if (e.members.empty()) continue;
    const double height = y - gap;
    for (double& oy : e.offY) oy -= height / 2.0;
    e.halfW = halfW;
    e.halfH = height / 2.0;
    out.push_back(std::move(e));
  }
  for (RectId i : instance.selectableIds()) {
    if (grouped[i]) continue;
    const auto& v = instance.rectangles[i].variants[0];
    Entity e;
    e.members = {i};
    e.offX = {0.0};
    e.offY = {0.0};
    e.halfW = v.width / 2.0;
    e.halfH = v.height / 2.0;
    out.push_back(std::move(e));
  }
  return out;
}

struct State {
  std::vector<Entity> entities;
  std::vector<double> px, py;  // body centres
};

State startState(const Instance& instance, const FdgdParams& params) {
  State s;
  s.entities = buildEntities(instance);
  const std::size_t count = s.entities.size();
  const double gap = spacing(instance);
  double cell = 0.0;
  for (const auto& e : s.entities) {
    cell = std::max({cell, 2.0 * e.halfW, 2.0 * e.halfH});
  }
  cell += gap;
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(params.seed);
  std::shuffle(order.begin(), order.end(), rng);
  const auto cols = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(std::max<std::size_t>(count, 1)))));
  s.px.assign(count, 0.0);
  s.py.assign(count, 0.0);
  for (std::size_t slot = 0; slot < count; ++slot) {
    const std::size_t e = order[slot];
    s.px[e] = (static_cast<double>(slot % cols) + 0.5) * cell;
    s.py[e] = (static_cast<double>(slot / cols) + 0.5) * cell;
  }
  return s;
}

RoughLayout toLayout(const Instance& instance, const State& s) {
  RoughLayout out;
  out.cx.assign(instance.rectangles.size(), 0.0);
  out.cy.assign(instance.rectangles.size(), 0.0);
  for (std::size_t e = 0; e < s.entities.size(); ++e) {
    const auto& ent = s.entities[e];
    for (std::size_t k = 0; k < ent.members.size(); ++k) {
      out.cx[ent.members[k]] = s.px[e] + ent.offX[k];
      out.cy[ent.members[k]] = s.py[e] + ent.offY[k];
    }
  }
  for (const auto& b : instance.blockages) {
    out.cx[b.rectangleId] = b.x + b.width / 2.0;
    out.cy[b.rectangleId] = b.y + b.height / 2.0;
  }
  return out;
}

}  // namespace

RoughLayout initialLayout(const Instance& instance, const FdgdParams& params) {
  return toLayout(instance, startState(instance, params));
}

RoughLayout fdgdLayout(const Instance& instance, const FdgdParams& params) {
  if (params.iterations < 1) throw ContractError("fdgd needs at least one iteration");
  if (!(params.decay > 0.0 && params.decay <= 1.0)) {
    throw ContractError("fdgd decay must lie in (0, 1]");
  }
  State s = startState(instance, params);
  const std::size_t count = s.entities.size();
  const double gap = spacing(instance);

  std::vector<int> owner(instance.rectangles.size(), -1);
  std::vector<int> slot(instance.rectangles.size(), 0);
  for (std::size_t e = 0; e < count; ++e) {
    for (std::size_t k = 0; k < s.entities[e].members.size(); ++k) {
      owner[s.entities[e].members[k]] = static_cast<int>(e);
      slot[s.entities[e].members[k]] = static_cast<int>(k);
    }
  }

  double step = 0.0;
  if (params.step) {
    step = *params.step;
  } else {
    const auto ids = instance.selectableIds();
    for (RectId i : ids) {
      double dim = 0.0;
      for (const auto& v : instance.rectangles[i].variants) {
        dim = std::max({dim, v.width, v.height});
      }
      step += dim;
    }
    if (!ids.empty()) step /= static_cast<double>(ids.size());
  }

  std::vector<double> fx(count), fy(count);
  for (int it = 0; it < params.iterations; ++it) {
    std::fill(fx.begin(), fx.end(), 0.0);
    std::fill(fy.begin(), fy.end(), 0.0);

    for (const auto& net : instance.nets) {
      if (net.members.size() < 2) continue;
      double mx = 0.0, my = 0.0;
      for (RectId i : net.members) {
        const int e = owner[i];
        mx += s.px[e] + s.entities[e].offX[slot[i]];
        my += s.py[e] + s.entities[e].offY[slot[i]];
      }
      mx /= static_cast<double>(net.members.size());
      my /= static_cast<double>(net.members.size());
      for (RectId i : net.members) {
        const int e = owner[i];
        fx[e] += 0.5 * net.cost * (mx - (s.px[e] + s.entities[e].offX[slot[i]]));
        fy[e] += 0.5 * net.cost * (my - (s.py[e] + s.entities[e].offY[slot[i]]));
      }
    }

    for (std::size_t p = 0; p < count; ++p) {
      for (std::size_t q = p + 1; q < count; ++q) {
        const double dx = s.px[q] - s.px[p];
        const double dy = s.py[q] - s.py[p];
        const double ox =
            s.entities[p].halfW + s.entities[q].halfW + gap - std::abs(dx);
        const double oy =
            s.entities[p].halfH + s.entities[q].halfH + gap - std::abs(dy);
        if (ox <= 0.0 || oy <= 0.0) continue;
        if (ox <= oy) {
          const double dir = dx < 0.0 ? -1.0 : 1.0;
          fx[p] -= dir * ox / 2.0;
          fx[q] += dir * ox / 2.0;
        } else {
          const double dir = dy < 0.0 ? -1.0 : 1.0;
          fy[p] -= dir * oy / 2.0;
          fy[q] += dir * oy / 2.0;
        }
      }
    }

    for (std::size_t e = 0; e < count; ++e) {
      const double len = std::hypot(fx[e], fy[e]);
      const double scale = len > step && len > 0.0 ? step / len : 1.0;
      s.px[e] += fx[e] * scale;
      s.py[e] += fy[e] * scale;
    }
    step *= params.decay;
  }
  return toLayout(instance, s);
}

Placement roughPlacement(const Instance& instance, const RoughLayout& rough) {
  if (rough.cx.size() != instance.rectangles.size() ||
      rough.cy.size() != instance.rectangles.size()) {
    throw InputError("rough layout does not match the instance");
  }
  Placement pl;
  pl.rects.resize(instance.rectangles.size());
  double minX = kInfinity, minY = kInfinity;
  for (RectId i : instance.selectableIds()) {
    const auto& v = instance.rectangles[i].variants[0];
    pl.rects[i] = PlacedRect{rough.cx[i] - v.width / 2.0,
                             rough.cy[i] - v.height / 2.0, 0};
    minX = std::min(minX, pl.rects[i].x);
    minY = std::min(minY, pl.rects[i].y);
  }
  if (minX == kInfinity) minX = minY = 0.0;
  for (RectId i : instance.selectableIds()) {
    pl.rects[i].x -= minX;
    pl.rects[i].y -= minY;
    const auto& v = instance.rectangles[i].variants[0];
    pl.width = std::max(pl.width, pl.rects[i].x + v.width);
    pl.height = std::max(pl.height, pl.rects[i].y + v.height);
  }
  for (const auto& b : instance.blockages) {
    pl.rects[b.rectangleId] = PlacedRect{b.x, b.y, 0};
  }
  for (const auto& group : instance.symmetryGroups) {
    const auto members = group.members();
    double axis = 0.0;
    for (RectId i : members) {
      axis += pl.rects[i].x + instance.rectangles[i].variants[0].width / 2.0;
    }
    pl.axes.push_back(members.empty() ? 0.0
                                      : axis / static_cast<double>(members.size()));
  }
  return pl;
}

Placement legalize(const Instance& instance, const RoughLayout& rough,
                   double budget, const LegalizeOptions& options) {
  using Clock = std::chrono::steady_clock;
  if (!(budget > 0.0)) throw ContractError("legalize needs a positive budget");
  const auto start = Clock::now();
  const auto remaining = [&] {
    return budget - std::chrono::duration<double>(Clock::now() - start).count();
  };

  const Placement seed = roughPlacement(instance, rough);
  PlacementModel pm = buildFullModel(instance, options.build);

  SolveParams params;
  params.threads = options.threads;
  params.seed = options.seed;
  params.timeLimit = std::max(remaining(), 1e-3);

  std::optional<Placement> best;
  double bestValue = kInfinity;
  const auto offer = [&](const Placement& candidate) {
    if (!validate(instance, candidate).empty()) return;
    const double value = criterion(instance, candidate, options.build.weights);
    if (!best || value < bestValue) {
      best = candidate;
      bestValue = value;
    }
  };

  const auto fixings = binaryFixings(pm, instance, seed);
  const SolveResult lp = solveLpRelaxationWithFixings(pm.model, fixings, params);
  if (lp.hasSolution()) offer(extractPlacement(instance, pm, lp));
  warmStartFromPlacement(pm, instance, best ? *best : seed);

  const double left = remaining();
  if (left > 1e-3) {
    params.timeLimit = left;
    const SolveResult milp = solve(pm.model, params);
    if (milp.hasSolution()) offer(extractPlacement(instance, pm, milp));
  }
  if (!best) {
    throw LegalizationError("no feasible placement within " +
                            std::to_string(budget) + " s");
  }
  return *best;
}

}  // namespace amsplace
