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

#include "amsplace/matheuristic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "amsplace/errors.hpp"
#include "amsplace/io.hpp"

namespace amsplace {

namespace {

constexpr double kImprovement = 1e-9;

SolveParams stepParams(const MhConfig& config) {
  SolveParams p;
  p.timeLimit = config.stepTimeLimit;
  p.threads = config.threads;
  p.seed = static_cast<unsigned>(config.seed);
  return p;
}

// Symmetry breaking belongs to the full solve only; a placement produced
// elsewhere need not sit in K's quadrant.
BuildOptions localOptions(const MhConfig& config) {
  BuildOptions o = config.build;
  o.symmetryBreaking = false;
  return o;
}

bool feasible(const Instance& instance, const Placement& placement) {
  return validate(instance, placement).empty();
}

// Feasible placement closest to `start` in relation space: LP over its
// least-violated relations, then the full model for `timeLimit` seconds.
std::optional<Placement> repair(const Instance& instance, const Placement& start,
                                const MhConfig& config) {
  const BuildOptions options = localOptions(config);
  PlacementModel pm = buildFullModel(instance, options);
  const SolveParams params = stepParams(config);

  std::optional<Placement> best;
  double bestValue = kInfinity;
  const auto offer = [&](const Placement& candidate) {
    if (!feasible(instance, candidate)) return;
    const double value = criterion(instance, candidate, options.weights);
    if (!best || value < bestValue) {
      best = candidate;
      bestValue = value;
    }
  };

  const SolveResult lp = solveLpRelaxationWithFixings(
      pm.model, binaryFixings(pm, instance, start), params);
  if (lp.hasSolution()) offer(extractPlacement(instance, pm, lp));
  warmStartFromPlacement(pm, instance, best ? *best : start);
  const SolveResult milp = solve(pm.model, params);
  if (milp.hasSolution()) {
    try {
      offer(extractPlacement(instance, pm, milp));
    } catch (const ExtractionError&) {
    }
  }
  return best;
}

}  // namespace

const char* toString(TraceKind kind) {
  switch (kind) {
    case TraceKind::kIntensifyAccept: return "intensify-accept";
    case TraceKind::kIntensifyReject: return "intensify-reject";
    case TraceKind::kDiversify: return "diversify";
    case TraceKind::kFineOpt: return "fine-opt";
  }
  return "unknown";
}

std::string MhTrace::serialize() const {
  std::string out;
  char line[256];
  for (const auto& e : events) {
    std::snprintf(line, sizeof(line), "%.6f %s %.17g %.17g %.17g\n", e.time,
                  toString(e.kind), e.criterion, e.areaTerm, e.connectivity);
    out += line;
  }
  return out;
}

MhTrace MhTrace::parse(const std::string& text) {
  MhTrace trace;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    std::istringstream fields(line);
    TraceEvent e;
    std::string kind;
    if (!(fields >> e.time >> kind >> e.criterion >> e.areaTerm >> e.connectivity)) {
      throw ParseError("trace line " + std::to_string(number) + ": malformed");
    }
    bool known = false;
    for (auto k : {TraceKind::kIntensifyAccept, TraceKind::kIntensifyReject,
                   TraceKind::kDiversify, TraceKind::kFineOpt}) {
      if (kind == toString(k)) {
        e.kind = k;
        known = true;
      }
    }
    if (!known) {
      throw ParseError("trace line " + std::to_string(number) +
                       ": unknown kind " + kind);
    }
    trace.events.push_back(e);
  }
  return trace;
}

void MhTrace::write(const std::filesystem::path& path) const {
  writeTextFile(path, serialize());
}

MhTrace MhTrace::read(const std::filesystem::path& path) {
  return parse(readTextFile(path));
}

std::vector<RectId> selectGroup(const Instance& instance,
                                const Placement& placement, double px,
                                double py, int g) {
  auto ids = instance.selectableIds();
  if (g < 1 || g > static_cast<int>(ids.size())) {
    throw ContractError("group size " + std::to_string(g) + " outside [1, " +
                        std::to_string(ids.size()) + "]");
  }
  std::vector<std::pair<double, RectId>> ranked;
  for (RectId i : ids) {
    ranked.emplace_back(proximity(px, py, geometryOf(instance, placement, i)), i);
  }
  std::partial_sort(ranked.begin(), ranked.begin() + g, ranked.end());
  std::set<RectId> group;
  for (int k = 0; k < g; ++k) {
    const RectId i = ranked[k].second;
    group.insert(i);
    if (auto partner = instance.symmetryPartner(i)) group.insert(*partner);
  }
  return {group.begin(), group.end()};
}

PlacementModel buildRestrictedModel(const Instance& instance,
                                    const Placement& placement,
                                    std::span<const RectId> group,
                                    const BuildOptions& options) {
  if (group.empty()) throw ContractError("restricted model needs a group");
  PlacementModel pm = buildPartialModel(instance, options, placement, group);
  warmStartFromPlacement(pm, instance, placement);
  return pm;
}

StepResult intensifyStep(const Instance& instance, const Placement& placement,
                         double px, double py, const MhConfig& config) {
  const int n = instance.selectableCount();
  const auto group =
      selectGroup(instance, placement, px, py, std::min(config.g, n));
  BuildOptions options = localOptions(config);
  // An improving solution has c_A (W + H) below the current criterion, which
  // bounds W + H and with it the big-M of the restricted model.
  if (options.weights.area > 0.0) {
    const double cap =
        criterion(instance, placement, options.weights) / options.weights.area;
    options.halfPerimeterBound =
        std::min(options.halfPerimeterBound.value_or(kInfinity), cap);
  }
  PlacementModel pm = buildRestrictedModel(instance, placement, group, options);
  const SolveResult result = solve(pm.model, stepParams(config));
  StepResult out{placement, false};
  if (!result.hasSolution()) return out;
  Placement candidate;
  try {
    candidate = extractPlacement(instance, pm, result);
  } catch (const ExtractionError&) {
    return out;
  }
  if (!feasible(instance, candidate)) return out;
  const double before = criterion(instance, placement, options.weights);
  const double after = criterion(instance, candidate, options.weights);
  if (after < before - kImprovement) {
    out.placement = std::move(candidate);
    out.improved = true;
  }
  return out;
}

Placement lpFineOptimize(const Instance& instance, const Placement& placement,
                         const MhConfig& config) {
  const BuildOptions options = localOptions(config);
  PlacementModel pm = buildFullModel(instance, options);
  const auto fixings = binaryFixings(pm, instance, placement);
  const SolveResult lp =
      solveLpRelaxationWithFixings(pm.model, fixings, stepParams(config));
  if (!lp.hasSolution()) {
    throw InternalError(std::string("fine optimization LP ended ") +
                        toString(lp.status));
  }
  Placement candidate = extractPlacement(instance, pm, lp);
  if (!feasible(instance, candidate) ||
      criterion(instance, candidate, options.weights) >
          criterion(instance, placement, options.weights)) {
    return placement;
  }
  return candidate;
}

std::vector<RectId> compatiblePositions(const Instance& instance,
                                        const Placement& placement, RectId i,
                                        double areaDiff) {
  if (instance.groupOf(i)) return {i};
  const auto area = [&](RectId id) {
    const auto g = geometryOf(instance, placement, id);
    return g.w * g.h;
  };
  const double ai = area(i);
  std::vector<RectId> out;
  for (RectId j : instance.selectableIds()) {
    if (j != i && instance.groupOf(j)) continue;
    const double aj = area(j);
    if (std::abs(ai - aj) / std::min(ai, aj) <= areaDiff) out.push_back(j);
  }
  return out;
}

SwapModel buildSwapModel(const Instance& instance, const Placement& placement,
                         const MhConfig& config) {
  SwapModel sm;
  auto& m = sm.model;
  sm.ids = instance.selectableIds();
  const int n = static_cast<int>(sm.ids.size());
  std::vector<int> index(instance.rectangles.size(), -1);
  for (int a = 0; a < n; ++a) index[sm.ids[a]] = a;

  std::vector<RectGeometry> geom;
  for (RectId i : sm.ids) geom.push_back(geometryOf(instance, placement, i));

  sm.width = m.addContinuous("W");
  sm.height = m.addContinuous("H");
  sm.assign.resize(n);
  std::vector<LinExpr> column(n);
  LinExpr stays;
  std::vector<VarRef> sx(n), sy(n);
  for (int a = 0; a < n; ++a) {
    const RectId i = sm.ids[a];
    LinExpr row, xdef, ydef;
    sx[a] = m.addContinuous("xs_" + std::to_string(i), -kInfinity, kInfinity);
    sy[a] = m.addContinuous("ys_" + std::to_string(i), -kInfinity, kInfinity);
    xdef.add(-1.0, sx[a]);
    ydef.add(-1.0, sy[a]);
    for (RectId j : compatiblePositions(instance, placement, i, config.areaDiff)) {
      const int b = index[j];
      const VarRef p =
          m.addBinary("p_" + std::to_string(i) + "_" + std::to_string(j));
      sm.assign[a].emplace_back(b, p);
      row.add(1.0, p);
      column[b].add(1.0, p);
      xdef.add(geom[b].centerX(), p);
      ydef.add(geom[b].centerY(), p);
      if (a == b) stays.add(1.0, p);
      m.setWarmStart(p, a == b ? 1.0 : 0.0);
    }
    m.addConstraint(row, Sense::kEqual, 1.0, "take_" + std::to_string(i));
    m.addConstraint(xdef, Sense::kEqual, 0.0, "xs_def_" + std::to_string(i));
    m.addConstraint(ydef, Sense::kEqual, 0.0, "ys_def_" + std::to_string(i));
    m.addConstraint(LinExpr().add(1.0, sm.width).add(-1.0, sx[a]),
                    Sense::kGreaterEqual, geom[a].w / 2.0,
                    "inW_" + std::to_string(i));
    m.addConstraint(LinExpr().add(1.0, sm.height).add(-1.0, sy[a]),
                    Sense::kGreaterEqual, geom[a].h / 2.0,
                    "inH_" + std::to_string(i));
  }
  for (int b = 0; b < n; ++b) {
    m.addConstraint(column[b], Sense::kEqual, 1.0,
                    "slot_" + std::to_string(sm.ids[b]));
  }

  sm.minSwaps = static_cast<int>(
      std::floor(static_cast<double>(n) * config.minSwapsFraction + 1e-9));
  sm.penalty = std::max(placement.width, placement.height);
  sm.xi = m.addContinuous("xi");
  // xi >= N - (n - sum_i p_i^i)
  m.addConstraint(LinExpr().add(1.0, sm.xi).add(stays, -1.0),
                  Sense::kGreaterEqual, sm.minSwaps - n, "xi_def");

  const auto& w = config.build.weights;
  LinExpr obj;
  obj.add(w.area, sm.width).add(w.area, sm.height).add(sm.penalty, sm.xi);
  const double total = instance.totalNetCost();
  const double scale = total > 0.0 ? w.connectivity / total : 0.0;
  for (std::size_t e = 0; e < instance.nets.size(); ++e) {
    const auto& net = instance.nets[e];
    if (net.members.empty()) continue;
    const std::string id = std::to_string(e);
    const VarRef xM = m.addContinuous("XM_" + id, -kInfinity, kInfinity);
    const VarRef xm = m.addContinuous("Xm_" + id, -kInfinity, kInfinity);
    const VarRef yM = m.addContinuous("YM_" + id, -kInfinity, kInfinity);
    const VarRef ym = m.addContinuous("Ym_" + id, -kInfinity, kInfinity);
    for (RectId i : net.members) {
      const int a = index[i];
      m.addConstraint(LinExpr().add(1.0, xM).add(-1.0, sx[a]),
                      Sense::kGreaterEqual, 0.0, "");
      m.addConstraint(LinExpr().add(1.0, xm).add(-1.0, sx[a]),
                      Sense::kLessEqual, 0.0, "");
      m.addConstraint(LinExpr().add(1.0, yM).add(-1.0, sy[a]),
                      Sense::kGreaterEqual, 0.0, "");
      m.addConstraint(LinExpr().add(1.0, ym).add(-1.0, sy[a]),
                      Sense::kLessEqual, 0.0, "");
    }
    const double c = scale * net.cost;
    obj.add(c, xM).add(-c, xm).add(c, yM).add(-c, ym);
  }
  m.setObjective(std::move(obj));
  return sm;
}

std::vector<int> decodeAssignment(const SwapModel& model,
                                  const SolveResult& result) {
  if (!result.hasSolution()) throw ExtractionError("swap model has no solution");
  std::vector<int> out(model.ids.size(), -1);
  for (std::size_t a = 0; a < model.ids.size(); ++a) {
    for (const auto& [b, p] : model.assign[a]) {
      if (result.value(p) > 0.5) out[a] = b;
    }
    if (out[a] < 0) {
      throw ExtractionError("rectangle " + std::to_string(model.ids[a]) +
                            " takes no position");
    }
  }
  return out;
}

Placement diversify(const Instance& instance, const Placement& placement,
                    const MhConfig& config) {
  SwapModel sm = buildSwapModel(instance, placement, config);
  const SolveResult result = solve(sm.model, stepParams(config));
  if (!result.hasSolution()) return placement;
  const auto target = decodeAssignment(sm, result);

  Placement moved = placement;
  bool changed = false;
  for (std::size_t a = 0; a < sm.ids.size(); ++a) {
    if (target[a] == static_cast<int>(a)) continue;
    changed = true;
    const RectId i = sm.ids[a];
    const auto own = geometryOf(instance, placement, i);
    const auto dest = geometryOf(instance, placement, sm.ids[target[a]]);
    moved.rects[i].x = dest.centerX() - own.w / 2.0;
    moved.rects[i].y = dest.centerY() - own.h / 2.0;
  }
  if (!changed) return placement;

  auto repaired = repair(instance, moved, config);
  if (!repaired) {
    throw LegalizationError("diversification repair found no placement");
  }
  return *repaired;
}

MhResult run(const Instance& instance, const Placement& initial,
             const MhConfig& config, const MhObserver& observer,
             const MhLogger& logger) {
  using Clock = std::chrono::steady_clock;
  if (config.g < 2) throw ContractError("group size must be at least 2");
  if (config.nonImprovingThreshold < 1 || !(config.stepTimeLimit > 0.0)) {
    throw ContractError("thresholds must be positive");
  }
  if (!feasible(instance, initial)) {
    throw ContractError("initial placement is infeasible");
  }
  const auto start = Clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };
  const auto log = [&](const std::string& msg) {
    if (logger) logger(msg);
  };
  const CriterionWeights& weights = config.build.weights;

  MhResult out;
  out.best = initial;
  Placement current = initial;
  double bestValue = criterion(instance, initial, weights);
  int counter = 0;
  std::mt19937_64 rng(config.seed);

  const auto record = [&](TraceKind kind, const Placement& pl) {
    const auto m = evaluate(instance, pl, weights);
    const double t = config.logicalClock ? static_cast<double>(out.iterations + 1)
                                         : elapsed();
    out.trace.events.push_back({t, kind, m.value, m.areaTerm, m.connectivity});
    if (m.value < bestValue) {
      bestValue = m.value;
      out.best = pl;
    }
  };

  while (!config.maxIterations || out.iterations < *config.maxIterations) {
    const double remaining = config.totalBudget - elapsed();
    if (remaining <= 0.0) break;
    MhConfig step = config;
    step.stepTimeLimit = std::min(config.stepTimeLimit, remaining);

    std::uniform_real_distribution<double> ux(0.0, current.width);
    std::uniform_real_distribution<double> uy(0.0, current.height);
    const double px = ux(rng);
    const double py = uy(rng);
    try {
      StepResult r = intensifyStep(instance, current, px, py, step);
      if (r.improved) {
        current = std::move(r.placement);
        record(TraceKind::kIntensifyAccept, current);
        counter = 0;
        try {
          current = lpFineOptimize(instance, current, step);
          record(TraceKind::kFineOpt, current);
        } catch (const Error& e) {
          log(std::string("fine optimization skipped: ") + e.what());
        }
      } else {
        record(TraceKind::kIntensifyReject, current);
        ++counter;
      }
    } catch (const Error& e) {
      log(std::string("intensification step failed: ") + e.what());
      ++counter;
    }

    if (config.useDiversification && counter >= config.nonImprovingThreshold) {
      counter = 0;
      const double left = config.totalBudget - elapsed();
      if (left > 0.0) {
        step.stepTimeLimit = std::min(config.stepTimeLimit, left);
        try {
          current = diversify(instance, current, step);
        } catch (const Error& e) {
          log(std::string("diversification kept the current placement: ") +
              e.what());
        }
        record(TraceKind::kDiversify, current);
        ++out.diversifications;
      }
    }
    ++out.iterations;
    if (observer) observer(current, out.best);
  }
  return out;
}

}  // namespace amsplace
