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

#include "amsplace/experiment.hpp"

#include <chrono>

#include "amsplace/errors.hpp"
#include "amsplace/fdgd.hpp"
#include "amsplace/io.hpp"
#include "amsplace/model_builder.hpp"

namespace amsplace {

namespace {

// Share of the budget spent on the reference layout behind the W + H bound.
constexpr double kReferenceShare = 0.1;

std::optional<Placement> solveFull(const Instance& instance,
                                   const BuildOptions& build, double budget,
                                   const ExperimentConfig& config) {
  if (budget <= 0.0) return std::nullopt;
  PlacementModel pm = buildFullModel(instance, build);
  SolveParams params;
  params.timeLimit = budget;
  params.threads = config.threads;
  params.seed = static_cast<unsigned>(config.seed);
  const SolveResult result = solve(pm.model, params);
  if (!result.hasSolution()) return std::nullopt;
  Placement pl = extractPlacement(instance, pm, result);
  if (!validate(instance, pl).empty()) return std::nullopt;
  return pl;
}

std::optional<Placement> solveFdgd(const Instance& instance,
                                   const BuildOptions& build, double budget,
                                   const ExperimentConfig& config) {
  FdgdParams fp;
  fp.seed = config.seed;
  const RoughLayout rough = fdgdLayout(instance, fp);
  LegalizeOptions lo;
  lo.build = build;
  lo.threads = config.threads;
  lo.seed = static_cast<unsigned>(config.seed);
  if (budget <= 0.0) return std::nullopt;
  try {
    return legalize(instance, rough, budget, lo);
  } catch (const LegalizationError&) {
    return std::nullopt;
  }
}

}  // namespace

Mode parseMode(const std::string& text) {
  if (text == "ilp") return Mode::kIlp;
  if (text == "fdgd-ilp") return Mode::kFdgdIlp;
  if (text == "mh") return Mode::kMh;
  throw InputError("unknown mode '" + text + "' (ilp, fdgd-ilp, mh)");
}

MhVariant parseMhVariant(const std::string& text) {
  if (text == "plain") return MhVariant::kPlain;
  if (text == "diversify") return MhVariant::kDiversify;
  if (text == "no-warm-start") return MhVariant::kNoWarmStart;
  throw InputError("unknown mh variant '" + text +
                   "' (plain, diversify, no-warm-start)");
}

std::string methodName(const ExperimentConfig& config) {
  switch (config.mode) {
    case Mode::kIlp: return "ILP";
    case Mode::kFdgdIlp: return "FDGD-ILP";
    case Mode::kMh: break;
  }
  std::string name = "MH-" + std::to_string(config.g);
  if (config.mhVariant == MhVariant::kDiversify) name += "D";
  if (config.mhVariant == MhVariant::kNoWarmStart) name += "B";
  return name;
}

ExperimentOutput runExperiment(const Instance& instance,
                               const ExperimentConfig& config) {
  using Clock = std::chrono::steady_clock;
  if (!(config.totalBudget > 0.0)) throw ContractError("budget must be positive");
  const auto start = Clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };
  const auto log = [&](const std::string& msg) {
    if (config.logger) config.logger(msg);
  };

  BuildOptions build;
  build.weights = config.weights;
  build.symmetryBreaking = config.symmetryBreaking;
  if (build.symmetryBreaking &&
      (!instance.symmetryGroups.empty() || !instance.blockages.empty())) {
    log("symmetry breaking disabled: instance has symmetry groups or blockages");
    build.symmetryBreaking = false;
  }

  ExperimentOutput out;
  const std::string method = methodName(config);
  if (config.whSlack) {
    BuildOptions plain = build;
    plain.symmetryBreaking = false;
    if (auto ref = solveFdgd(instance, plain,
                             kReferenceShare * config.totalBudget, config)) {
      build.halfPerimeterBound =
          (1.0 + *config.whSlack) * (ref->width + ref->height);
    } else {
      log("no reference layout; W + H bound skipped");
    }
  }

  std::optional<Placement> result;
  try {
    switch (config.mode) {
      case Mode::kIlp:
        result = solveFull(instance, build, config.totalBudget - elapsed(), config);
        break;
      case Mode::kFdgdIlp:
        result = solveFdgd(instance, build, config.totalBudget - elapsed(), config);
        break;
      case Mode::kMh: {
        const double init = config.totalBudget / 3.0 - elapsed();
        std::optional<Placement> initial =
            config.mhVariant == MhVariant::kNoWarmStart
                ? solveFull(instance, build, init, config)
                : solveFdgd(instance, build, init, config);
        if (!initial) {
          log("no start solution within the initial phase");
          break;
        }
        MhConfig mc;
        mc.g = config.g;
        mc.stepTimeLimit = config.stepTimeLimit;
        mc.useDiversification = config.mhVariant == MhVariant::kDiversify;
        mc.seed = config.seed;
        mc.totalBudget = std::max(0.0, config.totalBudget - elapsed());
        mc.maxIterations = config.maxIterations;
        mc.logicalClock = config.logicalClock;
        mc.build = build;
        mc.threads = config.threads;
        MhResult mh = run(instance, *initial, mc, {}, config.logger);
        result = std::move(mh.best);
        out.trace = std::move(mh.trace);
        break;
      }
    }
  } catch (const SolverError& e) {
    log(std::string("solver failure: ") + e.what());
  } catch (const ExtractionError& e) {
    log(std::string("extraction failure: ") + e.what());
  }

  ResultRecord& rec = out.record;
  rec.instance = instance.name;
  rec.method = method;
  std::filesystem::create_directories(config.outDir);
  const std::string stem = instance.name + "." + method;
  if (config.mode == Mode::kMh) {
    const auto path = config.outDir / (stem + ".trace.txt");
    out.trace.write(path);
    rec.tracePath = path.string();
  }
  if (result) {
    const auto m = evaluate(instance, *result, config.weights);
    rec.ok = true;
    rec.criterion = m.value;
    rec.areaTerm = m.areaTerm;
    rec.connectivity = m.connectivity;
    rec.area = result->width * result->height;
    rec.hpwl = m.connectivity;
    const auto path = config.outDir / (stem + ".placement.json");
    writePlacement(instance, *result, config.weights, path);
    rec.placementPath = path.string();
  }
  rec.wallTime = elapsed();
  out.placement = std::move(result);
  return out;
}

ExperimentOutput runExperiment(const std::filesystem::path& instancePath,
                               const ExperimentConfig& config) {
  return runExperiment(readInstance(instancePath), config);
}

}  // namespace amsplace
