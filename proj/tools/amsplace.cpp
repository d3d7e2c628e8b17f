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

// amsplace command line: generate, solve, mh, evaluate, render.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "amsplace/errors.hpp"
#include "amsplace/experiment.hpp"
#include "amsplace/instance_gen.hpp"
#include "amsplace/io.hpp"
#include "amsplace/metrics.hpp"
#include "amsplace/svg.hpp"

namespace {

using namespace amsplace;

constexpr int kNoSolution = 3;
constexpr int kInfeasible = 4;

struct RunFlags {
  std::string instance;
  double cc = 1.0;
  double budget = 60.0;
  double step = 10.0;
  bool sb = false;
  std::optional<double> whSlack;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string outDir = ".";
  std::string results;
  std::optional<long> iterations;
  bool quiet = false;
};

void addRunFlags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("instance", f.instance, "Instance JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--cc", f.cc, "Connectivity weight c_C (c_A is 1)");
  cmd->add_option("--budget-s", f.budget, "Total wall-clock budget in seconds")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--sb", f.sb, "Add symmetry-breaking constraints");
  cmd->add_option("--wh-slack", f.whSlack,
                  "Bound W + H by (1 + slack) times a reference layout");
  cmd->add_option("--seed", f.seed, "Random seed");
  cmd->add_option("--threads", f.threads, "Solver threads")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out-dir", f.outDir, "Directory for placements and traces");
  cmd->add_option("--results", f.results,
                  "CSV file to append the result row to "
                  "(default <out-dir>/results.csv)");
  cmd->add_flag("--quiet", f.quiet, "Suppress diagnostic messages");
}

ExperimentConfig toConfig(const RunFlags& f) {
  ExperimentConfig c;
  c.weights = CriterionWeights{1.0, f.cc};
  c.totalBudget = f.budget;
  c.stepTimeLimit = f.step;
  c.symmetryBreaking = f.sb;
  c.whSlack = f.whSlack;
  c.seed = f.seed;
  c.threads = f.threads;
  c.outDir = f.outDir;
  c.maxIterations = f.iterations;
  c.logicalClock = f.iterations.has_value();
  if (!f.quiet) {
    c.logger = [](const std::string& msg) { std::cerr << "amsplace: " << msg << "\n"; };
  }
  return c;
}

int finishRun(const RunFlags& f, const ExperimentConfig& config) {
  const auto out = runExperiment(std::filesystem::path(f.instance), config);
  const std::filesystem::path results =
      f.results.empty() ? std::filesystem::path(f.outDir) / "results.csv"
                        : std::filesystem::path(f.results);
  appendResult(results, out.record);
  std::cout << kResultsHeader << "\n" << formatResultRow(out.record) << "\n";
  return out.record.ok ? 0 : kNoSolution;
}

int evaluatePlacement(const std::string& instancePath,
                      const std::string& placementPath, double cc) {
  const Instance inst = readInstance(instancePath);
  const PlacementFile file = readPlacement(placementPath, &inst);
  const CriterionWeights weights =
      file.weights.value_or(CriterionWeights{1.0, cc});
  const auto m = evaluate(inst, file.placement, weights);
  std::printf("criterion %.10g\nL_A %.10g\nL_C %.10g\narea %.10g\n", m.value,
              m.areaTerm, m.connectivity,
              file.placement.width * file.placement.height);
  const auto violations = validate(inst, file.placement);
  for (const auto& v : violations) {
    std::printf("violation %s", toString(v.kind));
    for (RectId i : v.ids) std::printf(" %d", i);
    std::printf(" %.6g\n", v.magnitude);
  }
  std::printf("violations %zu\n", violations.size());
  return violations.empty() ? 0 : kInfeasible;
}

int evaluateResults(const std::vector<std::string>& files) {
  std::vector<ResultRecord> records;
  for (const auto& f : files) {
    auto part = readResults(f);
    records.insert(records.end(), part.begin(), part.end());
  }
  std::vector<std::string> warnings;
  const auto scores = scoreMethods(records, &warnings);
  for (const auto& w : warnings) std::cerr << "amsplace: warning: " << w << "\n";
  std::printf("method,aRD_percent,BH,instances\n");
  for (const auto& [method, s] : scores) {
    std::printf("%s,%.6f,%d,%d\n", method.c_str(), s.aRD, s.bestHits, s.counted);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analog IC placement: exact model, matheuristic, tooling"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a synthetic instance");
  GenSpec spec;
  std::string specFile, genOut;
  int symGroups = 0, symPairs = 2, symSelf = 1;
  gen->add_option("--n", spec.n, "Independent rectangles");
  gen->add_option("--seed", spec.seed, "Random seed");
  gen->add_option("--name", spec.name, "Instance name");
  gen->add_option("--sym-groups", symGroups, "Symmetry groups to append");
  gen->add_option("--sym-pairs", symPairs, "Pairs per symmetry group");
  gen->add_option("--sym-self", symSelf, "Self-symmetric rectangles per group");
  gen->add_option("--spec", specFile, "Generator settings as JSON")
      ->check(CLI::ExistingFile);
  gen->add_option("--out", genOut, "Output instance file")->required();

  // solve
  auto* solveCmd = app.add_subcommand("solve", "Exact model (ILP or FDGD-ILP)");
  RunFlags solveFlags;
  std::string mode = "ilp";
  addRunFlags(solveCmd, solveFlags);
  solveCmd->add_option("--mode", mode, "ilp or fdgd-ilp")
      ->check(CLI::IsMember({"ilp", "fdgd-ilp"}));

  // mh
  auto* mhCmd = app.add_subcommand("mh", "Matheuristic local search");
  RunFlags mhFlags;
  int g = 10;
  bool diversifyFlag = false, noWarm = false;
  long iterations = 0;
  addRunFlags(mhCmd, mhFlags);
  mhCmd->add_option("--g", g, "Rectangles freed per step")->check(CLI::Range(2, 1 << 20));
  mhCmd->add_flag("--diversify", diversifyFlag, "Enable swap diversification");
  mhCmd->add_flag("--no-warm-start", noWarm,
                  "Start from a plain ILP run instead of FDGD-ILP");
  mhCmd->add_option("--step-s", mhFlags.step, "Time limit per solver call")
      ->check(CLI::PositiveNumber);
  auto* itOpt = mhCmd->add_option(
      "--iterations", iterations,
      "Stop after this many iterations; trace times become iteration numbers");
  itOpt->check(CLI::PositiveNumber);

  // evaluate
  auto* evalCmd = app.add_subcommand(
      "evaluate", "Criterion and violations of a placement, or aRD/BH of results");
  std::string evalInstance, evalPlacement;
  std::vector<std::string> evalResults;
  double evalCc = 1.0;
  evalCmd->add_option("instance", evalInstance, "Instance JSON file");
  evalCmd->add_option("placement", evalPlacement, "Placement JSON file");
  evalCmd->add_option("--cc", evalCc,
                      "c_C when the placement file carries no weights");
  evalCmd->add_option("--results", evalResults, "Result CSV files to score")
      ->check(CLI::ExistingFile);

  // render
  auto* renderCmd = app.add_subcommand("render", "Draw a placement as SVG");
  std::string renderInstance, renderPlacement, renderOut;
  SvgOptions svg;
  renderCmd->add_option("instance", renderInstance, "Instance JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  renderCmd->add_option("placement", renderPlacement, "Placement JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  renderCmd->add_option("--out", renderOut, "Output SVG file")->required();
  renderCmd->add_flag("--nets", svg.nets, "Draw net bounding boxes");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      if (!specFile.empty()) {
        // Flags given on the command line override the file.
        GenSpec merged = genSpecFromJson(readTextFile(specFile));
        if (gen->count("--n")) merged.n = spec.n;
        if (gen->count("--seed")) merged.seed = spec.seed;
        if (gen->count("--name")) merged.name = spec.name;
        spec = merged;
      }
      if (symGroups > 0) {
        spec.withSymmetry = true;
        spec.groups.assign(symGroups, GroupSpec{symPairs, symSelf});
      }
      const Instance inst = generate(spec);
      writeInstance(inst, genOut);
      std::cout << inst.name << ": " << inst.rectangles.size()
                << " rectangles, " << inst.nets.size() << " nets\n";
      return 0;
    }
    if (*solveCmd) {
      ExperimentConfig config = toConfig(solveFlags);
      config.mode = parseMode(mode);
      return finishRun(solveFlags, config);
    }
    if (*mhCmd) {
      if (diversifyFlag && noWarm) {
        throw InputError("--diversify and --no-warm-start are exclusive");
      }
      if (itOpt->count()) mhFlags.iterations = iterations;
      ExperimentConfig config = toConfig(mhFlags);
      config.mode = Mode::kMh;
      config.g = g;
      config.mhVariant = diversifyFlag ? MhVariant::kDiversify
                         : noWarm      ? MhVariant::kNoWarmStart
                                       : MhVariant::kPlain;
      return finishRun(mhFlags, config);
    }
    if (*evalCmd) {
      if (!evalResults.empty()) return evaluateResults(evalResults);
      if (evalInstance.empty() || evalPlacement.empty()) {
        throw InputError("evaluate needs an instance and a placement, or --results");
      }
      return evaluatePlacement(evalInstance, evalPlacement, evalCc);
    }
    if (*renderCmd) {
      const Instance inst = readInstance(renderInstance);
      const PlacementFile file = readPlacement(renderPlacement, &inst);
      writeSvg(inst, file.placement, renderOut, svg);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "amsplace: error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "amsplace: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
