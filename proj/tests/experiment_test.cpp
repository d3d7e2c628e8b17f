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

#include <gtest/gtest.h>

#include <cmath>

#include "amsplace/errors.hpp"
#include "amsplace/experiment.hpp"
#include "amsplace/instance_gen.hpp"
#include "amsplace/io.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

namespace amsplace {
namespace {

TEST(Experiment, MethodNames) {
  ExperimentConfig c;
  c.mode = Mode::kIlp;
  EXPECT_EQ(methodName(c), "ILP");
  c.mode = Mode::kFdgdIlp;
  EXPECT_EQ(methodName(c), "FDGD-ILP");
  c.mode = Mode::kMh;
  c.g = 4;
  EXPECT_EQ(methodName(c), "MH-4");
  c.mhVariant = MhVariant::kDiversify;
  EXPECT_EQ(methodName(c), "MH-4D");
  c.mhVariant = MhVariant::kNoWarmStart;
  EXPECT_EQ(methodName(c), "MH-4B");
  EXPECT_EQ(parseMode("fdgd-ilp"), Mode::kFdgdIlp);
  EXPECT_THROW(parseMode("sa"), InputError);
}

TEST(Experiment, IlpMatchesOracle) {
  const Instance inst = oracle::tinyInstance(77, 3, 2);
  ExperimentConfig c;
  c.mode = Mode::kIlp;
  c.totalBudget = 30;
  c.outDir = testutil::scratchDir("exp_ilp");
  const auto out = runExperiment(inst, c);
  ASSERT_TRUE(out.record.ok);
  const auto want = oracle::bruteForce(inst, c.weights);
  EXPECT_NEAR(out.record.criterion, want.value, 1e-6 * want.value);
}

TEST(Experiment, MhRecordIsRederivable) {
  GenSpec spec;
  spec.n = 8;
  spec.seed = 1;
  const Instance inst = generate(spec);
  ExperimentConfig c;
  c.mode = Mode::kMh;
  c.g = 3;
  c.totalBudget = 9;
  c.stepTimeLimit = 2;
  c.outDir = testutil::scratchDir("exp_mh");
  const auto out = runExperiment(inst, c);
  ASSERT_TRUE(out.record.ok);
  EXPECT_LE(out.record.wallTime, c.totalBudget + c.stepTimeLimit + 1.0);
  const auto file = readPlacement(out.record.placementPath, &inst);
  EXPECT_TRUE(validate(inst, file.placement).empty());
  EXPECT_NEAR(criterion(inst, file.placement, c.weights), out.record.criterion,
              1e-6);
  const auto trace = MhTrace::read(out.record.tracePath);
  EXPECT_EQ(trace.events.size(), out.trace.events.size());
}

TEST(Experiment, WeightsSteerThePlacement) {
  GenSpec spec;
  spec.n = 6;
  spec.seed = 2;
  const Instance inst = generate(spec);
  ExperimentConfig c;
  c.mode = Mode::kIlp;
  c.totalBudget = 60;
  c.outDir = testutil::scratchDir("exp_weights");
  c.weights = {1, 0};
  const auto area = runExperiment(inst, c);
  c.weights = {1, 8};
  const auto wire = runExperiment(inst, c);
  ASSERT_TRUE(area.record.ok && wire.record.ok);
  EXPECT_LE(area.record.areaTerm, wire.record.areaTerm + 1e-6);
  EXPECT_GE(area.record.hpwl, wire.record.hpwl - 1e-6);
}

TEST(Experiment, SymmetryBreakingSkippedForGroups) {
  GenSpec spec;
  spec.n = 4;
  spec.seed = 3;
  spec.withSymmetry = true;
  spec.groups = {{1, 1}};
  const Instance inst = generate(spec);
  ExperimentConfig c;
  c.mode = Mode::kIlp;
  c.totalBudget = 20;
  c.symmetryBreaking = true;
  c.outDir = testutil::scratchDir("exp_sb");
  std::vector<std::string> messages;
  c.logger = [&](const std::string& m) { messages.push_back(m); };
  const auto out = runExperiment(inst, c);
  EXPECT_TRUE(out.record.ok);
  ASSERT_FALSE(messages.empty());
  EXPECT_NE(messages[0].find("symmetry breaking disabled"), std::string::npos);
}

}  // namespace
}  // namespace amsplace
