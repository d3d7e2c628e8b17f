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

#include "amsplace/errors.hpp"
#include "amsplace/metrics.hpp"
#include "test_util.hpp"

namespace amsplace {
namespace {

ResultRecord row(const std::string& inst, const std::string& method, double v,
                 bool ok = true) {
  ResultRecord r;
  r.instance = inst;
  r.method = method;
  r.ok = ok;
  r.criterion = ok ? v : 0.0;
  return r;
}

TEST(Scores, TwoMethods) {
  const auto s = scoreMethods({row("i", "A", 100), row("i", "B", 110)});
  EXPECT_DOUBLE_EQ(s.at("A").aRD, 0.0);
  EXPECT_NEAR(s.at("B").aRD, 10.0, 1e-12);
  EXPECT_EQ(s.at("A").bestHits, 1);
  EXPECT_EQ(s.at("B").bestHits, 0);
}

TEST(Scores, TiesHitTogether) {
  const auto s = scoreMethods({row("i", "A", 77.5), row("i", "B", 77.5)});
  EXPECT_DOUBLE_EQ(s.at("A").aRD, 0.0);
  EXPECT_DOUBLE_EQ(s.at("B").aRD, 0.0);
  EXPECT_EQ(s.at("A").bestHits, 1);
  EXPECT_EQ(s.at("B").bestHits, 1);
}

TEST(Scores, FailuresAndMissingPairs) {
  std::vector<std::string> warnings;
  const auto s = scoreMethods(
      {row("i", "A", 10), row("i", "B", 0, false), row("j", "A", 5)}, &warnings);
  EXPECT_EQ(s.at("B").bestHits, 0);
  EXPECT_EQ(s.at("B").counted, 0);
  EXPECT_EQ(s.at("A").counted, 2);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("B"), std::string::npos);
}

TEST(Scores, HandTable) {
  // i1: 100 110 100; i2: 200 150 fail; i3: 50 55 60.
  const auto s = scoreMethods({row("i1", "A", 100), row("i1", "B", 110),
                               row("i1", "C", 100), row("i2", "A", 200),
                               row("i2", "B", 150), row("i2", "C", 0, false),
                               row("i3", "A", 50), row("i3", "B", 55),
                               row("i3", "C", 60)});
  EXPECT_NEAR(s.at("A").aRD, (0.0 + 100.0 / 3.0 + 0.0) / 3.0, 1e-12);
  EXPECT_NEAR(s.at("B").aRD, (10.0 + 0.0 + 10.0) / 3.0, 1e-12);
  EXPECT_NEAR(s.at("C").aRD, (0.0 + 20.0) / 2.0, 1e-12);
  EXPECT_EQ(s.at("A").bestHits, 2);
  EXPECT_EQ(s.at("B").bestHits, 1);
  EXPECT_EQ(s.at("C").bestHits, 1);
}

TEST(ResultsCsv, RoundTrip) {
  ResultRecord r = row("gen_n50_s1", "MH-10", 123.456789012345678);
  r.areaTerm = 60.25;
  r.connectivity = 1000.0 / 3.0;
  r.area = 900.0;
  r.hpwl = 2000.0;
  r.wallTime = 12.5;
  r.placementPath = "out/gen_n50_s1.MH-10.placement.json";
  r.tracePath = "out/gen_n50_s1.MH-10.trace.txt";
  const ResultRecord failed = row("gen_n50_s1", "ILP", 0, false);
  const std::string text = formatResults({r, failed});
  EXPECT_EQ(text.substr(0, text.find('\n')), kResultsHeader);
  const auto back = parseResults(text);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].criterion, r.criterion);
  EXPECT_EQ(back[0].connectivity, r.connectivity);
  EXPECT_EQ(back[0].tracePath, r.tracePath);
  EXPECT_FALSE(back[1].ok);
  EXPECT_EQ(formatResults(back), text);
}

TEST(ResultsCsv, AppendWritesHeaderOnce) {
  const auto dir = testutil::scratchDir("results");
  const auto path = dir / "r.csv";
  appendResult(path, row("a", "ILP", 1));
  appendResult(path, row("b", "ILP", 2));
  const auto back = readResults(path);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].instance, "b");
}

TEST(ResultsCsv, Rejects) {
  EXPECT_THROW(formatResultRow(row("a,b", "ILP", 1)), InputError);
  EXPECT_THROW(parseResults("wrong,header\n"), ParseError);
  EXPECT_THROW(parseResults(std::string(kResultsHeader) + "\na,ILP,ok,x,1,1,1,1,1,,\n"),
               ParseError);
}

}  // namespace
}  // namespace amsplace
