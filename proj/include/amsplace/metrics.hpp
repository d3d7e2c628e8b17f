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

// Experiment result rows and the set-level scores computed from them:
// average relative difference to the best known criterion (aRD, percent)
// and the number of best hits (BH).

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace amsplace {

struct ResultRecord {
  std::string instance;
  std::string method;
  bool ok = false;          // false when no placement was found
  double criterion = 0.0;
  double areaTerm = 0.0;    // L_A = W + H
  double connectivity = 0.0;  // L_C
  double area = 0.0;        // W * H
  double hpwl = 0.0;
  double wallTime = 0.0;
  std::string placementPath;
  std::string tracePath;
};

inline constexpr const char* kResultsHeader =
    "instance,method,status,criterion,L_A,L_C,area,hpwl,wall_time_s,"
    "placement,trace";

std::string formatResultRow(const ResultRecord& record);
std::string formatResults(const std::vector<ResultRecord>& records);
std::vector<ResultRecord> parseResults(const std::string& text);

// Appends one row, writing the header first when the file is new.
void appendResult(const std::filesystem::path& path, const ResultRecord& record);
std::vector<ResultRecord> readResults(const std::filesystem::path& path);

struct MethodScore {
  double aRD = 0.0;     // percent
  int bestHits = 0;
  int counted = 0;      // instances entering the aRD mean
};

// Scores every method over all instances in `records`. Failed rows count as
// an infinite criterion: they never hit the best and stay out of the aRD
// mean. Missing (instance, method) pairs are skipped and reported through
// `warnings`. Ties within a relative 1e-9 award a hit to every tied method.
std::map<std::string, MethodScore> scoreMethods(
    const std::vector<ResultRecord>& records,
    std::vector<std::string>* warnings = nullptr);

}  // namespace amsplace
