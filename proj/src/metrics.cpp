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

#include "amsplace/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include "amsplace/core.hpp"
#include "amsplace/errors.hpp"
#include "amsplace/io.hpp"

namespace amsplace {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> splitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parseNumber(const std::string& text, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("results line " + std::to_string(line) + ": bad number '" +
                   text + "'");
}

}  // namespace

std::string formatResultRow(const ResultRecord& r) {
  for (const auto* s : {&r.instance, &r.method, &r.placementPath, &r.tracePath}) {
    if (s->find(',') != std::string::npos) {
      throw InputError("result field contains a comma: " + *s);
    }
  }
  return r.instance + "," + r.method + "," + (r.ok ? "ok" : "failed") + "," +
         num(r.criterion) + "," + num(r.areaTerm) + "," + num(r.connectivity) +
         "," + num(r.area) + "," + num(r.hpwl) + "," + num(r.wallTime) + "," +
         r.placementPath + "," + r.tracePath;
}

std::string formatResults(const std::vector<ResultRecord>& records) {
  std::string out = std::string(kResultsHeader) + "\n";
  for (const auto& r : records) out += formatResultRow(r) + "\n";
  return out;
}

std::vector<ResultRecord> parseResults(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kResultsHeader) {
    throw ParseError("results: missing header");
  }
  std::vector<ResultRecord> out;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto cells = splitCsv(line);
    if (cells.size() != 11) {
      throw ParseError("results line " + std::to_string(number) +
                       ": expected 11 fields");
    }
    ResultRecord r;
    r.instance = cells[0];
    r.method = cells[1];
    if (cells[2] != "ok" && cells[2] != "failed") {
      throw ParseError("results line " + std::to_string(number) +
                       ": bad status '" + cells[2] + "'");
    }
    r.ok = cells[2] == "ok";
    r.criterion = parseNumber(cells[3], number);
    r.areaTerm = parseNumber(cells[4], number);
    r.connectivity = parseNumber(cells[5], number);
    r.area = parseNumber(cells[6], number);
    r.hpwl = parseNumber(cells[7], number);
    r.wallTime = parseNumber(cells[8], number);
    r.placementPath = cells[9];
    r.tracePath = cells[10];
    out.push_back(std::move(r));
  }
  return out;
}

void appendResult(const std::filesystem::path& path, const ResultRecord& record) {
  std::string text;
  if (std::filesystem::exists(path)) {
    text = readTextFile(path);
  } else {
    text = std::string(kResultsHeader) + "\n";
  }
  writeTextFile(path, text + formatResultRow(record) + "\n");
}

std::vector<ResultRecord> readResults(const std::filesystem::path& path) {
  return parseResults(readTextFile(path));
}

std::map<std::string, MethodScore> scoreMethods(
    const std::vector<ResultRecord>& records,
    std::vector<std::string>* warnings) {
  constexpr double kFail = std::numeric_limits<double>::infinity();
  std::set<std::string> instances, methods;
  std::map<std::pair<std::string, std::string>, double> value;
  for (const auto& r : records) {
    instances.insert(r.instance);
    methods.insert(r.method);
    const double v = r.ok ? r.criterion : kFail;
    auto [it, fresh] = value.emplace(std::make_pair(r.instance, r.method), v);
    if (!fresh) it->second = std::min(it->second, v);
  }

  std::map<std::string, MethodScore> scores;
  std::map<std::string, double> sums;
  for (const auto& m : methods) scores[m] = MethodScore{};
  for (const auto& inst : instances) {
    double best = kFail;
    for (const auto& m : methods) {
      auto it = value.find({inst, m});
      if (it != value.end()) best = std::min(best, it->second);
    }
    for (const auto& m : methods) {
      auto it = value.find({inst, m});
      if (it == value.end()) {
        if (warnings) {
          warnings->push_back("no result for method " + m + " on " + inst);
        }
        continue;
      }
      const double v = it->second;
      if (std::isinf(v) || std::isinf(best)) continue;
      if (std::abs(v - best) <= kCriterionRelTolerance * std::abs(best)) {
        ++scores[m].bestHits;
      }
      sums[m] += 100.0 * (v - best) / best;
      ++scores[m].counted;
    }
  }
  for (auto& [m, s] : scores) {
    if (s.counted > 0) s.aRD = sums[m] / s.counted;
  }
  return scores;
}

}  // namespace amsplace
