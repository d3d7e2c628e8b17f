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

// Reference solvers for tests. Nothing here touches the MILP backend or the
// model builder: a dense two-phase simplex plus exhaustive enumeration of
// relative positions and variants for tiny placement instances.

#pragma once

#include <cstdint>
#include <vector>

#include "amsplace/core.hpp"

namespace oracle {

struct LpRow {
  std::vector<double> a;
  char sense = '<';  // '<', '=', '>'
  double b = 0.0;
};

// minimize c.x subject to rows, x >= 0.
struct DenseLp {
  int n = 0;
  std::vector<double> c;
  std::vector<LpRow> rows;
};

struct LpSolution {
  enum Status { kOptimal, kInfeasible, kUnbounded } status = kInfeasible;
  double value = 0.0;
  std::vector<double> x;
};

LpSolution solveDense(const DenseLp& lp);

struct BruteForceResult {
  bool feasible = false;
  double value = 0.0;       // optimal criterion
  double halfPerimeter = 0.0;  // W + H of the optimum found
};

// Optimum of the placement problem by enumerating one relation per pair
// (4^{C(n,2)}) and every variant choice, solving the separable x / y LPs of
// each combination. Only instances without symmetry groups, blockages or
// aspect bounds are supported.
BruteForceResult bruteForce(const amsplace::Instance& instance,
                            const amsplace::CriterionWeights& weights);

// Random tiny instance: n rectangles, at most `maxVariants` variants each,
// random nets, random distances in [0, 1].
amsplace::Instance tinyInstance(std::uint64_t seed, int n, int maxVariants);

}  // namespace oracle
