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

#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace oracle {

namespace {

constexpr double kEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Tableau {
  int m = 0;
  int cols = 0;
  std::vector<std::vector<double>> a;  // m rows of cols + 1 (rhs last)
  std::vector<double> obj;             // reduced costs; obj[cols] = -value
  std::vector<int> basis;

  void pivot(int r, int c) {
    const double p = a[r][c];
    for (double& v : a[r]) v /= p;
    for (int i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0.0) continue;
      const double f = a[i][c];
      for (int j = 0; j <= cols; ++j) a[i][j] -= f * a[r][j];
    }
    if (obj[c] != 0.0) {
      const double f = obj[c];
      for (int j = 0; j <= cols; ++j) obj[j] -= f * a[r][j];
    }
    basis[r] = c;
  }

  // Bland's rule. Returns false when unbounded.
  bool run(const std::vector<bool>& allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols; ++j) {
        if (allowed[j] && obj[j] < -kEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      double best = kInf;
      for (int i = 0; i < m; ++i) {
        if (a[i][enter] > kEps) best = std::min(best, a[i][cols] / a[i][enter]);
      }
      int leave = -1;
      for (int i = 0; i < m; ++i) {
        if (a[i][enter] <= kEps || a[i][cols] / a[i][enter] > best + kEps) continue;
        if (leave < 0 || basis[i] < basis[leave]) leave = i;
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpSolution solveDense(const DenseLp& lp) {
  const int m = static_cast<int>(lp.rows.size());
  const int n = lp.n;
  // Column layout: originals, one slack/surplus per inequality, one
  // artificial per row that lacks a natural basic column.
  std::vector<LpRow> rows = lp.rows;
  for (auto& r : rows) {
    r.a.resize(n, 0.0);
    if (r.b < 0.0) {
      for (double& v : r.a) v = -v;
      r.b = -r.b;
      r.sense = r.sense == '<' ? '>' : r.sense == '>' ? '<' : '=';
    }
  }
  int slack = 0;
  int artificial = 0;
  for (const auto& r : rows) {
    if (r.sense != '=') ++slack;
    if (r.sense != '<') ++artificial;
  }
  Tableau t;
  t.m = m;
  t.cols = n + slack + artificial;
  t.a.assign(m, std::vector<double>(t.cols + 1, 0.0));
  t.basis.assign(m, -1);
  std::vector<bool> isArtificial(t.cols, false);
  int s = n;
  int art = n + slack;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t.a[i][j] = rows[i].a[j];
    t.a[i][t.cols] = rows[i].b;
    if (rows[i].sense == '<') {
      t.a[i][s] = 1.0;
      t.basis[i] = s++;
    } else {
      if (rows[i].sense == '>') t.a[i][s++] = -1.0;
      t.a[i][art] = 1.0;
      isArtificial[art] = true;
      t.basis[i] = art++;
    }
  }

  LpSolution out;
  // Phase 1: minimise the sum of artificials.
  t.obj.assign(t.cols + 1, 0.0);
  for (int j = 0; j < t.cols; ++j) {
    if (isArtificial[j]) t.obj[j] = 1.0;
  }
  for (int i = 0; i < m; ++i) {
    if (!isArtificial[t.basis[i]]) continue;
    for (int j = 0; j <= t.cols; ++j) t.obj[j] -= t.a[i][j];
  }
  std::vector<bool> all(t.cols, true);
  t.run(all);
  double scale = 1.0;
  for (const auto& r : rows) scale = std::max(scale, std::abs(r.b));
  if (-t.obj[t.cols] > 1e-7 * scale) {
    out.status = LpSolution::kInfeasible;
    return out;
  }
  for (int i = 0; i < m; ++i) {
    if (!isArtificial[t.basis[i]]) continue;
    for (int j = 0; j < t.cols; ++j) {
      if (!isArtificial[j] && std::abs(t.a[i][j]) > 1e-9) {
        t.pivot(i, j);
        break;
      }
    }
  }

  // Phase 2.
  t.obj.assign(t.cols + 1, 0.0);
  for (int j = 0; j < n; ++j) t.obj[j] = lp.c[j];
  for (int i = 0; i < m; ++i) {
    const double cb = t.obj[t.basis[i]];
    if (cb == 0.0) continue;
    for (int j = 0; j <= t.cols; ++j) t.obj[j] -= cb * t.a[i][j];
  }
  std::vector<bool> allowed(t.cols);
  for (int j = 0; j < t.cols; ++j) allowed[j] = !isArtificial[j];
  if (!t.run(allowed)) {
    out.status = LpSolution::kUnbounded;
    return out;
  }
  out.status = LpSolution::kOptimal;
  out.value = -t.obj[t.cols];
  out.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) out.x[t.basis[i]] = t.a[i][t.cols];
  }
  return out;
}

namespace {

struct AxisResult {
  bool feasible = false;
  double value = 0.0;
  double extent = 0.0;
};

// One axis of the placement LP: positions, extent, net min/max columns.
// code[p] = 1: first before second; 2: second before first; 0: free.
AxisResult solveAxis(const amsplace::Instance& inst,
                     const std::vector<amsplace::RectId>& ids,
                     const std::vector<double>& size,
                     const std::vector<std::pair<int, int>>& pairs,
                     const std::vector<int>& code, double cA, double scale) {
  const int n = static_cast<int>(ids.size());
  const int nets = static_cast<int>(inst.nets.size());
  DenseLp lp;
  lp.n = n + 1 + 2 * nets;
  lp.c.assign(lp.n, 0.0);
  const int ext = n;
  lp.c[ext] = cA;
  std::vector<int> index(inst.rectangles.size(), -1);
  for (int a = 0; a < n; ++a) index[ids[a]] = a;
  const auto row = [&](std::vector<std::pair<int, double>> terms, char sense,
                       double b) {
    LpRow r;
    r.a.assign(lp.n, 0.0);
    for (auto [j, v] : terms) r.a[j] += v;
    r.sense = sense;
    r.b = b;
    lp.rows.push_back(std::move(r));
  };
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [a, b] = pairs[p];
    const double gap = inst.distances(ids[a], ids[b]);
    if (code[p] == 1) row({{a, 1.0}, {b, -1.0}}, '<', -size[a] - gap);
    if (code[p] == 2) row({{b, 1.0}, {a, -1.0}}, '<', -size[b] - gap);
  }
  for (int a = 0; a < n; ++a) row({{a, 1.0}, {ext, -1.0}}, '<', -size[a]);
  for (int e = 0; e < nets; ++e) {
    const int hi = n + 1 + 2 * e;
    const int lo = hi + 1;
    lp.c[hi] = scale * inst.nets[e].cost;
    lp.c[lo] = -scale * inst.nets[e].cost;
    for (auto id : inst.nets[e].members) {
      const int a = index[id];
      row({{hi, 1.0}, {a, -1.0}}, '>', size[a] / 2.0);
      row({{lo, 1.0}, {a, -1.0}}, '<', size[a] / 2.0);
    }
  }
  const LpSolution s = solveDense(lp);
  AxisResult out;
  if (s.status != LpSolution::kOptimal) return out;
  out.feasible = true;
  out.value = s.value;
  out.extent = s.x[ext];
  return out;
}

}  // namespace

BruteForceResult bruteForce(const amsplace::Instance& inst,
                            const amsplace::CriterionWeights& weights) {
  if (!inst.symmetryGroups.empty() || !inst.blockages.empty() ||
      inst.aspect.lower > 0.0 || inst.aspect.hasUpper()) {
    throw std::invalid_argument("oracle handles plain instances only");
  }
  const auto ids = inst.selectableIds();
  const int n = static_cast<int>(ids.size());
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  }
  const int P = static_cast<int>(pairs.size());
  const double total = inst.totalNetCost();
  const double scale = total > 0.0 ? weights.connectivity / total : 0.0;

  std::vector<int> radix(n);
  long combos = 1;
  for (int a = 0; a < n; ++a) {
    radix[a] = static_cast<int>(inst.rectangles[ids[a]].variants.size());
    combos *= radix[a];
  }
  long codes = 1;
  for (int p = 0; p < P; ++p) codes *= 3;
  long assignments = 1;
  for (int p = 0; p < P; ++p) assignments *= 4;

  BruteForceResult best;
  std::vector<int> choice(n, 0);
  for (long combo = 0; combo < combos; ++combo) {
    long rest = combo;
    std::vector<double> w(n), h(n);
    for (int a = 0; a < n; ++a) {
      choice[a] = static_cast<int>(rest % radix[a]);
      rest /= radix[a];
      w[a] = inst.rectangles[ids[a]].variants[choice[a]].width;
      h[a] = inst.rectangles[ids[a]].variants[choice[a]].height;
    }
    std::unordered_map<long, AxisResult> memoX, memoY;
    const auto axis = [&](std::unordered_map<long, AxisResult>& memo,
                          const std::vector<double>& size, long key,
                          const std::vector<int>& code) -> const AxisResult& {
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
      return memo[key] =
                 solveAxis(inst, ids, size, pairs, code, weights.area, scale);
    };
    std::vector<int> cx(P), cy(P);
    for (long asg = 0; asg < assignments; ++asg) {
      long r = asg;
      long kx = 0, ky = 0;
      for (int p = 0; p < P; ++p) {
        const int rel = static_cast<int>(r % 4);  // 0 left, 1 below, 2 right, 3 above
        r /= 4;
        cx[p] = rel == 0 ? 1 : rel == 2 ? 2 : 0;
        cy[p] = rel == 1 ? 1 : rel == 3 ? 2 : 0;
        kx = kx * 3 + cx[p];
        ky = ky * 3 + cy[p];
      }
      const AxisResult& x = axis(memoX, w, kx, cx);
      if (!x.feasible) continue;
      const AxisResult& y = axis(memoY, h, ky, cy);
      if (!y.feasible) continue;
      const double value = x.value + y.value;
      if (!best.feasible || value < best.value) {
        best.feasible = true;
        best.value = value;
        best.halfPerimeter = x.extent + y.extent;
      }
    }
  }
  return best;
}

amsplace::Instance tinyInstance(std::uint64_t seed, int n, int maxVariants) {
  std::mt19937_64 rng(seed);
  const auto pick = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  amsplace::Instance inst;
  inst.name = "tiny" + std::to_string(seed);
  for (int i = 0; i < n; ++i) {
    amsplace::Rectangle r;
    r.id = i;
    const double w = pick(1, 6);
    const double h = pick(1, 6);
    r.variants.push_back({w, h});
    if (maxVariants > 1 && pick(0, 1) == 1) {
      if (w != h && pick(0, 1) == 1) {
        r.variants.push_back({h, w});
      } else {
        r.variants.push_back({static_cast<double>(pick(1, 6)),
                              static_cast<double>(pick(1, 6))});
      }
      if (r.variants[0] == r.variants[1]) r.variants.pop_back();
    }
    inst.rectangles.push_back(std::move(r));
  }
  const int nets = pick(1, 3);
  for (int e = 0; e < nets; ++e) {
    amsplace::Net net;
    net.cost = pick(1, 3);
    for (int i = 0; i < n; ++i) {
      if (pick(0, 1) == 1) net.members.push_back(i);
    }
    if (net.members.size() < 2) net.members = {0, n - 1};
    inst.nets.push_back(std::move(net));
  }
  inst.distances.setDefaultDistance(pick(0, 2) * 0.5);
  if (n >= 2 && pick(0, 1) == 1) inst.distances.setOverride(0, 1, pick(0, 2) * 0.5);
  return inst;
}

}  // namespace oracle
