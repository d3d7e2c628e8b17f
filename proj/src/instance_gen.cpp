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

#include "amsplace/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "amsplace/errors.hpp"
#include "json.hpp"

namespace amsplace {

namespace {

using Json = nlohmann::ordered_json;

// Library distributions are implementation-defined; these draws are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  int integer(int lo, int hi) {  // inclusive
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }
  bool chance(double p) { return uniform(0.0, 1.0) < p; }

 private:
  std::mt19937_64 engine_;
};

double snap(double v) { return std::max(0.1, std::round(v * 10.0) / 10.0); }

std::vector<Variant> smallVariants(const GenSpec& s, Rng& rng) {
  const double hi = s.minSize + 0.4 * (s.maxSize - s.minSize);
  const double w = snap(rng.uniform(s.minSize, hi));
  const double h = snap(rng.uniform(s.minSize, hi));
  if (w == h) return {{w, h}};
  return {{w, h}, {h, w}};
}

bool areaSpreadOk(const std::vector<Variant>& vs) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& v : vs) {
    lo = std::min(lo, v.width * v.height);
    hi = std::max(hi, v.width * v.height);
  }
  return (hi - lo) / lo <= 0.1;
}

std::vector<Variant> largeVariants(const GenSpec& s, Rng& rng) {
  const double lo = s.minSize + 0.3 * (s.maxSize - s.minSize);
  const int count = rng.integer(s.minVariants, s.maxVariants);
  for (;;) {
    const double area = rng.uniform(lo, s.maxSize) * rng.uniform(lo, s.maxSize);
    std::vector<Variant> out;
    for (int k = 0; k < count; ++k) {
      // Aspect ratios spread log-uniformly over [1/3, 3].
      const double ratio = std::exp(rng.uniform(-std::log(3.0), std::log(3.0)));
      const double w = snap(std::sqrt(area * ratio));
      const double h = snap(area / w);
      const Variant v{w, h};
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    if (areaSpreadOk(out)) return out;
  }
}

std::vector<Variant> randomVariants(const GenSpec& s, Rng& rng) {
  return rng.chance(s.smallFraction) ? smallVariants(s, rng)
                                     : largeVariants(s, rng);
}

Json toJson(const GenSpec& s) {
  Json groups = Json::array();
  for (const auto& g : s.groups) {
    groups.push_back(Json{{"pairs", g.pairs}, {"self", g.selfSymmetric}});
  }
  return Json{{"name", s.name},
              {"n", s.n},
              {"withSymmetry", s.withSymmetry},
              {"groups", groups},
              {"seed", s.seed},
              {"smallFraction", s.smallFraction},
              {"minVariants", s.minVariants},
              {"maxVariants", s.maxVariants},
              {"minSize", s.minSize},
              {"maxSize", s.maxSize},
              {"netsPerRectangle", s.netsPerRectangle},
              {"minNetSize", s.minNetSize},
              {"maxNetSize", s.maxNetSize},
              {"defaultDistance", s.defaultDistance},
              {"mergedPocketFraction", s.mergedPocketFraction},
              {"mergedPocketDistance", s.mergedPocketDistance}};
}

}  // namespace

void checkSpec(const GenSpec& s) {
  const auto fail = [](const std::string& what) { throw SpecError(what); };
  if (s.n < 2) fail("n must be at least 2");
  if (s.smallFraction < 0.0 || s.smallFraction > 1.0) {
    fail("smallFraction must lie in [0, 1]");
  }
  if (s.mergedPocketFraction < 0.0 || s.mergedPocketFraction > 1.0) {
    fail("mergedPocketFraction must lie in [0, 1]");
  }
  if (s.minVariants < 1 || s.maxVariants < s.minVariants) {
    fail("variant count range is empty");
  }
  if (!(s.minSize > 0.0) || s.maxSize < s.minSize) fail("size range is empty");
  if (s.minNetSize < 1 || s.maxNetSize < s.minNetSize) {
    fail("net size range is empty");
  }
  if (s.netsPerRectangle < 0.0) fail("netsPerRectangle must be nonnegative");
  if (s.withSymmetry) {
    int pairs = 0;
    for (const auto& g : s.groups) {
      if (g.pairs < 0 || g.selfSymmetric < 0 || g.pairs + g.selfSymmetric == 0) {
        fail("every symmetry group needs members");
      }
      pairs += g.pairs;
    }
    if (2 * pairs > s.n) {
      fail("symmetry pairs (" + std::to_string(pairs) + ") exceed n/2");
    }
  }
}

std::string genSpecToJson(const GenSpec& spec) { return toJson(spec).dump(2); }

GenSpec genSpecFromJson(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SpecError(std::string("genspec: ") + e.what());
  }
  GenSpec s;
  try {
    s.name = j.value("name", s.name);
    s.n = j.value("n", s.n);
    s.withSymmetry = j.value("withSymmetry", s.withSymmetry);
    if (j.contains("groups")) {
      for (const auto& g : j["groups"]) {
        s.groups.push_back({g.value("pairs", 2), g.value("self", 1)});
      }
    }
    s.seed = j.value("seed", s.seed);
    s.smallFraction = j.value("smallFraction", s.smallFraction);
    s.minVariants = j.value("minVariants", s.minVariants);
    s.maxVariants = j.value("maxVariants", s.maxVariants);
    s.minSize = j.value("minSize", s.minSize);
    s.maxSize = j.value("maxSize", s.maxSize);
    s.netsPerRectangle = j.value("netsPerRectangle", s.netsPerRectangle);
    s.minNetSize = j.value("minNetSize", s.minNetSize);
    s.maxNetSize = j.value("maxNetSize", s.maxNetSize);
    s.defaultDistance = j.value("defaultDistance", s.defaultDistance);
    s.mergedPocketFraction = j.value("mergedPocketFraction", s.mergedPocketFraction);
    s.mergedPocketDistance = j.value("mergedPocketDistance", s.mergedPocketDistance);
  } catch (const Json::exception& e) {
    throw SpecError(std::string("genspec: ") + e.what());
  }
  return s;
}

Instance generate(const GenSpec& spec) {
  checkSpec(spec);
  GenSpec s = spec;
  if (s.name.empty()) {
    s.name = "gen_n" + std::to_string(s.n) + "_s" + std::to_string(s.seed);
  }
  Rng rng(s.seed);
  Instance inst;
  inst.name = s.name;
  const auto add = [&](std::vector<Variant> variants) {
    Rectangle r;
    r.id = static_cast<RectId>(inst.rectangles.size());
    r.variants = std::move(variants);
    inst.rectangles.push_back(std::move(r));
    return inst.rectangles.back().id;
  };
  for (int i = 0; i < s.n; ++i) add(randomVariants(s, rng));
  if (s.withSymmetry) {
    for (const auto& g : s.groups) {
      SymmetryGroup group;
      for (int p = 0; p < g.pairs; ++p) {
        const auto variants = randomVariants(s, rng);
        const RectId a = add(variants);
        const RectId b = add(variants);
        group.pairs.emplace_back(a, b);
      }
      for (int k = 0; k < g.selfSymmetric; ++k) {
        group.selfSymmetric.push_back(add(randomVariants(s, rng)));
      }
      inst.symmetryGroups.push_back(std::move(group));
    }
  }

  const int total = static_cast<int>(inst.rectangles.size());
  const int nets = static_cast<int>(std::lround(s.netsPerRectangle * total));
  for (int e = 0; e < nets; ++e) {
    const int size = rng.integer(s.minNetSize, std::min(s.maxNetSize, total));
    std::vector<RectId> members;
    while (static_cast<int>(members.size()) < size) {
      const RectId id = rng.integer(0, total - 1);
      if (std::find(members.begin(), members.end(), id) == members.end()) {
        members.push_back(id);
      }
    }
    std::sort(members.begin(), members.end());
    inst.nets.push_back({std::move(members), static_cast<double>(rng.integer(1, 3))});
  }

  inst.distances.setDefaultDistance(s.defaultDistance);
  for (RectId i = 0; i < total; ++i) {
    for (RectId j = i + 1; j < total; ++j) {
      if (rng.chance(s.mergedPocketFraction)) {
        inst.distances.setOverride(i, j, s.mergedPocketDistance);
      }
    }
  }
  inst.genspec = toJson(s).dump();
  checkInstance(inst);
  return inst;
}

}  // namespace amsplace
