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

#include <algorithm>

#include "amsplace/errors.hpp"
#include "amsplace/instance_gen.hpp"
#include "amsplace/io.hpp"

namespace amsplace {
namespace {

TEST(Generate, Deterministic) {
  GenSpec spec;
  spec.n = 2;
  spec.seed = 99;
  EXPECT_EQ(serializeInstance(generate(spec)), serializeInstance(generate(spec)));
  GenSpec other = spec;
  other.seed = 100;
  EXPECT_NE(serializeInstance(generate(spec)), serializeInstance(generate(other)));
}

TEST(Generate, DefaultNameAndEmbeddedSpec) {
  GenSpec spec;
  spec.n = 5;
  spec.seed = 4;
  const Instance inst = generate(spec);
  EXPECT_EQ(inst.name, "gen_n5_s4");
  const GenSpec back = genSpecFromJson(inst.genspec);
  EXPECT_EQ(back.n, 5);
  EXPECT_EQ(back.seed, 4u);
  EXPECT_EQ(serializeInstance(generate(back)), serializeInstance(inst));
}

TEST(Generate, SquareSmallRectangleHasOneVariant) {
  // Sizes collapse to a single value, so every small device is square.
  GenSpec spec;
  spec.n = 20;
  spec.smallFraction = 1.0;
  spec.minSize = 3.0;
  spec.maxSize = 3.0;
  const Instance inst = generate(spec);
  for (const auto& r : inst.rectangles) {
    ASSERT_EQ(r.variants.size(), 1u);
    EXPECT_EQ(r.variants[0], (Variant{3.0, 3.0}));
  }
}

TEST(Generate, Fuzz) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    GenSpec spec;
    spec.n = 2 + static_cast<int>(seed % 30);
    spec.seed = seed;
    if (seed % 3 == 0) {
      spec.withSymmetry = true;
      spec.groups = {{1, 1}, {static_cast<int>(seed % 2), 1}};
    }
    const Instance inst = generate(spec);
    EXPECT_NO_THROW(checkInstance(inst));
    int expect = spec.n;
    for (const auto& g : spec.groups) expect += 2 * g.pairs + g.selfSymmetric;
    EXPECT_EQ(static_cast<int>(inst.rectangles.size()), expect);
    for (const auto& r : inst.rectangles) {
      for (const auto& v : r.variants) {
        EXPECT_GT(v.width, 0.0);
        EXPECT_GT(v.height, 0.0);
      }
      // No duplicate variants.
      for (std::size_t a = 0; a < r.variants.size(); ++a) {
        for (std::size_t b = a + 1; b < r.variants.size(); ++b) {
          EXPECT_NE(r.variants[a], r.variants[b]);
        }
      }
    }
    for (const auto& g : inst.symmetryGroups) {
      for (const auto& [i, j] : g.pairs) {
        EXPECT_EQ(inst.rectangles[i].variants, inst.rectangles[j].variants);
      }
    }
  }
}

TEST(Generate, LargeDevicesKeepNearConstantArea) {
  GenSpec spec;
  spec.n = 60;
  spec.seed = 5;
  spec.smallFraction = 0.0;
  const Instance inst = generate(spec);
  for (const auto& r : inst.rectangles) {
    double lo = 1e300, hi = 0;
    for (const auto& v : r.variants) {
      lo = std::min(lo, v.width * v.height);
      hi = std::max(hi, v.width * v.height);
    }
    EXPECT_LE((hi - lo) / lo, 0.1 + 1e-12);
  }
}

TEST(CheckSpec, Contradictions) {
  GenSpec spec;
  spec.n = 4;
  spec.withSymmetry = true;
  spec.groups = {{3, 0}};
  EXPECT_THROW(checkSpec(spec), SpecError);
  GenSpec sizes;
  sizes.minSize = 5;
  sizes.maxSize = 2;
  EXPECT_THROW(generate(sizes), SpecError);
  GenSpec variants;
  variants.minVariants = 4;
  variants.maxVariants = 3;
  EXPECT_THROW(checkSpec(variants), SpecError);
  EXPECT_THROW(genSpecFromJson("[1, 2"), SpecError);
  EXPECT_THROW(genSpecFromJson(R"({"n": "many"})"), SpecError);
}

}  // namespace
}  // namespace amsplace
