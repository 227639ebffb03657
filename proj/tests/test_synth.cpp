/* Copyright 2026 The Condsel Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "condsel/harness/synth.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "condsel/dcd.hpp"
#include "condsel/harness/bundle.hpp"
#include "condsel/harness/io.hpp"
#include "test_support.hpp"

namespace condsel {
namespace {

std::string Fingerprint(const SyntheticWorld& w) {
  std::string s = SerializeAccuracyCsv(w.table);
  for (const auto& [key, b] : w.bundles) s += SerializeBundle(b);
  return s;
}

TEST(SyntheticWorldTest, ShapeContract) {
  const SyntheticWorld w = GenerateSyntheticWorld({});
  EXPECT_EQ(w.table.models().size(), 8u);
  EXPECT_EQ(w.table.tasks().size(), 6u);
  EXPECT_EQ(w.bundles.size(), 48u);
  EXPECT_EQ(w.group_count, 3u);
  EXPECT_EQ(w.table.models().front(), "m00");
  EXPECT_EQ(w.table.tasks().back(), "t05");
  for (const auto& [key, b] : w.bundles) {
    EXPECT_EQ(b.block_count, 6u);
    EXPECT_EQ(b.sample_count(), 100u);
    ValidateBundle(b);
  }
  EXPECT_FALSE(w.noise_free());
}

TEST(SyntheticWorldTest, FixedSeedIsBitIdentical) {
  SynthParams p;
  p.seed = 9;
  EXPECT_EQ(Fingerprint(GenerateSyntheticWorld(p)), Fingerprint(GenerateSyntheticWorld(p)));
  SynthParams q = p;
  q.seed = 10;
  EXPECT_NE(Fingerprint(GenerateSyntheticWorld(p)), Fingerprint(GenerateSyntheticWorld(q)));
}

TEST(SyntheticWorldTest, NoiseFreeEqualDemandsShareOrdering) {
  SynthParams p;
  p.noise = 0.0;
  const SyntheticWorld w = GenerateSyntheticWorld(p);
  EXPECT_TRUE(w.noise_free());
  ASSERT_EQ(w.task_group[0], w.task_group[3]);
  EXPECT_EQ(w.demands[0], w.demands[3]);
  EXPECT_EQ(GroundTruthRanks(w.table, "t00"), GroundTruthRanks(w.table, "t03"));
}

TEST(SyntheticWorldTest, SameDemandTasksAreCloserThanOppositeOnes) {
  std::size_t wins = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SynthParams p;
    p.seed = seed;
    const SyntheticWorld w = GenerateSyntheticWorld(p);
    const auto& tasks = w.table.tasks();
    for (const auto& m : w.table.models()) {
      auto rep = [&](std::size_t t) {
        return MakeTaskRepresentation(w.bundles.get(m, tasks[t]).samples, m, tasks[t]);
      };
      for (std::size_t t = 0; t < tasks.size(); ++t) {
        const std::size_t g = w.task_group[t];
        const std::size_t opp = w.OppositeGroup(g);
        for (std::size_t s = 0; s < tasks.size(); ++s) {
          if (s == t || w.task_group[s] != g) continue;
          for (std::size_t o = 0; o < tasks.size(); ++o) {
            if (w.task_group[o] != opp) continue;
            ++total;
            if (Divergence(rep(t), rep(s), kDefaultEta).value < Divergence(rep(t), rep(o), kDefaultEta).value) ++wins;
          }
        }
      }
    }
  }
  EXPECT_GE(static_cast<double>(wins), 0.9 * static_cast<double>(total)) << wins << "/" << total;
}

TEST(SyntheticWorldTest, OppositeGroupIsFarthestCentre) {
  const SyntheticWorld w = GenerateSyntheticWorld({});
  EXPECT_EQ(w.OppositeGroup(0), 2u);
  EXPECT_EQ(w.OppositeGroup(2), 0u);
}

TEST(SyntheticWorldTest, ParameterErrors) {
  SynthParams p;
  p.n_models = 1;
  EXPECT_CONDSEL_ERROR(GenerateSyntheticWorld(p), ErrorKind::kParameter);
  p = {};
  p.blocks = 1;
  EXPECT_CONDSEL_ERROR(GenerateSyntheticWorld(p), ErrorKind::kParameter);
  p = {};
  p.noise = -0.1;
  EXPECT_CONDSEL_ERROR(GenerateSyntheticWorld(p), ErrorKind::kParameter);
}

}  // namespace
}  // namespace condsel
