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
#include "condsel/harness/theory.hpp"

#include <gtest/gtest.h>

namespace condsel {
namespace {

TEST(TheorySuiteTest, RandomInstancesHaveNoViolations) {
  const TheoryReport r = RunTheorySuite(1, 300, 100);
  EXPECT_TRUE(r.ok()) << FormatTheoryReport(r);
  EXPECT_GT(r.lemma_checked, 200u);
  EXPECT_GT(r.coverage_checked, 200u);
  EXPECT_EQ(r.optimality_checked, 300u * 100u);
  EXPECT_GE(r.worst_optimality_margin, -1e-12);
}

TEST(TheorySuiteTest, DeterministicAndFormatted) {
  const std::string a = FormatTheoryReport(RunTheorySuite(4, 50, 10));
  EXPECT_EQ(a, FormatTheoryReport(RunTheorySuite(4, 50, 10)));
  EXPECT_NE(a.find("tail-mass bound"), std::string::npos);
  EXPECT_EQ(a.find("FAIL"), std::string::npos) << a;
}

TEST(TheorySuiteTest, SimplexPointsAreOnTheSimplex) {
  CounterRng rng(3);
  for (int i = 0; i < 500; ++i) {
    const Vector p = RandomSimplexPoint(rng, 6);
    double s = 0.0;
    for (double x : p) {
      EXPECT_GE(x, 0.0);
      s += x;
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

}  // namespace
}  // namespace condsel
