// Copyright 2026 The toolshap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <bit>
#include <set>

#include <toolshap/plan.hpp>

namespace toolshap {
namespace {

TEST(BuildPlan, EightToolsAtHalfSamplingCosts132Evaluations) {
  const CoalitionPlan plan = build_plan(8, 0.5, 42);
  EXPECT_EQ(plan.leave_one_out.size(), 8u);
  EXPECT_EQ(plan.sampled.size(), 123u);  // floor(0.5 * (256 - 8 - 1))
  EXPECT_EQ(plan.total_evaluations(), 132u);
}

TEST(BuildPlan, ThreeToolsAtFullSamplingCoversAllSubsets) {
  const CoalitionPlan plan = build_plan(3, 1.0, 7);
  EXPECT_EQ(plan.total_evaluations(), 8u);
  std::set<std::uint32_t> seen{plan.baseline_mask};
  seen.insert(plan.leave_one_out.begin(), plan.leave_one_out.end());
  seen.insert(plan.sampled.begin(), plan.sampled.end());
  EXPECT_EQ(seen.size(), 8u);  // every mask 0..7 exactly once
}

TEST(BuildPlan, TwoToolsAtHalfSamplingHasNoSampledTier) {
  const CoalitionPlan plan = build_plan(2, 0.5, 1);
  EXPECT_TRUE(plan.sampled.empty());
  EXPECT_EQ(plan.total_evaluations(), 3u);
}

TEST(BuildPlan, LeaveOneOutMasksDropExactlyOneTool) {
  const CoalitionPlan plan = build_plan(5, 0.3, 99);
  ASSERT_EQ(plan.leave_one_out.size(), 5u);
  for (int i = 0; i < 5; ++i) {
    const std::uint32_t mask = plan.leave_one_out[static_cast<std::size_t>(i)];
    EXPECT_EQ(std::popcount(mask), 4);
    EXPECT_FALSE((mask >> i) & 1u) << "tool " << i << " still present";
  }
}

TEST(BuildPlan, SampledTierIsDistinctAndInsideThePool) {
  const CoalitionPlan plan = build_plan(8, 0.5, 1234);
  std::set<std::uint32_t> seen;
  for (const std::uint32_t mask : plan.sampled) {
    EXPECT_TRUE(seen.insert(mask).second) << "duplicate mask " << mask;
    EXPECT_LE(std::popcount(mask), 6);  // never full or leave-one-out
  }
}

TEST(BuildPlan, SampledTierMayIncludeTheEmptySet) {
  // With rho = 1 the whole pool is taken, so the empty set must appear.
  const CoalitionPlan plan = build_plan(4, 1.0, 5);
  EXPECT_NE(std::find(plan.sampled.begin(), plan.sampled.end(), 0u),
            plan.sampled.end());
}

TEST(BuildPlan, IdenticalInputsGiveIdenticalPlans) {
  const CoalitionPlan a = build_plan(8, 0.5, 77);
  const CoalitionPlan b = build_plan(8, 0.5, 77);
  EXPECT_EQ(a.sampled, b.sampled);
  EXPECT_EQ(a.leave_one_out, b.leave_one_out);
  EXPECT_EQ(a.baseline_mask, b.baseline_mask);
}

TEST(BuildPlan, DifferentSeedsGiveDifferentSamples) {
  // Not guaranteed in principle, but for this pool size a collision would
  // be a 1-in-billions accident — and a likely determinism bug.
  const CoalitionPlan a = build_plan(8, 0.5, 77);
  const CoalitionPlan b = build_plan(8, 0.5, 78);
  EXPECT_NE(a.sampled, b.sampled);
}

TEST(BuildPlan, BudgetScalesLinearlyInRho) {
  const std::size_t at_quarter = build_plan(8, 0.25, 3).sampled.size();
  const std::size_t at_half = build_plan(8, 0.5, 3).sampled.size();
  const std::size_t at_full = build_plan(8, 1.0, 3).sampled.size();
  EXPECT_EQ(at_quarter, 61u);   // floor(0.25 * 247)
  EXPECT_EQ(at_half, 123u);     // floor(0.50 * 247)
  EXPECT_EQ(at_full, 247u);     // the whole pool
}

TEST(BuildPlan, RejectsOutOfRangeRho) {
  EXPECT_THROW(build_plan(4, 0.0, 1), InvalidRhoError);
  EXPECT_THROW(build_plan(4, -0.5, 1), InvalidRhoError);
  EXPECT_THROW(build_plan(4, 1.5, 1), InvalidRhoError);
}

TEST(BuildPlan, RejectsOutOfRangeToolCounts) {
  EXPECT_THROW(build_plan(0, 0.5, 1), CatalogTooLargeError);
  EXPECT_THROW(build_plan(31, 0.5, 1), CatalogTooLargeError);
}

TEST(BuildPlan, SingleToolPlanIsBaselinePlusOneLoo) {
  const CoalitionPlan plan = build_plan(1, 1.0, 1);
  EXPECT_EQ(plan.baseline_mask, 1u);
  ASSERT_EQ(plan.leave_one_out.size(), 1u);
  EXPECT_EQ(plan.leave_one_out[0], 0u);
  EXPECT_TRUE(plan.sampled.empty());  // pool size 2^1 - 1 - 1 = 0
}

TEST(BuildPlan, LargeCatalogSamplingStaysExactAndDistinct) {
  // n = 22 exercises the rejection-sampling path (pool > 2^20). Keep m
  // small via a tiny rho so the test stays fast.
  const double rho = 1e-4;  // m = floor(1e-4 * (2^22 - 23)) = 419
  const CoalitionPlan plan = build_plan(22, rho, 9);
  EXPECT_EQ(plan.sampled.size(), 419u);
  std::set<std::uint32_t> seen;
  for (const std::uint32_t mask : plan.sampled) {
    EXPECT_TRUE(seen.insert(mask).second);
    EXPECT_LE(std::popcount(mask), 20);
  }
  const CoalitionPlan again = build_plan(22, rho, 9);
  EXPECT_EQ(plan.sampled, again.sampled);
}

}  // namespace
}  // namespace toolshap
