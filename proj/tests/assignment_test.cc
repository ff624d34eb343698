// Copyright 2026 The vlpipe Authors.
//
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

#include "vlpipe/assignment.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "oracles.h"
#include "vlpipe/error.h"

namespace vlpipe::eval {
namespace {

using ::vlpipe::testing::BruteForceAssignmentCost;

double CostOfPairs(const std::vector<std::vector<double>>& cost,
                   const AssignmentResult& r) {
  double total = 0.0;
  for (const auto& [row, col] : r.pairs) total += cost[row][col];
  return total;
}

void ExpectWellFormed(const std::vector<std::vector<double>>& cost,
                      const AssignmentResult& r) {
  const std::size_t rows = cost.size();
  const std::size_t cols = cost[0].size();
  ASSERT_EQ(r.pairs.size(), std::min(rows, cols));
  std::set<int> used_rows;
  std::set<int> used_cols;
  for (const auto& [row, col] : r.pairs) {
    ASSERT_TRUE(used_rows.insert(row).second);
    ASSERT_TRUE(used_cols.insert(col).second);
  }
  ASSERT_EQ(r.unmatched_rows.size() + r.pairs.size(), rows);
  ASSERT_EQ(r.unmatched_cols.size() + r.pairs.size(), cols);
  for (int row : r.unmatched_rows) ASSERT_EQ(used_rows.count(row), 0u);
  for (int col : r.unmatched_cols) ASSERT_EQ(used_cols.count(col), 0u);
  ASSERT_DOUBLE_EQ(CostOfPairs(cost, r), r.total_cost);
}

TEST(SolveAssignmentTest, SingleCell) {
  const AssignmentResult r = SolveAssignment({{5.0}});
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_EQ(r.pairs[0], (std::pair<int, int>{0, 0}));
  EXPECT_EQ(r.total_cost, 5.0);
}

TEST(SolveAssignmentTest, DiagonalDominance) {
  const AssignmentResult r = SolveAssignment({{1, 2}, {2, 1}});
  EXPECT_EQ(r.pairs, (std::vector<std::pair<int, int>>{{0, 0}, {1, 1}}));
  EXPECT_EQ(r.total_cost, 2.0);
}

TEST(SolveAssignmentTest, RectangularLeavesSurplusUnmatched) {
  const AssignmentResult wide = SolveAssignment({{4, 1, 3}});
  EXPECT_EQ(wide.pairs, (std::vector<std::pair<int, int>>{{0, 1}}));
  EXPECT_EQ(wide.unmatched_cols, (std::vector<int>{0, 2}));
  const AssignmentResult tall = SolveAssignment({{4}, {1}, {3}});
  EXPECT_EQ(tall.pairs, (std::vector<std::pair<int, int>>{{1, 0}}));
  EXPECT_EQ(tall.unmatched_rows, (std::vector<int>{0, 2}));
}

TEST(SolveAssignmentTest, RejectsBadInput) {
  EXPECT_THROW(SolveAssignment({}), Error);
  EXPECT_THROW(SolveAssignment({{}}), Error);
  EXPECT_THROW(SolveAssignment({{1, 2}, {3}}), Error);
  EXPECT_THROW(SolveAssignment({{1, std::numeric_limits<double>::infinity()}}),
               Error);
  EXPECT_THROW(SolveAssignment({{std::nan("")}}), Error);
}

TEST(SolveAssignmentTest, MatchesBruteForceOnRandomMatrices) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(1, 7);
  std::uniform_int_distribution<int> small_int(0, 9);
  std::uniform_real_distribution<double> real(-50.0, 50.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int rows = size(rng);
    const int cols = size(rng);
    // Integer costs in half the trials force many ties.
    const bool ints = trial % 2 == 0;
    std::vector<std::vector<double>> cost(rows, std::vector<double>(cols));
    for (auto& row : cost) {
      for (double& v : row) v = ints ? small_int(rng) : real(rng);
    }
    const AssignmentResult r = SolveAssignment(cost);
    ExpectWellFormed(cost, r);
    const double want = BruteForceAssignmentCost(cost);
    if (ints) {
      ASSERT_EQ(r.total_cost, want);
    } else {
      ASSERT_NEAR(r.total_cost, want, 1e-9);
    }
  }
}

TEST(SolveAssignmentTest, RowPermutationPermutesMatching) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> real(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 6;
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (auto& row : cost) {
      for (double& v : row) v = real(rng);
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<double>> permuted(n);
    for (int i = 0; i < n; ++i) permuted[i] = cost[perm[i]];

    const AssignmentResult a = SolveAssignment(cost);
    const AssignmentResult b = SolveAssignment(permuted);
    ASSERT_NEAR(a.total_cost, b.total_cost, 1e-12);
    // Continuous random costs make the optimum unique.
    for (const auto& [row, col] : b.pairs) {
      ASSERT_EQ(a.pairs[perm[row]].second, col);
    }
  }
}

}  // namespace
}  // namespace vlpipe::eval
