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
#include <string>

#include "vlpipe/error.h"

namespace vlpipe::eval {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Square-or-wide problem (rows <= cols). Returns col4row.
class ShortestPathSolver {
 public:
  ShortestPathSolver(const std::vector<double>& cost, int rows, int cols)
      : cost_(cost),
        rows_(rows),
        cols_(cols),
        u_(rows, 0.0),
        v_(cols, 0.0),
        shortest_(cols),
        path_(cols, -1),
        col4row_(rows, -1),
        row4col_(cols, -1),
        visited_rows_(rows),
        visited_cols_(cols),
        remaining_(cols) {}

  std::vector<int> Solve() {
    for (int row = 0; row < rows_; ++row) {
      double min_val = 0.0;
      const int sink = AugmentingPath(row, min_val);
      if (sink < 0) throw Error("assignment problem is infeasible");

      u_[row] += min_val;
      for (int i = 0; i < rows_; ++i) {
        if (visited_rows_[i] && i != row) {
          u_[i] += min_val - shortest_[col4row_[i]];
        }
      }
      for (int j = 0; j < cols_; ++j) {
        if (visited_cols_[j]) v_[j] -= min_val - shortest_[j];
      }

      int j = sink;
      while (true) {
        const int i = path_[j];
        row4col_[j] = i;
        std::swap(col4row_[i], j);
        if (i == row) break;
      }
    }
    return col4row_;
  }

 private:
  double Cost(int i, int j) const {
    return cost_[static_cast<std::size_t>(i) * cols_ + j];
  }

  // Dijkstra over reduced costs from `start`; returns the free column
  // reached first, or -1 if none is reachable.
  int AugmentingPath(int start, double& min_val) {
    int num_remaining = cols_;
    for (int it = 0; it < cols_; ++it) remaining_[it] = cols_ - it - 1;
    std::fill(visited_rows_.begin(), visited_rows_.end(), false);
    std::fill(visited_cols_.begin(), visited_cols_.end(), false);
    std::fill(shortest_.begin(), shortest_.end(), kInf);

    int sink = -1;
    int i = start;
    while (sink == -1) {
      int index = -1;
      double lowest = kInf;
      visited_rows_[i] = true;
      for (int it = 0; it < num_remaining; ++it) {
        const int j = remaining_[it];
        const double r = min_val + Cost(i, j) - u_[i] - v_[j];
        if (r < shortest_[j]) {
          path_[j] = i;
          shortest_[j] = r;
        }
        if (shortest_[j] < lowest ||
            (shortest_[j] == lowest && row4col_[j] == -1)) {
          lowest = shortest_[j];
          index = it;
        }
      }
      min_val = lowest;
      if (min_val == kInf) return -1;
      const int j = remaining_[index];
      if (row4col_[j] == -1) {
        sink = j;
      } else {
        i = row4col_[j];
      }
      visited_cols_[j] = true;
      remaining_[index] = remaining_[--num_remaining];
    }
    return sink;
  }

  const std::vector<double>& cost_;
  int rows_;
  int cols_;
  std::vector<double> u_;
  std::vector<double> v_;
  std::vector<double> shortest_;
  std::vector<int> path_;
  std::vector<int> col4row_;
  std::vector<int> row4col_;
  std::vector<bool> visited_rows_;
  std::vector<bool> visited_cols_;
  std::vector<int> remaining_;
};

}  // namespace

AssignmentResult SolveAssignment(const std::vector<std::vector<double>>& cost) {
  if (cost.empty() || cost.front().empty()) {
    throw DegenerateInputError("assignment needs at least one row and column");
  }
  const int rows = static_cast<int>(cost.size());
  const int cols = static_cast<int>(cost.front().size());
  for (const auto& row : cost) {
    if (static_cast<int>(row.size()) != cols) {
      throw MismatchError("cost matrix rows differ in length");
    }
    for (double c : row) {
      if (!std::isfinite(c)) throw Error("cost matrix has a non-finite entry");
    }
  }

  // Solve with the short side as rows.
  const bool transpose = rows > cols;
  const int n = transpose ? cols : rows;
  const int m = transpose ? rows : cols;
  std::vector<double> flat(static_cast<std::size_t>(n) * m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      flat[static_cast<std::size_t>(i) * m + j] = transpose ? cost[j][i] : cost[i][j];
    }
  }
  const std::vector<int> col4row = ShortestPathSolver(flat, n, m).Solve();

  AssignmentResult result;
  std::vector<bool> row_used(rows, false);
  std::vector<bool> col_used(cols, false);
  for (int i = 0; i < n; ++i) {
    const int r = transpose ? col4row[i] : i;
    const int c = transpose ? i : col4row[i];
    result.pairs.emplace_back(r, c);
    row_used[r] = true;
    col_used[c] = true;
  }
  std::sort(result.pairs.begin(), result.pairs.end());
  for (const auto& [r, c] : result.pairs) result.total_cost += cost[r][c];
  for (int r = 0; r < rows; ++r) {
    if (!row_used[r]) result.unmatched_rows.push_back(r);
  }
  for (int c = 0; c < cols; ++c) {
    if (!col_used[c]) result.unmatched_cols.push_back(c);
  }
  return result;
}

}  // namespace vlpipe::eval
