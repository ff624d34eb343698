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

#ifndef VLPIPE_ASSIGNMENT_H_
#define VLPIPE_ASSIGNMENT_H_

#include <utility>
#include <vector>

namespace vlpipe::eval {

struct AssignmentResult {
  // (row, col) pairs sorted by row; min(rows, cols) of them.
  std::vector<std::pair<int, int>> pairs;
  double total_cost = 0.0;
  std::vector<int> unmatched_rows;
  std::vector<int> unmatched_cols;
};

// Minimum-cost rectangular linear assignment via Jonker-Volgenant style
// shortest augmenting paths with dual potentials. `cost` is row-major with
// every row the same length. Throws on empty or non-finite input.
AssignmentResult SolveAssignment(const std::vector<std::vector<double>>& cost);

}  // namespace vlpipe::eval

#endif  // VLPIPE_ASSIGNMENT_H_
