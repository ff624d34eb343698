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

// Forward arithmetic of the vision-language connector: multi-layer feature
// concatenation and pooling of a patch window into one vector, either by
// mean-query multi-head attention or by plain stacking.

#ifndef VLPIPE_CONNECTOR_H_
#define VLPIPE_CONNECTOR_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace vlpipe::connector {

using PatchFeature = std::vector<double>;

// Dense row-major matrix.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}

  double& operator()(int r, int c) {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
  double operator()(int r, int c) const {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
};

// y = m * x
std::vector<double> MatVec(const Matrix& m, std::span<const double> x);

// Bias-free projections. query/key/value map input_dim -> attn_dim, output
// maps attn_dim -> output dim. num_heads must divide attn_dim.
struct PoolingWeights {
  int num_heads = 1;
  Matrix query;
  Matrix key;
  Matrix value;
  Matrix output;

  int input_dim() const { return query.cols; }
  int attn_dim() const { return query.rows; }
  int head_dim() const { return attn_dim() / num_heads; }

  // Throws MismatchError on inconsistent shapes.
  void Validate() const;
};

// Per-patch concatenation [a_i ; b_i].
std::vector<PatchFeature> ConcatLayers(std::span<const PatchFeature> layer_a,
                                       std::span<const PatchFeature> layer_b);

// Softmax(q_h . k_h / sqrt(head_dim)) over the keys, for each head h.
// `query` and each key are already projected (attn_dim entries).
std::vector<std::vector<double>> AttentionWeights(
    std::span<const double> query, std::span<const std::vector<double>> keys,
    int num_heads);

struct AttentionPoolResult {
  PatchFeature output;
  // head_weights[h][k]: weight head h puts on window element k.
  std::vector<std::vector<double>> head_weights;
};

// The query is the projection of the window mean. `window_size` is
// pool_window^2.
AttentionPoolResult AttentionPoolDetailed(std::span<const PatchFeature> window,
                                          const PoolingWeights& weights,
                                          std::size_t window_size = 4);
PatchFeature AttentionPool(std::span<const PatchFeature> window,
                           const PoolingWeights& weights,
                           std::size_t window_size = 4);

// Concatenation of the window features in row-major window order.
PatchFeature StackPool(std::span<const PatchFeature> window,
                       std::size_t window_size = 4);

// JSON layout:
//   {"num_heads": H, "query": {"rows": r, "cols": c, "data": [...]}, ...}
// with keys query, key, value, output; data is row-major.
PoolingWeights WeightsFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const PoolingWeights& w);

// Flat binary layout, little-endian: magic "VLPW", uint32 num_heads, then
// for query, key, value, output: uint32 rows, uint32 cols, rows*cols
// float64 in row-major order.
PoolingWeights WeightsFromBinary(std::string_view bytes);
std::string ToBinary(const PoolingWeights& w);

}  // namespace vlpipe::connector

#endif  // VLPIPE_CONNECTOR_H_
