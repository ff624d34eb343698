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

#include "vlpipe/connector.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>

#include "vlpipe/error.h"

namespace vlpipe::connector {
namespace {

void CheckFinite(std::span<const PatchFeature> window) {
  for (const auto& f : window) {
    for (double v : f) {
      if (!std::isfinite(v)) throw Error("non-finite patch feature entry");
    }
  }
}

void CheckWindow(std::span<const PatchFeature> window,
                 std::size_t window_size) {
  if (window.size() != window_size) {
    throw MismatchError("pooling window has " + std::to_string(window.size()) +
                        " features, expected " + std::to_string(window_size));
  }
  for (const auto& f : window) {
    if (f.size() != window.front().size()) {
      throw MismatchError("pooling window features differ in dimension");
    }
  }
}

Matrix MatrixFromJson(const nlohmann::json& j, const char* name) {
  if (!j.contains(name)) {
    throw Error(std::string("weights missing matrix '") + name + "'");
  }
  const auto& m = j.at(name);
  Matrix out(m.at("rows").get<int>(), m.at("cols").get<int>());
  const auto& data = m.at("data");
  if (data.size() != out.data.size()) {
    throw MismatchError(std::string("matrix '") + name + "' declares " +
                        std::to_string(out.data.size()) + " entries but has " +
                        std::to_string(data.size()));
  }
  for (std::size_t i = 0; i < data.size(); ++i) out.data[i] = data[i].get<double>();
  return out;
}

nlohmann::json MatrixToJson(const Matrix& m) {
  return {{"rows", m.rows}, {"cols", m.cols}, {"data", m.data}};
}

static_assert(std::endian::native == std::endian::little,
              "binary weight layout assumes a little-endian host");

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T Read() {
    if (pos_ + sizeof(T) > bytes_.size()) {
      throw ParseError("truncated weight file", pos_);
    }
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::size_t pos() const { return pos_; }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

template <typename T>
void Append(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

}  // namespace

std::vector<double> MatVec(const Matrix& m, std::span<const double> x) {
  if (static_cast<int>(x.size()) != m.cols) {
    throw MismatchError("matrix has " + std::to_string(m.cols) +
                        " columns, vector has " + std::to_string(x.size()));
  }
  std::vector<double> y(static_cast<std::size_t>(m.rows), 0.0);
  for (int r = 0; r < m.rows; ++r) {
    double acc = 0.0;
    for (int c = 0; c < m.cols; ++c) acc += m(r, c) * x[static_cast<std::size_t>(c)];
    y[static_cast<std::size_t>(r)] = acc;
  }
  return y;
}

void PoolingWeights::Validate() const {
  if (num_heads <= 0) throw MismatchError("num_heads must be positive");
  if (query.rows <= 0 || query.cols <= 0) {
    throw MismatchError("query projection must be non-empty");
  }
  if (key.rows != query.rows || key.cols != query.cols ||
      value.rows != query.rows || value.cols != query.cols) {
    throw MismatchError("query/key/value projections must share a shape");
  }
  if (output.cols != attn_dim() || output.rows <= 0) {
    throw MismatchError("output projection must take attn_dim inputs");
  }
  if (attn_dim() % num_heads != 0) {
    throw MismatchError("num_heads must divide the attention dimension");
  }
}

std::vector<PatchFeature> ConcatLayers(std::span<const PatchFeature> layer_a,
                                       std::span<const PatchFeature> layer_b) {
  if (layer_a.size() != layer_b.size()) {
    throw MismatchError("layer patch counts differ: " +
                        std::to_string(layer_a.size()) + " vs " +
                        std::to_string(layer_b.size()));
  }
  std::vector<PatchFeature> out;
  out.reserve(layer_a.size());
  for (std::size_t i = 0; i < layer_a.size(); ++i) {
    if (layer_a[i].size() != layer_a.front().size() ||
        layer_b[i].size() != layer_b.front().size()) {
      throw MismatchError("patch " + std::to_string(i) +
                          " has a different dimension than patch 0");
    }
    PatchFeature f;
    f.reserve(layer_a[i].size() + layer_b[i].size());
    f.insert(f.end(), layer_a[i].begin(), layer_a[i].end());
    f.insert(f.end(), layer_b[i].begin(), layer_b[i].end());
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<std::vector<double>> AttentionWeights(
    std::span<const double> query, std::span<const std::vector<double>> keys,
    int num_heads) {
  const std::size_t dim = query.size();
  if (num_heads <= 0 || dim % static_cast<std::size_t>(num_heads) != 0) {
    throw MismatchError("num_heads must divide the attention dimension");
  }
  const std::size_t head_dim = dim / static_cast<std::size_t>(num_heads);
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(head_dim));
  std::vector<std::vector<double>> weights(
      static_cast<std::size_t>(num_heads), std::vector<double>(keys.size()));
  for (std::size_t h = 0; h < weights.size(); ++h) {
    const std::size_t lo = h * head_dim;
    auto& w = weights[h];
    double max_logit = -INFINITY;
    for (std::size_t k = 0; k < keys.size(); ++k) {
      if (keys[k].size() != dim) throw MismatchError("key dimension mismatch");
      double dot = 0.0;
      for (std::size_t i = lo; i < lo + head_dim; ++i) dot += query[i] * keys[k][i];
      w[k] = dot * inv_sqrt;
      max_logit = std::max(max_logit, w[k]);
    }
    double total = 0.0;
    for (double& v : w) {
      v = std::exp(v - max_logit);
      total += v;
    }
    for (double& v : w) v /= total;
  }
  return weights;
}

AttentionPoolResult AttentionPoolDetailed(std::span<const PatchFeature> window,
                                          const PoolingWeights& weights,
                                          std::size_t window_size) {
  weights.Validate();
  CheckWindow(window, window_size);
  CheckFinite(window);
  const std::size_t d = window.front().size();
  if (static_cast<int>(d) != weights.input_dim()) {
    throw MismatchError("feature dimension " + std::to_string(d) +
                        " does not match weights input dimension " +
                        std::to_string(weights.input_dim()));
  }

  std::vector<double> mean(d, 0.0);
  for (const auto& f : window) {
    for (std::size_t i = 0; i < d; ++i) mean[i] += f[i];
  }
  for (double& v : mean) v /= static_cast<double>(window.size());

  const std::vector<double> query = MatVec(weights.query, mean);
  std::vector<std::vector<double>> keys;
  std::vector<std::vector<double>> values;
  for (const auto& f : window) {
    keys.push_back(MatVec(weights.key, f));
    values.push_back(MatVec(weights.value, f));
  }

  AttentionPoolResult result;
  result.head_weights = AttentionWeights(query, keys, weights.num_heads);
  const std::size_t head_dim = static_cast<std::size_t>(weights.head_dim());
  std::vector<double> attended(static_cast<std::size_t>(weights.attn_dim()), 0.0);
  for (std::size_t h = 0; h < result.head_weights.size(); ++h) {
    const std::size_t lo = h * head_dim;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double a = result.head_weights[h][k];
      for (std::size_t i = lo; i < lo + head_dim; ++i) attended[i] += a * values[k][i];
    }
  }
  result.output = MatVec(weights.output, attended);
  return result;
}

PatchFeature AttentionPool(std::span<const PatchFeature> window,
                           const PoolingWeights& weights,
                           std::size_t window_size) {
  return AttentionPoolDetailed(window, weights, window_size).output;
}

PatchFeature StackPool(std::span<const PatchFeature> window,
                       std::size_t window_size) {
  CheckWindow(window, window_size);
  PatchFeature out;
  out.reserve(window.size() * window.front().size());
  for (const auto& f : window) out.insert(out.end(), f.begin(), f.end());
  return out;
}

PoolingWeights WeightsFromJson(const nlohmann::json& j) {
  PoolingWeights w;
  w.num_heads = j.at("num_heads").get<int>();
  w.query = MatrixFromJson(j, "query");
  w.key = MatrixFromJson(j, "key");
  w.value = MatrixFromJson(j, "value");
  w.output = MatrixFromJson(j, "output");
  w.Validate();
  return w;
}

nlohmann::json ToJson(const PoolingWeights& w) {
  return {{"num_heads", w.num_heads},
          {"query", MatrixToJson(w.query)},
          {"key", MatrixToJson(w.key)},
          {"value", MatrixToJson(w.value)},
          {"output", MatrixToJson(w.output)}};
}

PoolingWeights WeightsFromBinary(std::string_view bytes) {
  if (bytes.substr(0, 4) != "VLPW") throw ParseError("bad weight file magic", 0);
  ByteReader reader(bytes.substr(4));
  PoolingWeights w;
  w.num_heads = static_cast<int>(reader.Read<std::uint32_t>());
  for (Matrix* m : {&w.query, &w.key, &w.value, &w.output}) {
    const auto rows = reader.Read<std::uint32_t>();
    const auto cols = reader.Read<std::uint32_t>();
    *m = Matrix(static_cast<int>(rows), static_cast<int>(cols));
    for (double& v : m->data) v = reader.Read<double>();
  }
  if (!reader.done()) throw ParseError("trailing bytes in weight file", reader.pos() + 4);
  w.Validate();
  return w;
}

std::string ToBinary(const PoolingWeights& w) {
  std::string out = "VLPW";
  Append(out, static_cast<std::uint32_t>(w.num_heads));
  for (const Matrix* m : {&w.query, &w.key, &w.value, &w.output}) {
    Append(out, static_cast<std::uint32_t>(m->rows));
    Append(out, static_cast<std::uint32_t>(m->cols));
    for (double v : m->data) Append(out, v);
  }
  return out;
}

}  // namespace vlpipe::connector
