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

#include "vlpipe/mask.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "vlpipe/error.h"

namespace vlpipe::eval {

Mask::Mask(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error("mask dimensions must be positive, got " +
                std::to_string(width) + "x" + std::to_string(height));
  }
  bits_.assign(static_cast<std::size_t>(width) * height, 0);
}

Mask Mask::FromRle(int width, int height,
                   const std::vector<std::int64_t>& counts) {
  Mask m(width, height);
  const std::int64_t total = static_cast<std::int64_t>(width) * height;
  std::int64_t pos = 0;
  bool value = false;
  for (std::int64_t run : counts) {
    if (run < 0) throw Error("negative run length in mask RLE");
    if (pos + run > total) {
      throw MismatchError("mask RLE runs exceed " + std::to_string(width) +
                          "x" + std::to_string(height) + " pixels");
    }
    if (value) {
      std::fill_n(m.bits_.begin() + pos, run, std::uint8_t{1});
    }
    pos += run;
    value = !value;
  }
  if (pos != total) {
    throw MismatchError("mask RLE runs sum to " + std::to_string(pos) +
                        ", expected " + std::to_string(total));
  }
  return m;
}

std::vector<std::int64_t> Mask::ToRle() const {
  std::vector<std::int64_t> counts;
  std::uint8_t current = 0;
  std::int64_t run = 0;
  for (std::uint8_t b : bits_) {
    if (b != current) {
      counts.push_back(run);
      run = 0;
      current = b;
    }
    ++run;
  }
  counts.push_back(run);
  return counts;
}

void Mask::FillRect(int x0, int y0, int x1, int y1) {
  x0 = std::clamp(x0, 0, width_);
  x1 = std::clamp(x1, 0, width_);
  y0 = std::clamp(y0, 0, height_);
  y1 = std::clamp(y1, 0, height_);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) set(x, y);
  }
}

std::int64_t Mask::CountSet() const {
  return std::accumulate(bits_.begin(), bits_.end(), std::int64_t{0});
}

Mask MaskFromJson(const nlohmann::json& j) {
  return Mask::FromRle(j.at("width").get<int>(), j.at("height").get<int>(),
                       j.at("counts").get<std::vector<std::int64_t>>());
}

nlohmann::json ToJson(const Mask& m) {
  return {{"width", m.width()}, {"height", m.height()}, {"counts", m.ToRle()}};
}

}  // namespace vlpipe::eval
