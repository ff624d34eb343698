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

#ifndef VLPIPE_MASK_H_
#define VLPIPE_MASK_H_

#include <cstdint>
#include <vector>

#include "json.hpp"

namespace vlpipe::eval {

// Binary raster, row-major. The run-length form alternates unset/set runs
// starting with an unset run (which may be 0), scanning row by row.
class Mask {
 public:
  Mask() = default;
  Mask(int width, int height);

  static Mask FromRle(int width, int height,
                      const std::vector<std::int64_t>& counts);
  std::vector<std::int64_t> ToRle() const;

  int width() const { return width_; }
  int height() const { return height_; }
  bool at(int x, int y) const {
    return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  void set(int x, int y, bool v = true) {
    bits_[static_cast<std::size_t>(y) * width_ + x] = v ? 1 : 0;
  }
  // Fills the half-open rectangle [x0, x1) x [y0, y1), clipped to bounds.
  void FillRect(int x0, int y0, int x1, int y1);
  std::int64_t CountSet() const;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

// {"width": w, "height": h, "counts": [...]}
Mask MaskFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const Mask& m);

}  // namespace vlpipe::eval

#endif  // VLPIPE_MASK_H_
