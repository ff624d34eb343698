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

// Multi-crop tiling of an image into overlapping square crops, and the
// vision-token sequence built from the resulting patch lattice.
//
// All geometry is integer pixel / patch arithmetic. The grid scale is kept
// as an exact rational so grid selection never depends on float rounding.

#ifndef VLPIPE_IMAGE_LAYOUT_H_
#define VLPIPE_IMAGE_LAYOUT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace vlpipe::layout {

struct LayoutConfig {
  int crop_size_px = 336;
  int patch_size_px = 14;
  // Patches shared by two neighbouring crops. Each neighbour drops half.
  int overlap_margin_patches = 4;
  int pool_window = 2;
  int max_crops = 12;

  int patches_per_side() const { return crop_size_px / patch_size_px; }
  int overlap_px() const { return overlap_margin_patches * patch_size_px; }
  // Distance between the origins of adjacent crops.
  int crop_step_px() const { return crop_size_px - overlap_px(); }

  // Throws ConfigError naming the first violated constraint.
  void Validate() const;
};

// Exact non-negative rational num/den with den > 0.
struct Scale {
  std::int64_t num = 1;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / den; }
  friend bool operator<(const Scale& a, const Scale& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator==(const Scale& a, const Scale& b) {
    return a.num * b.den == b.num * a.den;
  }
};

struct GridChoice {
  int rows = 1;
  int cols = 1;
  Scale scale;
};

// Pixel extent of a rows x cols grid of overlapping crops.
int GridWidthPx(int cols, const LayoutConfig& config);
int GridHeightPx(int rows, const LayoutConfig& config);

// Picks the grid needing the least up-scaling; if no grid within
// max_crops covers the image, the one needing the least down-scaling.
// Ties: fewer crops, then smaller pixel area, then fewer rows.
GridChoice SelectGrid(int image_w, int image_h, const LayoutConfig& config);

enum class PaddingClass : std::uint8_t { kImage, kPartial, kPadding };

// Half-open range [begin, end) of patch indices.
struct PatchRange {
  int begin = 0;
  int end = 0;
  int size() const { return end - begin; }
};

struct Crop {
  int grid_row = 0;
  int grid_col = 0;
  // Top-left corner in the padded grid image.
  int origin_x = 0;
  int origin_y = 0;
  // Crop-local patch rows/cols that survive overlap trimming.
  PatchRange kept_rows;
  PatchRange kept_cols;
  // patches_per_side^2 entries, row-major over the untrimmed crop.
  std::vector<PaddingClass> padding;
};

struct CropLayout {
  LayoutConfig config;
  int image_w = 0;
  int image_h = 0;
  int grid_rows = 1;
  int grid_cols = 1;
  Scale scale;
  int grid_w = 0;
  int grid_h = 0;
  int scaled_w = 0;
  int scaled_h = 0;
  int pad_left = 0;
  int pad_top = 0;
  int pad_right = 0;
  int pad_bottom = 0;
  // Row-major over the grid: crops[r * grid_cols + c].
  std::vector<Crop> crops;

  const Crop& crop(int row, int col) const {
    return crops[static_cast<std::size_t>(row * grid_cols + col)];
  }
  // Offset of a crop's local patch lattice inside the global kept lattice.
  int GlobalPatchRowOffset(int grid_row) const;
  int GlobalPatchColOffset(int grid_col) const;
  int global_patch_rows() const;
  int global_patch_cols() const;
};

CropLayout BuildCropLayout(int image_w, int image_h,
                           const LayoutConfig& config);

enum class TokenKind : std::uint8_t {
  kImageStart,
  kImageEnd,
  kRowEnd,
  kLowResPatch,
  kHighResPatch,
};

// `row`/`col` are pooled coordinates. For high-res tokens they are local to
// `crop` (pooled kept window); low-res tokens have crop == -1.
struct VisionToken {
  TokenKind kind = TokenKind::kImageStart;
  int crop = -1;
  int row = -1;
  int col = -1;

  friend bool operator==(const VisionToken&, const VisionToken&) = default;
};

struct TokenLayout {
  std::vector<VisionToken> tokens;
  int low_res_rows = 0;
  int low_res_cols = 0;
  int high_res_rows = 0;
  int high_res_cols = 0;
  // Pooled tokens of a crop before overlap trimming, e.g. 12x12 = 144.
  int pooled_per_untrimmed_crop = 0;
  // Pooled tokens each crop actually contributes after trimming.
  std::vector<int> pooled_per_crop;

  int low_res_pooled() const { return low_res_rows * low_res_cols; }
  int high_res_pooled() const { return high_res_rows * high_res_cols; }
  int total_tokens() const { return static_cast<int>(tokens.size()); }
  int CountKind(TokenKind kind) const;
};

// Throws InvariantError if a kept window is not divisible by pool_window.
TokenLayout BuildTokenLayout(const CropLayout& layout);

char PaddingClassCode(PaddingClass c);
std::string TokenKindName(TokenKind kind);

nlohmann::json ToJson(const LayoutConfig& config);
nlohmann::json ToJson(const CropLayout& layout);
nlohmann::json ToJson(const TokenLayout& tokens);

}  // namespace vlpipe::layout

#endif  // VLPIPE_IMAGE_LAYOUT_H_
