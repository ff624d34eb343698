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

#include "vlpipe/image_layout.h"

#include <algorithm>
#include <string>
#include <tuple>

#include "vlpipe/error.h"

namespace vlpipe::layout {
namespace {

// Nearest-integer rounding of value * num / den, halves rounded up.
int RoundScaled(int value, const Scale& s) {
  return static_cast<int>((2 * value * s.num + s.den) / (2 * s.den));
}

PaddingClass ClassifyPatch(int x0, int y0, int size, const CropLayout& l) {
  const int ix0 = l.pad_left;
  const int iy0 = l.pad_top;
  const int ix1 = ix0 + l.scaled_w;
  const int iy1 = iy0 + l.scaled_h;
  const int ox = std::max(0, std::min(x0 + size, ix1) - std::max(x0, ix0));
  const int oy = std::max(0, std::min(y0 + size, iy1) - std::max(y0, iy0));
  if (ox == 0 || oy == 0) return PaddingClass::kPadding;
  if (ox == size && oy == size) return PaddingClass::kImage;
  return PaddingClass::kPartial;
}

// For each pooled index along one axis of the global kept lattice, the grid
// line that owns it and the crop-local pooled index.
std::vector<std::pair<int, int>> PooledAxisOwners(
    int grid_lines, bool rows, const CropLayout& layout) {
  const int pool = layout.config.pool_window;
  std::vector<std::pair<int, int>> owners;
  for (int g = 0; g < grid_lines; ++g) {
    const Crop& c = rows ? layout.crop(g, 0) : layout.crop(0, g);
    const PatchRange kept = rows ? c.kept_rows : c.kept_cols;
    if (kept.begin % pool != 0 || kept.size() % pool != 0) {
      throw InvariantError("kept window [" + std::to_string(kept.begin) +
                           ", " + std::to_string(kept.end) +
                           ") is not divisible by pool_window " +
                           std::to_string(pool));
    }
    for (int p = kept.begin; p < kept.end; p += pool) {
      owners.emplace_back(g, p / pool);
    }
  }
  return owners;
}

}  // namespace

void LayoutConfig::Validate() const {
  if (crop_size_px <= 0) throw ConfigError("crop_size_px must be positive");
  if (patch_size_px <= 0) throw ConfigError("patch_size_px must be positive");
  if (pool_window <= 0) throw ConfigError("pool_window must be positive");
  if (max_crops <= 0) throw ConfigError("max_crops must be positive");
  if (crop_size_px % patch_size_px != 0) {
    throw ConfigError("crop_size_px must be divisible by patch_size_px");
  }
  if (patches_per_side() % pool_window != 0) {
    throw ConfigError(
        "patches per side (crop_size_px / patch_size_px) must be divisible "
        "by pool_window");
  }
  if (overlap_margin_patches < 0) {
    throw ConfigError("overlap_margin_patches must be non-negative");
  }
  if (overlap_margin_patches % 2 != 0) {
    throw ConfigError("overlap_margin_patches must be even");
  }
  if (overlap_margin_patches >= patches_per_side()) {
    throw ConfigError(
        "overlap_margin_patches must be smaller than patches per side");
  }
}

int GridWidthPx(int cols, const LayoutConfig& config) {
  return cols * config.crop_size_px - (cols - 1) * config.overlap_px();
}

int GridHeightPx(int rows, const LayoutConfig& config) {
  return GridWidthPx(rows, config);
}

GridChoice SelectGrid(int image_w, int image_h, const LayoutConfig& config) {
  config.Validate();
  if (image_w < 1 || image_h < 1) {
    throw ConfigError("image dimensions must be at least 1x1, got " +
                      std::to_string(image_w) + "x" + std::to_string(image_h));
  }
  struct Candidate {
    GridChoice choice;
    std::int64_t area;
  };
  std::vector<Candidate> candidates;
  for (int r = 1; r <= config.max_crops; ++r) {
    for (int c = 1; r * c <= config.max_crops; ++c) {
      const std::int64_t gw = GridWidthPx(c, config);
      const std::int64_t gh = GridHeightPx(r, config);
      const Scale sx{gw, image_w};
      const Scale sy{gh, image_h};
      candidates.push_back({{r, c, std::min(sx, sy)}, gw * gh});
    }
  }
  const Scale one{1, 1};
  const bool can_cover =
      std::any_of(candidates.begin(), candidates.end(),
                  [&](const Candidate& k) { return !(k.choice.scale < one); });
  auto secondary = [](const Candidate& k) {
    return std::make_tuple(k.choice.rows * k.choice.cols, k.area,
                           k.choice.rows);
  };
  auto better = [&](const Candidate& a, const Candidate& b) {
    if (!(a.choice.scale == b.choice.scale)) {
      return can_cover ? a.choice.scale < b.choice.scale
                       : b.choice.scale < a.choice.scale;
    }
    return secondary(a) < secondary(b);
  };
  const Candidate* best = nullptr;
  for (const Candidate& k : candidates) {
    if (can_cover && k.choice.scale < one) continue;
    if (best == nullptr || better(k, *best)) best = &k;
  }
  return best->choice;
}

int CropLayout::GlobalPatchRowOffset(int grid_row) const {
  return grid_row *
         (config.patches_per_side() - config.overlap_margin_patches);
}

int CropLayout::GlobalPatchColOffset(int grid_col) const {
  return grid_col *
         (config.patches_per_side() - config.overlap_margin_patches);
}

int CropLayout::global_patch_rows() const {
  return grid_rows * config.patches_per_side() -
         (grid_rows - 1) * config.overlap_margin_patches;
}

int CropLayout::global_patch_cols() const {
  return grid_cols * config.patches_per_side() -
         (grid_cols - 1) * config.overlap_margin_patches;
}

CropLayout BuildCropLayout(int image_w, int image_h,
                           const LayoutConfig& config) {
  const GridChoice grid = SelectGrid(image_w, image_h, config);
  CropLayout l;
  l.config = config;
  l.image_w = image_w;
  l.image_h = image_h;
  l.grid_rows = grid.rows;
  l.grid_cols = grid.cols;
  l.scale = grid.scale;
  l.grid_w = GridWidthPx(grid.cols, config);
  l.grid_h = GridHeightPx(grid.rows, config);
  l.scaled_w = std::clamp(RoundScaled(image_w, grid.scale), 1, l.grid_w);
  l.scaled_h = std::clamp(RoundScaled(image_h, grid.scale), 1, l.grid_h);
  l.pad_left = (l.grid_w - l.scaled_w) / 2;
  l.pad_right = l.grid_w - l.scaled_w - l.pad_left;
  l.pad_top = (l.grid_h - l.scaled_h) / 2;
  l.pad_bottom = l.grid_h - l.scaled_h - l.pad_top;

  const int pps = config.patches_per_side();
  const int half_margin = config.overlap_margin_patches / 2;
  const int step = config.crop_step_px();
  const int ps = config.patch_size_px;
  l.crops.reserve(static_cast<std::size_t>(grid.rows * grid.cols));
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      Crop crop;
      crop.grid_row = r;
      crop.grid_col = c;
      crop.origin_x = c * step;
      crop.origin_y = r * step;
      crop.kept_rows = {r > 0 ? half_margin : 0,
                        r + 1 < grid.rows ? pps - half_margin : pps};
      crop.kept_cols = {c > 0 ? half_margin : 0,
                        c + 1 < grid.cols ? pps - half_margin : pps};
      crop.padding.reserve(static_cast<std::size_t>(pps * pps));
      for (int pr = 0; pr < pps; ++pr) {
        for (int pc = 0; pc < pps; ++pc) {
          crop.padding.push_back(ClassifyPatch(
              crop.origin_x + pc * ps, crop.origin_y + pr * ps, ps, l));
        }
      }
      l.crops.push_back(std::move(crop));
    }
  }
  return l;
}

int TokenLayout::CountKind(TokenKind kind) const {
  return static_cast<int>(
      std::count_if(tokens.begin(), tokens.end(),
                    [kind](const VisionToken& t) { return t.kind == kind; }));
}

TokenLayout BuildTokenLayout(const CropLayout& layout) {
  const LayoutConfig& config = layout.config;
  const int pool = config.pool_window;
  const int pooled_side = config.patches_per_side() / pool;

  const auto row_owners = PooledAxisOwners(layout.grid_rows, true, layout);
  const auto col_owners = PooledAxisOwners(layout.grid_cols, false, layout);

  TokenLayout t;
  t.low_res_rows = pooled_side;
  t.low_res_cols = pooled_side;
  t.high_res_rows = static_cast<int>(row_owners.size());
  t.high_res_cols = static_cast<int>(col_owners.size());
  t.pooled_per_untrimmed_crop = pooled_side * pooled_side;
  for (const Crop& c : layout.crops) {
    t.pooled_per_crop.push_back((c.kept_rows.size() / pool) *
                                (c.kept_cols.size() / pool));
  }

  t.tokens.reserve(static_cast<std::size_t>(
      4 + t.low_res_pooled() + t.low_res_rows + t.high_res_pooled() +
      t.high_res_rows));
  t.tokens.push_back({TokenKind::kImageStart});
  for (int r = 0; r < t.low_res_rows; ++r) {
    for (int c = 0; c < t.low_res_cols; ++c) {
      t.tokens.push_back({TokenKind::kLowResPatch, -1, r, c});
    }
    t.tokens.push_back({TokenKind::kRowEnd});
  }
  t.tokens.push_back({TokenKind::kImageEnd});

  t.tokens.push_back({TokenKind::kImageStart});
  for (const auto& [grid_row, local_row] : row_owners) {
    for (const auto& [grid_col, local_col] : col_owners) {
      t.tokens.push_back({TokenKind::kHighResPatch,
                          grid_row * layout.grid_cols + grid_col, local_row,
                          local_col});
    }
    t.tokens.push_back({TokenKind::kRowEnd});
  }
  t.tokens.push_back({TokenKind::kImageEnd});
  return t;
}

char PaddingClassCode(PaddingClass c) {
  switch (c) {
    case PaddingClass::kImage:
      return 'I';
    case PaddingClass::kPartial:
      return 'P';
    case PaddingClass::kPadding:
      return '.';
  }
  return '?';
}

std::string TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kImageStart:
      return "img_start";
    case TokenKind::kImageEnd:
      return "img_end";
    case TokenKind::kRowEnd:
      return "row_end";
    case TokenKind::kLowResPatch:
      return "low_res_patch";
    case TokenKind::kHighResPatch:
      return "high_res_patch";
  }
  return "unknown";
}

nlohmann::json ToJson(const LayoutConfig& config) {
  return {{"crop_size_px", config.crop_size_px},
          {"patch_size_px", config.patch_size_px},
          {"overlap_margin_patches", config.overlap_margin_patches},
          {"pool_window", config.pool_window},
          {"max_crops", config.max_crops}};
}

nlohmann::json ToJson(const CropLayout& l) {
  nlohmann::json crops = nlohmann::json::array();
  const int pps = l.config.patches_per_side();
  for (std::size_t i = 0; i < l.crops.size(); ++i) {
    const Crop& c = l.crops[i];
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < pps; ++r) {
      std::string line;
      for (int k = 0; k < pps; ++k) {
        line += PaddingClassCode(c.padding[static_cast<std::size_t>(r * pps + k)]);
      }
      rows.push_back(std::move(line));
    }
    crops.push_back({{"index", i},
                     {"grid_row", c.grid_row},
                     {"grid_col", c.grid_col},
                     {"origin", {c.origin_x, c.origin_y}},
                     {"kept_rows", {c.kept_rows.begin, c.kept_rows.end}},
                     {"kept_cols", {c.kept_cols.begin, c.kept_cols.end}},
                     {"padding_class", std::move(rows)}});
  }
  return {{"config", ToJson(l.config)},
          {"image", {{"width", l.image_w}, {"height", l.image_h}}},
          {"grid",
           {{"rows", l.grid_rows},
            {"cols", l.grid_cols},
            {"width_px", l.grid_w},
            {"height_px", l.grid_h},
            {"patch_rows", l.global_patch_rows()},
            {"patch_cols", l.global_patch_cols()}}},
          {"scale",
           {{"num", l.scale.num}, {"den", l.scale.den},
            {"value", l.scale.value()}}},
          {"scaled", {{"width", l.scaled_w}, {"height", l.scaled_h}}},
          {"padding",
           {{"left", l.pad_left},
            {"top", l.pad_top},
            {"right", l.pad_right},
            {"bottom", l.pad_bottom}}},
          {"crops", std::move(crops)}};
}

nlohmann::json ToJson(const TokenLayout& t) {
  nlohmann::json tokens = nlohmann::json::array();
  for (const VisionToken& v : t.tokens) {
    switch (v.kind) {
      case TokenKind::kLowResPatch:
        tokens.push_back(nlohmann::json::array({"lo", v.row, v.col}));
        break;
      case TokenKind::kHighResPatch:
        tokens.push_back(nlohmann::json::array({"hi", v.crop, v.row, v.col}));
        break;
      default:
        tokens.push_back(nlohmann::json::array({TokenKindName(v.kind)}));
    }
  }
  return {{"counts",
           {{"total_tokens", t.total_tokens()},
            {"low_res_pooled", t.low_res_pooled()},
            {"low_res_grid", {t.low_res_rows, t.low_res_cols}},
            {"high_res_pooled", t.high_res_pooled()},
            {"high_res_grid", {t.high_res_rows, t.high_res_cols}},
            {"pooled_per_untrimmed_crop", t.pooled_per_untrimmed_crop},
            {"pooled_per_crop", t.pooled_per_crop}}},
          {"tokens", std::move(tokens)}};
}

}  // namespace vlpipe::layout
