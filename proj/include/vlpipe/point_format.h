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

// The HTML-like point annotation format:
//
//   <point x="10.0" y="10.0" alt="alt text">Inline text</point>
//   <points x1="10.0" y1="10.0" x2="20.0" y2="20.0" alt="alt text">Inline text</points>
//
// Coordinates are percentages of the image width/height in [0, 100].

#ifndef VLPIPE_POINT_FORMAT_H_
#define VLPIPE_POINT_FORMAT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace vlpipe::points {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct PointSet {
  std::vector<Point> points;
  std::string alt;
  std::string inline_text;
  // True when parsed from (or rendered as) the single-point `point` tag.
  bool singular = false;

  friend bool operator==(const PointSet&, const PointSet&) = default;
};

enum class ParseMode {
  // Any malformed tag raises ParseError.
  kStrict,
  // Malformed tags are skipped (kept as plain text) and out-of-range
  // coordinates are clamped to [0, 100].
  kLenient,
};

struct ParseIssue {
  std::size_t offset = 0;
  std::string message;
};

struct ParseResult {
  std::vector<PointSet> sets;
  // Byte range [first, second) of each parsed tag, parallel to `sets`.
  std::vector<std::pair<std::size_t, std::size_t>> tag_spans;
  // Text outside of the parsed tags, in order; empty spans are omitted.
  std::vector<std::string> residual_text;
  // Tags skipped in lenient mode.
  std::vector<ParseIssue> skipped;

  std::size_t point_count() const;
};

ParseResult Parse(std::string_view text, ParseMode mode = ParseMode::kStrict);

// Stable sort, top-down then left-to-right: key (y, x).
std::vector<Point> OrderPoints(std::vector<Point> points);

// Coordinates rounded to one fractional digit, then ordered; singular iff
// exactly one point.
PointSet Canonicalize(const PointSet& set);

// Canonical serialization. Throws Error for an empty point list.
std::string Render(const PointSet& set);

// One fractional digit, e.g. "10.0".
std::string FormatCoordinate(double v);

// JSONL tooling form: {"x": [...], "y": [...], "alt": "...", "inline": "..."}
nlohmann::json ToJson(const PointSet& set);
PointSet PointSetFromJson(const nlohmann::json& j);

}  // namespace vlpipe::points

#endif  // VLPIPE_POINT_FORMAT_H_
