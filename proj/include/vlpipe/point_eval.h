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

// Pointing and counting evaluation.
//
// Pointing predictions are matched one-to-one to ground-truth points by
// minimum total Euclidean distance (in the 0-100 coordinate space); a
// matched prediction is a true positive when it lands inside the mask of
// its assigned ground-truth point.

#ifndef VLPIPE_POINT_EVAL_H_
#define VLPIPE_POINT_EVAL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "vlpipe/assignment.h"
#include "vlpipe/mask.h"
#include "vlpipe/point_format.h"

namespace vlpipe::eval {

struct PointingScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Harmonic mean, 0 when both inputs are 0.
double HarmonicMean(double precision, double recall);

// x * (w - 1) / 100 and y * (h - 1) / 100, rounded to nearest and clamped
// to the raster.
std::pair<int, int> ToPixel(const points::Point& p, int image_w, int image_h);

struct PointingDetail {
  PointingScore score;
  AssignmentResult assignment;
  // Per prediction: assigned and inside its assigned mask.
  std::vector<bool> prediction_hit;
  // Per ground truth: its assigned prediction lies inside its mask.
  std::vector<bool> mask_covered;
};

// Scores a target-present example. With no predictions both precision and
// recall are 0.
PointingDetail ScorePointingDetailed(std::span<const points::Point> predicted,
                                     std::span<const points::Point> gt_points,
                                     std::span<const Mask> gt_masks,
                                     int image_w, int image_h);
PointingScore ScorePointing(std::span<const points::Point> predicted,
                            std::span<const points::Point> gt_points,
                            std::span<const Mask> gt_masks, int image_w,
                            int image_h);

// Target-absent example: perfect iff the response contains no points.
PointingScore ScoreNoTarget(const points::ParseResult& response);
PointingScore ScoreNoTarget(std::string_view response_text);

// All points of all point tags in a free-form response (lenient parse).
std::vector<points::Point> ExtractPoints(std::string_view response_text);

enum class CountStrategy {
  // Last integer stated in the text.
  kCount,
  // Integer stated after the last point tag; falls back to the number of
  // pointed coordinates.
  kPointThenCount,
  // Integer stated before the first point tag.
  kCountThenPoint,
  // Number of coordinate pairs in point tags.
  kPointRegex,
};

CountStrategy ParseCountStrategy(std::string_view name);
std::string CountStrategyName(CountStrategy s);

std::optional<std::int64_t> ExtractCount(std::string_view response_text,
                                         CountStrategy strategy);

struct CountingExample {
  std::string response;
  std::int64_t gt_count = 0;
};

// Fraction of exact matches; an unextractable count is wrong. Throws
// DegenerateInputError on an empty list.
double CountingAccuracy(std::span<const CountingExample> examples,
                        CountStrategy strategy);

// File-level records.
struct PointingGroundTruth {
  std::string id;
  int image_w = 0;
  int image_h = 0;
  std::vector<points::Point> points;
  std::vector<Mask> masks;

  bool no_target() const { return points.empty(); }
};

struct PointingPrediction {
  std::string id;
  std::string response_text;
};

struct ExampleScore {
  std::string id;
  PointingScore score;
  bool no_target = false;
};

// Ids are compared as strings; numeric JSON ids are accepted.
PointingGroundTruth GroundTruthFromJson(const nlohmann::json& j);
PointingPrediction PredictionFromJson(const nlohmann::json& j);

// Scores every example; output sorted by id. Throws MismatchError when the
// two id sets differ.
std::vector<ExampleScore> EvaluatePointing(
    std::span<const PointingGroundTruth> gt,
    std::span<const PointingPrediction> predictions);

PointingScore MeanScore(std::span<const ExampleScore> scores);

// "id,precision,recall,f1" rows plus a final "mean" row.
std::string PointingCsv(std::span<const ExampleScore> scores);

}  // namespace vlpipe::eval

#endif  // VLPIPE_POINT_EVAL_H_
