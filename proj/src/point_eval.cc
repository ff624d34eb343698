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

#include "vlpipe/point_eval.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "vlpipe/error.h"
#include "vlpipe/io_util.h"

namespace vlpipe::eval {
namespace {

bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsWordChar(char c) {
  return IsDigit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         c == '_';
}

// Integer literals: digit runs that are not glued to a word ("x1") and are
// not part of a decimal number ("10.5").
std::vector<std::int64_t> IntegerLiterals(std::string_view text) {
  std::vector<std::int64_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!IsDigit(text[i])) {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    while (i < text.size() && IsDigit(text[i])) ++i;
    std::size_t end = i;
    bool decimal = false;
    if (i + 1 < text.size() && text[i] == '.' && IsDigit(text[i + 1])) {
      decimal = true;
      ++i;
      while (i < text.size() && IsDigit(text[i])) ++i;
    }
    const bool glued = begin > 0 && (IsWordChar(text[begin - 1]) ||
                                     (text[begin - 1] == '.' && begin > 1 &&
                                      IsDigit(text[begin - 2])));
    if (decimal || glued) continue;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + begin, text.data() + end, v);
    if (ec == std::errc()) out.push_back(v);
  }
  return out;
}

std::string JsonId(const nlohmann::json& j) {
  const auto& id = j.at("id");
  return id.is_string() ? id.get<std::string>() : id.dump();
}

}  // namespace

double HarmonicMean(double precision, double recall) {
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

std::pair<int, int> ToPixel(const points::Point& p, int image_w, int image_h) {
  const int px = static_cast<int>(std::lround(p.x * (image_w - 1) / 100.0));
  const int py = static_cast<int>(std::lround(p.y * (image_h - 1) / 100.0));
  return {std::clamp(px, 0, image_w - 1), std::clamp(py, 0, image_h - 1)};
}

PointingDetail ScorePointingDetailed(std::span<const points::Point> predicted,
                                     std::span<const points::Point> gt_points,
                                     std::span<const Mask> gt_masks,
                                     int image_w, int image_h) {
  if (gt_points.size() != gt_masks.size()) {
    throw MismatchError(std::to_string(gt_points.size()) +
                        " ground-truth points but " +
                        std::to_string(gt_masks.size()) + " masks");
  }
  if (gt_points.empty()) {
    throw DegenerateInputError(
        "no ground-truth targets; score with ScoreNoTarget");
  }
  if (image_w < 1 || image_h < 1) {
    throw MismatchError("image dimensions must be positive");
  }
  for (const Mask& m : gt_masks) {
    if (m.width() != image_w || m.height() != image_h) {
      throw MismatchError("mask is " + std::to_string(m.width()) + "x" +
                          std::to_string(m.height()) + ", image is " +
                          std::to_string(image_w) + "x" +
                          std::to_string(image_h));
    }
  }

  PointingDetail d;
  d.prediction_hit.assign(predicted.size(), false);
  d.mask_covered.assign(gt_points.size(), false);
  if (predicted.empty()) {
    d.assignment.unmatched_cols.resize(gt_points.size());
    for (std::size_t j = 0; j < gt_points.size(); ++j) {
      d.assignment.unmatched_cols[j] = static_cast<int>(j);
    }
    return d;
  }

  std::vector<std::vector<double>> cost(predicted.size(),
                                        std::vector<double>(gt_points.size()));
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    for (std::size_t j = 0; j < gt_points.size(); ++j) {
      cost[i][j] = std::hypot(predicted[i].x - gt_points[j].x,
                              predicted[i].y - gt_points[j].y);
    }
  }
  d.assignment = SolveAssignment(cost);

  int hits = 0;
  for (const auto& [pi, gj] : d.assignment.pairs) {
    const auto [px, py] = ToPixel(predicted[static_cast<std::size_t>(pi)],
                                  image_w, image_h);
    if (gt_masks[static_cast<std::size_t>(gj)].at(px, py)) {
      d.prediction_hit[static_cast<std::size_t>(pi)] = true;
      d.mask_covered[static_cast<std::size_t>(gj)] = true;
      ++hits;
    }
  }
  d.score.precision = static_cast<double>(hits) / predicted.size();
  d.score.recall = static_cast<double>(hits) / gt_points.size();
  d.score.f1 = HarmonicMean(d.score.precision, d.score.recall);
  return d;
}

PointingScore ScorePointing(std::span<const points::Point> predicted,
                            std::span<const points::Point> gt_points,
                            std::span<const Mask> gt_masks, int image_w,
                            int image_h) {
  return ScorePointingDetailed(predicted, gt_points, gt_masks, image_w,
                               image_h)
      .score;
}

PointingScore ScoreNoTarget(const points::ParseResult& response) {
  if (response.point_count() == 0) return {1.0, 1.0, 1.0};
  return {0.0, 0.0, 0.0};
}

PointingScore ScoreNoTarget(std::string_view response_text) {
  return ScoreNoTarget(points::Parse(response_text, points::ParseMode::kLenient));
}

std::vector<points::Point> ExtractPoints(std::string_view response_text) {
  const auto parsed = points::Parse(response_text, points::ParseMode::kLenient);
  std::vector<points::Point> out;
  for (const auto& set : parsed.sets) {
    out.insert(out.end(), set.points.begin(), set.points.end());
  }
  return out;
}

CountStrategy ParseCountStrategy(std::string_view name) {
  if (name == "count") return CountStrategy::kCount;
  if (name == "point_then_count") return CountStrategy::kPointThenCount;
  if (name == "count_then_point") return CountStrategy::kCountThenPoint;
  if (name == "point_regex") return CountStrategy::kPointRegex;
  throw ConfigError("unknown counting strategy '" + std::string(name) + "'");
}

std::string CountStrategyName(CountStrategy s) {
  switch (s) {
    case CountStrategy::kCount:
      return "count";
    case CountStrategy::kPointThenCount:
      return "point_then_count";
    case CountStrategy::kCountThenPoint:
      return "count_then_point";
    case CountStrategy::kPointRegex:
      return "point_regex";
  }
  return "unknown";
}

std::optional<std::int64_t> ExtractCount(std::string_view text,
                                         CountStrategy strategy) {
  const auto parsed = points::Parse(text, points::ParseMode::kLenient);
  const auto& spans = parsed.tag_spans;
  const auto pointed = static_cast<std::int64_t>(parsed.point_count());

  // Numbers inside point tags (coordinates, indices) never count as stated.
  auto outside_tags = [&](std::size_t from, std::size_t to) {
    std::vector<std::int64_t> out;
    std::size_t cursor = from;
    for (const auto& [b, e] : spans) {
      if (e <= from || b >= to) continue;
      if (b > cursor) {
        auto part = IntegerLiterals(text.substr(cursor, b - cursor));
        out.insert(out.end(), part.begin(), part.end());
      }
      cursor = std::max(cursor, e);
    }
    if (cursor < to) {
      auto part = IntegerLiterals(text.substr(cursor, to - cursor));
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  };

  switch (strategy) {
    case CountStrategy::kCount: {
      const auto ints = outside_tags(0, text.size());
      if (ints.empty()) return std::nullopt;
      return ints.back();
    }
    case CountStrategy::kPointThenCount: {
      if (spans.empty()) {
        // Nothing pointed at: the stated number, or zero objects.
        const auto ints = outside_tags(0, text.size());
        return ints.empty() ? std::int64_t{0} : ints.back();
      }
      const auto ints = outside_tags(spans.back().second, text.size());
      if (!ints.empty()) return ints.front();
      return pointed;
    }
    case CountStrategy::kCountThenPoint: {
      const std::size_t until = spans.empty() ? text.size() : spans.front().first;
      const auto ints = outside_tags(0, until);
      if (ints.empty()) return std::nullopt;
      return ints.back();
    }
    case CountStrategy::kPointRegex:
      return pointed;
  }
  return std::nullopt;
}

double CountingAccuracy(std::span<const CountingExample> examples,
                        CountStrategy strategy) {
  if (examples.empty()) {
    throw DegenerateInputError("counting accuracy of an empty set");
  }
  std::size_t correct = 0;
  for (const auto& ex : examples) {
    const auto count = ExtractCount(ex.response, strategy);
    if (count && *count == ex.gt_count) ++correct;
  }
  return static_cast<double>(correct) / examples.size();
}

PointingGroundTruth GroundTruthFromJson(const nlohmann::json& j) {
  PointingGroundTruth gt;
  gt.id = JsonId(j);
  gt.image_w = j.at("image_w").get<int>();
  gt.image_h = j.at("image_h").get<int>();
  for (const auto& p : j.value("points", nlohmann::json::array())) {
    if (p.size() != 2) throw Error("ground-truth point must be [x, y]");
    gt.points.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  for (const auto& m : j.value("masks", nlohmann::json::array())) {
    gt.masks.push_back(MaskFromJson(m));
  }
  return gt;
}

PointingPrediction PredictionFromJson(const nlohmann::json& j) {
  return {JsonId(j), j.value("response_text", "")};
}

std::vector<ExampleScore> EvaluatePointing(
    std::span<const PointingGroundTruth> gt,
    std::span<const PointingPrediction> predictions) {
  std::map<std::string, const PointingPrediction*> by_id;
  for (const auto& p : predictions) {
    if (!by_id.emplace(p.id, &p).second) {
      throw MismatchError("duplicate prediction id '" + p.id + "'");
    }
  }
  if (by_id.size() != gt.size()) {
    throw MismatchError(std::to_string(gt.size()) + " ground-truth records but " +
                        std::to_string(by_id.size()) + " predictions");
  }
  std::vector<ExampleScore> out;
  for (const auto& g : gt) {
    auto it = by_id.find(g.id);
    if (it == by_id.end()) {
      throw MismatchError("no prediction for id '" + g.id + "'");
    }
    ExampleScore s;
    s.id = g.id;
    s.no_target = g.no_target();
    if (s.no_target) {
      s.score = ScoreNoTarget(it->second->response_text);
    } else {
      const auto predicted = ExtractPoints(it->second->response_text);
      s.score = ScorePointing(predicted, g.points, g.masks, g.image_w, g.image_h);
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const ExampleScore& a, const ExampleScore& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].id == out[i - 1].id) {
      throw MismatchError("duplicate ground-truth id '" + out[i].id + "'");
    }
  }
  return out;
}

PointingScore MeanScore(std::span<const ExampleScore> scores) {
  if (scores.empty()) throw DegenerateInputError("no scored examples");
  PointingScore mean;
  for (const auto& s : scores) {
    mean.precision += s.score.precision;
    mean.recall += s.score.recall;
    mean.f1 += s.score.f1;
  }
  const double n = static_cast<double>(scores.size());
  mean.precision /= n;
  mean.recall /= n;
  mean.f1 /= n;
  return mean;
}

std::string PointingCsv(std::span<const ExampleScore> scores) {
  std::string out = "id,precision,recall,f1\n";
  auto row = [&](const std::string& id, const PointingScore& s) {
    out += io::CsvEscape(id) + "," + io::FormatFixed(s.precision, 6) + "," +
           io::FormatFixed(s.recall, 6) + "," + io::FormatFixed(s.f1, 6) + "\n";
  };
  for (const auto& s : scores) row(s.id, s.score);
  row("mean", MeanScore(scores));
  return out;
}

}  // namespace vlpipe::eval
