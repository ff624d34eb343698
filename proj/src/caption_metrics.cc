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

#include "vlpipe/caption_metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "vlpipe/error.h"
#include "vlpipe/io_util.h"

namespace vlpipe::caption {
namespace {

constexpr int kCharsPerHintUnit = 15;

std::string Normalize(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  std::string out(s.substr(first, last - first + 1));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

void ImageJudgment::Validate() const {
  if (n_generated_statements < 0 || n_gt_statements < 0 || n_consistent < 0 ||
      n_matched_gt < 0) {
    throw Error("judgment for '" + image_id + "' has a negative count");
  }
  if (n_consistent > n_generated_statements) {
    throw Error("judgment for '" + image_id +
                "' has more consistent than generated statements");
  }
  if (n_matched_gt > n_gt_statements) {
    throw Error("judgment for '" + image_id +
                "' matches more ground-truth statements than exist");
  }
}

ImageJudgment JudgmentFromJson(const nlohmann::json& j) {
  ImageJudgment out;
  const auto& id = j.at("image_id");
  out.image_id = id.is_string() ? id.get<std::string>() : id.dump();
  out.n_generated_statements = j.at("n_generated").get<int>();
  out.n_consistent = j.at("n_consistent").get<int>();
  out.n_gt_statements = j.at("n_gt").get<int>();
  out.n_matched_gt = j.at("n_matched").get<int>();
  out.Validate();
  return out;
}

nlohmann::json ToJson(const ImageJudgment& j) {
  return {{"image_id", j.image_id},
          {"n_generated", j.n_generated_statements},
          {"n_consistent", j.n_consistent},
          {"n_gt", j.n_gt_statements},
          {"n_matched", j.n_matched_gt}};
}

ImageJudgment ExactMatchJudge::Judge(std::string_view image_id,
                                     std::span<const std::string> generated,
                                     std::span<const std::string> ground_truth) {
  std::set<std::string> gt_set;
  std::set<std::string> gen_set;
  for (const auto& s : ground_truth) gt_set.insert(Normalize(s));
  for (const auto& s : generated) gen_set.insert(Normalize(s));
  ImageJudgment j;
  j.image_id = std::string(image_id);
  j.n_generated_statements = static_cast<int>(generated.size());
  j.n_gt_statements = static_cast<int>(ground_truth.size());
  for (const auto& s : generated) j.n_consistent += gt_set.count(Normalize(s)) ? 1 : 0;
  for (const auto& s : ground_truth) j.n_matched_gt += gen_set.count(Normalize(s)) ? 1 : 0;
  return j;
}

CaptionScore CapF1(std::span<const ImageJudgment> judgments) {
  if (judgments.empty()) {
    throw DegenerateInputError("cap F1 needs at least one judged image");
  }
  // Fixed summation order regardless of input order.
  std::vector<const ImageJudgment*> ordered;
  for (const auto& j : judgments) {
    j.Validate();
    ordered.push_back(&j);
  }
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const ImageJudgment* a, const ImageJudgment* b) {
                     return a->image_id < b->image_id;
                   });
  CaptionScore score;
  double precision_sum = 0.0;
  double recall_sum = 0.0;
  for (const ImageJudgment* j : ordered) {
    ++score.images;
    if (j->n_generated_statements > 0) {
      precision_sum += static_cast<double>(j->n_consistent) / j->n_generated_statements;
    }
    if (j->n_gt_statements == 0) {
      score.warnings.push_back("image '" + j->image_id +
                               "' has no ground-truth statements; excluded "
                               "from recall");
      continue;
    }
    ++score.recall_images;
    recall_sum += static_cast<double>(j->n_matched_gt) / j->n_gt_statements;
  }
  if (score.recall_images == 0) {
    throw DegenerateInputError("no image has ground-truth statements");
  }
  score.precision = precision_sum / score.images;
  score.recall = recall_sum / score.recall_images;
  score.f1 = score.precision + score.recall > 0
                 ? 2.0 * score.precision * score.recall /
                       (score.precision + score.recall)
                 : 0.0;
  return score;
}

LengthHint MakeLengthHint(std::int64_t char_count, const LengthHintOptions& opts,
                          std::mt19937_64& rng) {
  if (char_count < 0) throw Error("character count must be non-negative");
  if (!(opts.noise_sigma >= 0.0)) throw Error("noise sigma must be non-negative");
  if (!(opts.include_prob >= 0.0 && opts.include_prob <= 1.0)) {
    throw Error("include probability must lie in [0, 1]");
  }
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double u = uniform(rng);
  const double noise = opts.noise_sigma * normal(rng);
  const double noisy = std::max(0.0, static_cast<double>(char_count) + noise);
  LengthHint hint;
  hint.present = u < opts.include_prob;
  hint.value = static_cast<int>(std::floor(noisy / kCharsPerHintUnit));
  if (!hint.present) hint.value = 0;
  return hint;
}

LengthHint MakeLengthHint(std::int64_t char_count, const LengthHintOptions& opts,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return MakeLengthHint(char_count, opts, rng);
}

CaptionStyle ParseCaptionStyle(std::string_view name) {
  if (name == "long_caption") return CaptionStyle::kLongCaption;
  if (name == "transcript") return CaptionStyle::kTranscript;
  throw ConfigError("unknown caption style '" + std::string(name) + "'");
}

std::string FormatCaptionPrompt(CaptionStyle style, const LengthHint& hint) {
  std::string out =
      style == CaptionStyle::kLongCaption ? "long_caption" : "transcript";
  if (hint.present) out += "_" + std::to_string(hint.value);
  out += ":";
  return out;
}

SweepResult PrSweep(const std::map<int, std::vector<ImageJudgment>>& groups) {
  if (groups.empty()) throw DegenerateInputError("sweep needs at least one group");
  SweepResult result;
  for (const auto& [hint, judgments] : groups) {
    if (judgments.empty()) {
      result.warnings.push_back("hint group " + std::to_string(hint) +
                                " is empty; skipped");
      continue;
    }
    const CaptionScore s = CapF1(judgments);
    result.warnings.insert(result.warnings.end(), s.warnings.begin(),
                           s.warnings.end());
    result.rows.push_back({hint, s.precision, s.recall, s.images});
  }
  return result;
}

std::string SweepCsv(const SweepResult& sweep) {
  std::string out = "hint,precision,recall,images\n";
  for (const auto& r : sweep.rows) {
    out += std::to_string(r.hint) + "," + io::FormatFixed(r.precision, 6) + "," +
           io::FormatFixed(r.recall, 6) + "," + std::to_string(r.images) + "\n";
  }
  return out;
}

}  // namespace vlpipe::caption
