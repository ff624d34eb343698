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

// Caption metric aggregation over judged atomic statements, and length-hint
// conditioning of captioning prompts.

#ifndef VLPIPE_CAPTION_METRICS_H_
#define VLPIPE_CAPTION_METRICS_H_

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace vlpipe::caption {

struct ImageJudgment {
  std::string image_id;
  int n_generated_statements = 0;
  // Generated statements judged consistent with the image.
  int n_consistent = 0;
  int n_gt_statements = 0;
  // Ground-truth statements covered by the generated caption.
  int n_matched_gt = 0;

  // Throws Error when a count is negative or exceeds its total.
  void Validate() const;
};

// {"image_id", "n_generated", "n_consistent", "n_gt", "n_matched"} plus an
// optional integer "hint" used to group sweeps.
ImageJudgment JudgmentFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const ImageJudgment& j);

// Produces judgments from statement lists. Model-based judges live outside
// this library and implement the same interface.
class StatementJudge {
 public:
  virtual ~StatementJudge() = default;
  virtual ImageJudgment Judge(std::string_view image_id,
                              std::span<const std::string> generated,
                              std::span<const std::string> ground_truth) = 0;
};

// A generated statement is consistent iff it equals some ground-truth
// statement after trimming and lower-casing; symmetrically for recall.
class ExactMatchJudge : public StatementJudge {
 public:
  ImageJudgment Judge(std::string_view image_id,
                      std::span<const std::string> generated,
                      std::span<const std::string> ground_truth) override;
};

struct CaptionScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int images = 0;
  int recall_images = 0;
  std::vector<std::string> warnings;
};

// Precision and recall are averaged over images first; F1 is the harmonic
// mean of the two averages. Images without generated statements score
// precision 0; images without ground-truth statements are left out of the
// recall mean with a warning.
CaptionScore CapF1(std::span<const ImageJudgment> judgments);

struct LengthHint {
  int value = 0;
  bool present = false;

  friend bool operator==(const LengthHint&, const LengthHint&) = default;
};

struct LengthHintOptions {
  double noise_sigma = 25.0;
  double include_prob = 0.9;
};

// floor(max(0, chars + N(0, sigma)) / 15), included with probability
// include_prob. Each call consumes one uniform and one normal draw from
// `rng` whether or not the hint ends up present.
LengthHint MakeLengthHint(std::int64_t char_count, const LengthHintOptions& opts,
                          std::mt19937_64& rng);
LengthHint MakeLengthHint(std::int64_t char_count, const LengthHintOptions& opts,
                          std::uint64_t seed);

enum class CaptionStyle { kLongCaption, kTranscript };

CaptionStyle ParseCaptionStyle(std::string_view name);

// "long_caption:" / "transcript:", or "long_caption_83:" with a hint.
std::string FormatCaptionPrompt(CaptionStyle style, const LengthHint& hint);

struct SweepRow {
  int hint = 0;
  double precision = 0.0;
  double recall = 0.0;
  int images = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<std::string> warnings;
};

// One row per non-empty hint group, sorted by hint. Empty groups are
// skipped with a warning. Throws DegenerateInputError with no groups.
SweepResult PrSweep(const std::map<int, std::vector<ImageJudgment>>& groups);

std::string SweepCsv(const SweepResult& sweep);

}  // namespace vlpipe::caption

#endif  // VLPIPE_CAPTION_METRICS_H_
