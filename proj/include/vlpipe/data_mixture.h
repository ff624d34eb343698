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

// Fine-tuning data construction: dataset mixture rates, style tags,
// multi-annotation sequence packing with block attention visibility, and
// cross-device loss-token normalization.

#ifndef VLPIPE_DATA_MIXTURE_H_
#define VLPIPE_DATA_MIXTURE_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace vlpipe::mixture {

inline constexpr int kDefaultMaxSequenceLength = 2304;
inline constexpr int kDefaultMaxPointCount = 40;

struct DatasetEntry {
  std::string name;
  std::int64_t size = 0;
  double weight_multiplier = 1.0;
  // Members of the same non-empty group end up with equal weight; the
  // group's total weight is unchanged.
  std::string balance_group;
};

struct MixtureSpec {
  std::vector<DatasetEntry> datasets;

  void Validate() const;
};

// {"datasets": [{"name", "size", "weight_multiplier"?, "balance_group"?}]}
MixtureSpec MixtureSpecFromJson(const nlohmann::json& j);

// rate_i proportional to multiplier_i * sqrt(size_i), balance groups
// equalized, normalized to sum to 1.
std::vector<double> MixtureRates(const MixtureSpec& spec);

// Dataset indices drawn i.i.d. from `rates`.
std::vector<std::size_t> SampleDatasets(std::span<const double> rates,
                                        std::size_t draws, std::mt19937_64& rng);

// "<tag> <question>" when a tag is given, the question unchanged otherwise.
std::string ApplyStyleTag(std::string_view question,
                          const std::optional<std::string>& tag);

// Most common answer; ties broken uniformly at random.
std::string SelectAnswer(std::span<const std::string> answers,
                         std::mt19937_64& rng);

struct Annotation {
  std::string annotation_id;
  int prompt_tokens = 0;
  int response_tokens = 0;
};

struct Segment {
  std::string annotation_id;
  // Position of the segment's first token in the packed sequence.
  int offset = 0;
  int prompt_tokens = 0;
  int response_tokens = 0;
  int original_prompt_tokens = 0;
  int original_response_tokens = 0;
  bool truncated = false;

  int length() const { return prompt_tokens + response_tokens; }
};

// Image tokens occupy [0, image_token_count); segments follow in order.
// Every token sees the image tokens up to itself; a segment token also sees
// the earlier tokens of its own segment, and nothing of other segments.
struct PackedExample {
  std::string image_id;
  int image_token_count = 0;
  std::vector<Segment> segments;

  int length() const;
  bool truncated() const;
  // visible[q][k]: token q may attend to token k.
  std::vector<std::vector<bool>> DenseVisibility() const;
  // True for response tokens.
  std::vector<bool> LossMask() const;
};

// First-fit packing in input order: each annotation goes into the first
// sequence that still has room, else starts a new one. An annotation
// longer than the text budget (max_len - image tokens) is truncated,
// response tail first, and flagged. Throws if the image alone does not
// fit.
std::vector<PackedExample> PackAnnotations(std::string_view image_id,
                                           int image_token_count,
                                           std::span<const Annotation> annotations,
                                           int max_len = kDefaultMaxSequenceLength);

struct PackingStats {
  int packed_sequences = 0;
  int unpacked_sequences = 0;
  std::int64_t packed_tokens = 0;
  std::int64_t unpacked_tokens = 0;
  // 1 - packed / unpacked image encodes.
  double image_reduction = 0.0;
  // Mean packed sequence length over mean unpacked length, minus 1.
  double seq_len_increase = 0.0;
};

// The unpacked baseline encodes every segment as its own image+text
// sequence. Throws DegenerateInputError on empty input.
PackingStats ComputePackingStats(std::span<const PackedExample> packed);

nlohmann::json ToJson(const PackedExample& p);
PackedExample PackedExampleFromJson(const nlohmann::json& j);

struct DeviceLoss {
  double loss_sum = 0.0;
  std::int64_t loss_token_count = 0;
};

// Per-device loss divisor: the mean loss-token count across devices, the
// same for every device. Throws when every count is zero.
std::vector<double> LossTokenDivisors(std::span<const DeviceLoss> devices);
// Device-local divisors (each device's own count); biased when counts vary.
std::vector<double> LocalLossTokenDivisors(std::span<const DeviceLoss> devices);

// Annotation record as read from JSONL.
struct AnnotationRecord {
  std::string image_id;
  std::string annotation_id;
  std::string prompt;
  std::string response;
  std::vector<std::string> answers;
  std::optional<int> n_points;
  std::optional<int> prompt_tokens;
  std::optional<int> response_tokens;
  std::optional<std::string> style;
};

// {"image_id", "annotation_id", "prompt", "response" | "answers": [...],
//  "n_points"?, "prompt_tokens"?, "response_tokens"?, "style"?}
AnnotationRecord AnnotationFromJson(const nlohmann::json& j);

struct FilterResult {
  std::vector<AnnotationRecord> kept;
  std::size_t dropped = 0;
};

// Drops pointing annotations with more than `max_count` points. Records
// without a point count pass through.
FilterResult FilterMaxCount(std::vector<AnnotationRecord> records,
                            int max_count = kDefaultMaxPointCount);

// Whitespace-delimited token count, used when no explicit count is given.
int CountWords(std::string_view text);

// Groups records by image (sorted by image id, input order within an image),
// resolves multi-answer records and style tags, and packs each image.
std::vector<PackedExample> PackRecords(std::span<const AnnotationRecord> records,
                                       int image_token_count, int max_len,
                                       std::mt19937_64& rng);

}  // namespace vlpipe::mixture

#endif  // VLPIPE_DATA_MIXTURE_H_
