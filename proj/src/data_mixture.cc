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

#include "vlpipe/data_mixture.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "vlpipe/error.h"

namespace vlpipe::mixture {

void MixtureSpec::Validate() const {
  if (datasets.empty()) throw DegenerateInputError("mixture spec has no datasets");
  std::set<std::string> names;
  for (const auto& d : datasets) {
    if (!names.insert(d.name).second) {
      throw ConfigError("dataset '" + d.name + "' listed twice");
    }
    if (d.size < 1) {
      throw ConfigError("dataset '" + d.name + "' must have size >= 1");
    }
    if (!(d.weight_multiplier > 0.0) || !std::isfinite(d.weight_multiplier)) {
      throw ConfigError("dataset '" + d.name +
                        "' must have a positive finite weight multiplier");
    }
  }
}

MixtureSpec MixtureSpecFromJson(const nlohmann::json& j) {
  MixtureSpec spec;
  for (const auto& d : j.at("datasets")) {
    DatasetEntry e;
    e.name = d.at("name").get<std::string>();
    e.size = d.at("size").get<std::int64_t>();
    e.weight_multiplier = d.value("weight_multiplier", 1.0);
    e.balance_group = d.value("balance_group", "");
    spec.datasets.push_back(std::move(e));
  }
  spec.Validate();
  return spec;
}

std::vector<double> MixtureRates(const MixtureSpec& spec) {
  spec.Validate();
  std::vector<double> weights;
  weights.reserve(spec.datasets.size());
  for (const auto& d : spec.datasets) {
    weights.push_back(d.weight_multiplier * std::sqrt(static_cast<double>(d.size)));
  }
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < spec.datasets.size(); ++i) {
    if (!spec.datasets[i].balance_group.empty()) {
      groups[spec.datasets[i].balance_group].push_back(i);
    }
  }
  for (const auto& [name, members] : groups) {
    double total = 0.0;
    for (std::size_t i : members) total += weights[i];
    for (std::size_t i : members) weights[i] = total / static_cast<double>(members.size());
  }
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= sum;
  return weights;
}

std::vector<std::size_t> SampleDatasets(std::span<const double> rates,
                                        std::size_t draws, std::mt19937_64& rng) {
  std::discrete_distribution<std::size_t> dist(rates.begin(), rates.end());
  std::vector<std::size_t> out(draws);
  for (auto& v : out) v = dist(rng);
  return out;
}

std::string ApplyStyleTag(std::string_view question,
                          const std::optional<std::string>& tag) {
  if (!tag) return std::string(question);
  return *tag + " " + std::string(question);
}

std::string SelectAnswer(std::span<const std::string> answers,
                         std::mt19937_64& rng) {
  if (answers.empty()) throw DegenerateInputError("no answers to select from");
  std::map<std::string, int> counts;
  for (const auto& a : answers) ++counts[a];
  int best = 0;
  for (const auto& [a, c] : counts) best = std::max(best, c);
  // Candidates in first-appearance order so the draw is reproducible.
  std::vector<std::string> tied;
  for (const auto& a : answers) {
    if (counts[a] == best && std::find(tied.begin(), tied.end(), a) == tied.end()) {
      tied.push_back(a);
    }
  }
  if (tied.size() == 1) return tied.front();
  std::uniform_int_distribution<std::size_t> pick(0, tied.size() - 1);
  return tied[pick(rng)];
}

int PackedExample::length() const {
  int n = image_token_count;
  for (const auto& s : segments) n += s.length();
  return n;
}

bool PackedExample::truncated() const {
  return std::any_of(segments.begin(), segments.end(),
                     [](const Segment& s) { return s.truncated; });
}

std::vector<std::vector<bool>> PackedExample::DenseVisibility() const {
  const int n = length();
  std::vector<std::vector<bool>> visible(static_cast<std::size_t>(n),
                                         std::vector<bool>(static_cast<std::size_t>(n), false));
  for (int q = 0; q < image_token_count; ++q) {
    for (int k = 0; k <= q; ++k) visible[q][k] = true;
  }
  for (const Segment& s : segments) {
    for (int q = s.offset; q < s.offset + s.length(); ++q) {
      for (int k = 0; k < image_token_count; ++k) visible[q][k] = true;
      for (int k = s.offset; k <= q; ++k) visible[q][k] = true;
    }
  }
  return visible;
}

std::vector<bool> PackedExample::LossMask() const {
  std::vector<bool> mask(static_cast<std::size_t>(length()), false);
  for (const Segment& s : segments) {
    for (int i = 0; i < s.response_tokens; ++i) {
      mask[static_cast<std::size_t>(s.offset + s.prompt_tokens + i)] = true;
    }
  }
  return mask;
}

std::vector<PackedExample> PackAnnotations(std::string_view image_id,
                                           int image_token_count,
                                           std::span<const Annotation> annotations,
                                           int max_len) {
  if (image_token_count < 0) throw Error("image token count must be non-negative");
  if (image_token_count >= max_len) {
    throw Error("image needs " + std::to_string(image_token_count) +
                " tokens, leaving no room in a sequence of " +
                std::to_string(max_len));
  }
  const int budget = max_len - image_token_count;
  std::vector<PackedExample> packed;
  std::vector<int> used;
  for (const Annotation& a : annotations) {
    if (a.prompt_tokens < 0 || a.response_tokens < 0) {
      throw Error("annotation '" + a.annotation_id + "' has a negative length");
    }
    Segment seg;
    seg.annotation_id = a.annotation_id;
    seg.original_prompt_tokens = a.prompt_tokens;
    seg.original_response_tokens = a.response_tokens;
    seg.prompt_tokens = a.prompt_tokens;
    seg.response_tokens = a.response_tokens;
    if (seg.length() > budget) {
      seg.truncated = true;
      seg.prompt_tokens = std::min(seg.prompt_tokens, budget);
      seg.response_tokens = budget - seg.prompt_tokens;
    }
    std::size_t bin = 0;
    while (bin < packed.size() && used[bin] + seg.length() > budget) ++bin;
    if (bin == packed.size()) {
      PackedExample p;
      p.image_id = std::string(image_id);
      p.image_token_count = image_token_count;
      packed.push_back(std::move(p));
      used.push_back(0);
    }
    seg.offset = image_token_count + used[bin];
    used[bin] += seg.length();
    packed[bin].segments.push_back(std::move(seg));
  }
  return packed;
}

PackingStats ComputePackingStats(std::span<const PackedExample> packed) {
  if (packed.empty()) throw DegenerateInputError("no packed examples");
  PackingStats s;
  for (const auto& p : packed) {
    ++s.packed_sequences;
    s.packed_tokens += p.length();
    for (const auto& seg : p.segments) {
      ++s.unpacked_sequences;
      s.unpacked_tokens += p.image_token_count + seg.length();
    }
  }
  if (s.unpacked_sequences == 0) {
    throw DegenerateInputError("packed examples contain no annotations");
  }
  s.image_reduction =
      1.0 - static_cast<double>(s.packed_sequences) / s.unpacked_sequences;
  const double packed_mean = static_cast<double>(s.packed_tokens) / s.packed_sequences;
  const double unpacked_mean =
      static_cast<double>(s.unpacked_tokens) / s.unpacked_sequences;
  s.seq_len_increase = unpacked_mean > 0 ? packed_mean / unpacked_mean - 1.0 : 0.0;
  return s;
}

nlohmann::json ToJson(const PackedExample& p) {
  nlohmann::json segments = nlohmann::json::array();
  nlohmann::json visibility = nlohmann::json::array();
  visibility.push_back({{"block", "image"},
                        {"sees", nlohmann::json::array({nlohmann::json::array({0, p.image_token_count})})},
                        {"causal", true}});
  for (std::size_t i = 0; i < p.segments.size(); ++i) {
    const Segment& s = p.segments[i];
    segments.push_back({{"annotation_id", s.annotation_id},
                        {"offset", s.offset},
                        {"prompt_tokens", s.prompt_tokens},
                        {"response_tokens", s.response_tokens},
                        {"original_prompt_tokens", s.original_prompt_tokens},
                        {"original_response_tokens", s.original_response_tokens},
                        {"truncated", s.truncated}});
    visibility.push_back(
        {{"block", "segment"},
         {"segment", i},
         {"sees", nlohmann::json::array(
              {nlohmann::json::array({0, p.image_token_count}),
               nlohmann::json::array({s.offset, s.offset + s.length()})})},
         {"causal", true}});
  }
  return {{"image_id", p.image_id},
          {"image_token_count", p.image_token_count},
          {"length", p.length()},
          {"truncated", p.truncated()},
          {"segments", std::move(segments)},
          {"visibility", std::move(visibility)}};
}

PackedExample PackedExampleFromJson(const nlohmann::json& j) {
  PackedExample p;
  p.image_id = j.at("image_id").get<std::string>();
  p.image_token_count = j.at("image_token_count").get<int>();
  int expected_offset = p.image_token_count;
  for (const auto& s : j.at("segments")) {
    Segment seg;
    seg.annotation_id = s.at("annotation_id").get<std::string>();
    seg.offset = s.at("offset").get<int>();
    seg.prompt_tokens = s.at("prompt_tokens").get<int>();
    seg.response_tokens = s.at("response_tokens").get<int>();
    seg.original_prompt_tokens = s.value("original_prompt_tokens", seg.prompt_tokens);
    seg.original_response_tokens =
        s.value("original_response_tokens", seg.response_tokens);
    seg.truncated = s.value("truncated", false);
    if (seg.offset != expected_offset) {
      throw MismatchError("segment '" + seg.annotation_id + "' starts at " +
                          std::to_string(seg.offset) + ", expected " +
                          std::to_string(expected_offset));
    }
    expected_offset += seg.length();
    p.segments.push_back(std::move(seg));
  }
  return p;
}

std::vector<double> LossTokenDivisors(std::span<const DeviceLoss> devices) {
  if (devices.empty()) throw DegenerateInputError("no devices");
  std::int64_t total = 0;
  for (const auto& d : devices) {
    if (d.loss_token_count < 0) throw Error("negative loss-token count");
    total += d.loss_token_count;
  }
  if (total == 0) throw DegenerateInputError("every device has zero loss tokens");
  const double mean = static_cast<double>(total) / static_cast<double>(devices.size());
  return std::vector<double>(devices.size(), mean);
}

std::vector<double> LocalLossTokenDivisors(std::span<const DeviceLoss> devices) {
  std::vector<double> out;
  for (const auto& d : devices) out.push_back(static_cast<double>(d.loss_token_count));
  return out;
}

AnnotationRecord AnnotationFromJson(const nlohmann::json& j) {
  AnnotationRecord r;
  auto id = [](const nlohmann::json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  r.image_id = id(j.at("image_id"));
  r.annotation_id = id(j.at("annotation_id"));
  r.prompt = j.value("prompt", "");
  if (j.contains("answers")) {
    r.answers = j.at("answers").get<std::vector<std::string>>();
  } else {
    r.response = j.value("response", "");
  }
  if (j.contains("n_points")) r.n_points = j.at("n_points").get<int>();
  if (j.contains("prompt_tokens")) r.prompt_tokens = j.at("prompt_tokens").get<int>();
  if (j.contains("response_tokens")) {
    r.response_tokens = j.at("response_tokens").get<int>();
  }
  if (j.contains("style") && !j.at("style").is_null()) {
    r.style = j.at("style").get<std::string>();
  }
  return r;
}

FilterResult FilterMaxCount(std::vector<AnnotationRecord> records, int max_count) {
  FilterResult result;
  for (auto& r : records) {
    if (r.n_points && *r.n_points > max_count) {
      ++result.dropped;
    } else {
      result.kept.push_back(std::move(r));
    }
  }
  return result;
}

int CountWords(std::string_view text) {
  int n = 0;
  bool in_word = false;
  for (char c : text) {
    const bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r';
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

std::vector<PackedExample> PackRecords(std::span<const AnnotationRecord> records,
                                       int image_token_count, int max_len,
                                       std::mt19937_64& rng) {
  std::map<std::string, std::vector<const AnnotationRecord*>> by_image;
  for (const auto& r : records) by_image[r.image_id].push_back(&r);
  std::vector<PackedExample> out;
  for (const auto& [image_id, group] : by_image) {
    std::vector<Annotation> annotations;
    for (const AnnotationRecord* r : group) {
      const std::string prompt = ApplyStyleTag(r->prompt, r->style);
      const std::string response =
          r->answers.empty() ? r->response : SelectAnswer(r->answers, rng);
      Annotation a;
      a.annotation_id = r->annotation_id;
      a.prompt_tokens = r->prompt_tokens.value_or(CountWords(prompt));
      a.response_tokens = r->response_tokens.value_or(CountWords(response));
      annotations.push_back(std::move(a));
    }
    auto packed = PackAnnotations(image_id, image_token_count, annotations, max_len);
    for (auto& p : packed) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace vlpipe::mixture
