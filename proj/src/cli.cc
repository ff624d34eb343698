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

#include "vlpipe/cli.h"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vlpipe/caption_metrics.h"
#include "vlpipe/data_mixture.h"
#include "vlpipe/error.h"
#include "vlpipe/image_layout.h"
#include "vlpipe/io_util.h"
#include "vlpipe/point_eval.h"
#include "vlpipe/point_format.h"
#include "vlpipe/preference.h"
#include "vlpipe/svg_chart.h"

namespace vlpipe::cli {
namespace {

using nlohmann::json;

// Primary outputs are staged here and written only after the command has
// fully succeeded.
struct Outputs {
  std::vector<std::pair<std::string, std::string>> files;

  void Add(const std::string& path, std::string contents) {
    if (!path.empty()) files.emplace_back(path, std::move(contents));
  }
  void Commit() const {
    for (const auto& [path, contents] : files) io::WriteFileAtomic(path, contents);
  }
};

struct LayoutArgs {
  int width = 0;
  int height = 0;
  layout::LayoutConfig config;
  std::string out;
};

json RunLayout(const LayoutArgs& a, Outputs& outputs) {
  a.config.Validate();
  const auto crops = layout::BuildCropLayout(a.width, a.height, a.config);
  const auto tokens = layout::BuildTokenLayout(crops);
  outputs.Add(a.out, json{{"crop_layout", layout::ToJson(crops)},
                          {"token_layout", layout::ToJson(tokens)}}
                         .dump(1) +
                         "\n");
  return {{"grid", std::to_string(crops.grid_rows) + "x" +
                       std::to_string(crops.grid_cols)},
          {"scale", crops.scale.value()},
          {"scale_exact", std::to_string(crops.scale.num) + "/" +
                              std::to_string(crops.scale.den)},
          {"scaled", {crops.scaled_w, crops.scaled_h}},
          {"patch_lattice", {crops.global_patch_rows(), crops.global_patch_cols()}},
          {"total_tokens", tokens.total_tokens()},
          {"low_res_pooled", tokens.low_res_pooled()},
          {"high_res_pooled", tokens.high_res_pooled()},
          {"pooled_per_untrimmed_crop", tokens.pooled_per_untrimmed_crop}};
}

struct EvalPointArgs {
  std::string gt;
  std::string pred;
  std::string out;
};

json RunEvalPoint(const EvalPointArgs& a, Outputs& outputs) {
  std::vector<eval::PointingGroundTruth> gt;
  for (const auto& j : io::ParseJsonl(io::ReadFile(a.gt))) {
    gt.push_back(eval::GroundTruthFromJson(j));
  }
  std::vector<eval::PointingPrediction> pred;
  for (const auto& j : io::ParseJsonl(io::ReadFile(a.pred))) {
    pred.push_back(eval::PredictionFromJson(j));
  }
  const auto scores = eval::EvaluatePointing(gt, pred);
  const auto mean = eval::MeanScore(scores);
  outputs.Add(a.out, eval::PointingCsv(scores));
  int no_target = 0;
  for (const auto& s : scores) no_target += s.no_target ? 1 : 0;
  return {{"examples", scores.size()},
          {"no_target_examples", no_target},
          {"precision", mean.precision},
          {"recall", mean.recall},
          {"f1", mean.f1}};
}

struct EloArgs {
  std::string log;
  double anchor = 1000.0;
  std::string tie_policy = "half_win";
  int max_iterations = 10000;
  std::string out;
  std::string win_rates;
};

json RunElo(const EloArgs& a, Outputs& outputs, std::ostream& err) {
  const auto log = ranking::FilterIdk(ranking::ParseLogCsv(io::ReadFile(a.log)));
  ranking::FitOptions options;
  options.anchor = a.anchor;
  options.tie_policy = ranking::ParseTiePolicy(a.tie_policy);
  options.max_iterations = a.max_iterations;
  const auto table = ranking::FitBradleyTerry(log, options);
  for (const auto& w : table.warnings) err << "warning: " << w << "\n";
  outputs.Add(a.out, ranking::RatingsCsv(table));
  outputs.Add(a.win_rates, ranking::WinRateMatrixCsv(log));
  json ratings = json::array();
  for (const auto& r : table.ratings) {
    ratings.push_back({{"model", r.model}, {"rating", r.rating}});
  }
  return {{"ratings", ratings},
          {"iterations", table.iterations},
          {"gradient_norm", table.gradient_norm},
          {"components", table.components},
          {"warnings", table.warnings}};
}

struct PackArgs {
  std::string annotations;
  std::string packed;
  int image_tokens = 0;
  int max_len = mixture::kDefaultMaxSequenceLength;
  int max_points = mixture::kDefaultMaxPointCount;
  std::uint64_t seed = 0;
  std::string out;
};

json StatsJson(const mixture::PackingStats& s) {
  return {{"packed_sequences", s.packed_sequences},
          {"unpacked_sequences", s.unpacked_sequences},
          {"packed_tokens", s.packed_tokens},
          {"unpacked_tokens", s.unpacked_tokens},
          {"image_reduction", s.image_reduction},
          {"seq_len_increase", s.seq_len_increase}};
}

json RunPack(const PackArgs& a, Outputs& outputs) {
  if (a.annotations.empty() == a.packed.empty()) {
    throw CLI::ValidationError("exactly one of --annotations or --packed is required");
  }
  if (!a.packed.empty()) {
    std::vector<mixture::PackedExample> packed;
    for (const auto& j : io::ParseJsonl(io::ReadFile(a.packed))) {
      packed.push_back(mixture::PackedExampleFromJson(j));
    }
    return {{"stats", StatsJson(mixture::ComputePackingStats(packed))}};
  }
  std::vector<mixture::AnnotationRecord> records;
  for (const auto& j : io::ParseJsonl(io::ReadFile(a.annotations))) {
    records.push_back(mixture::AnnotationFromJson(j));
  }
  auto filtered = mixture::FilterMaxCount(std::move(records), a.max_points);
  std::mt19937_64 rng(a.seed);
  const auto packed =
      mixture::PackRecords(filtered.kept, a.image_tokens, a.max_len, rng);
  std::vector<json> lines;
  int truncated = 0;
  for (const auto& p : packed) {
    lines.push_back(mixture::ToJson(p));
    for (const auto& s : p.segments) truncated += s.truncated ? 1 : 0;
  }
  outputs.Add(a.out, io::DumpJsonl(lines));
  json summary = {{"dropped_over_max_points", filtered.dropped},
                  {"truncated_segments", truncated}};
  if (!packed.empty()) summary["stats"] = StatsJson(mixture::ComputePackingStats(packed));
  return summary;
}

struct MixArgs {
  std::string spec;
  std::vector<std::int64_t> sizes;
  std::vector<double> multipliers;
  std::size_t draws = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string samples_out;
};

json RunMix(const MixArgs& a, Outputs& outputs) {
  mixture::MixtureSpec spec;
  if (!a.spec.empty()) {
    spec = mixture::MixtureSpecFromJson(json::parse(io::ReadFile(a.spec)));
  } else {
    if (!a.multipliers.empty() && a.multipliers.size() != a.sizes.size()) {
      throw MismatchError("--multipliers must match --sizes in length");
    }
    for (std::size_t i = 0; i < a.sizes.size(); ++i) {
      mixture::DatasetEntry e;
      e.name = "dataset_" + std::to_string(i);
      e.size = a.sizes[i];
      if (!a.multipliers.empty()) e.weight_multiplier = a.multipliers[i];
      spec.datasets.push_back(std::move(e));
    }
  }
  const auto rates = mixture::MixtureRates(spec);
  std::string csv = "dataset,size,rate\n";
  json rates_json = json::array();
  for (std::size_t i = 0; i < rates.size(); ++i) {
    csv += io::CsvEscape(spec.datasets[i].name) + "," +
           std::to_string(spec.datasets[i].size) + "," + io::FormatFixed(rates[i], 12) + "\n";
    rates_json.push_back(rates[i]);
  }
  outputs.Add(a.out, csv);
  json summary = {{"rates", rates_json}};
  if (a.draws > 0) {
    std::mt19937_64 rng(a.seed);
    const auto samples = mixture::SampleDatasets(rates, a.draws, rng);
    std::vector<std::size_t> counts(rates.size(), 0);
    std::string lines;
    for (std::size_t s : samples) {
      ++counts[s];
      lines += spec.datasets[s].name + "\n";
    }
    outputs.Add(a.samples_out, lines);
    summary["draw_counts"] = counts;
  }
  return summary;
}

struct CapHintArgs {
  std::int64_t chars = 0;
  double sigma = 25.0;
  double include_prob = 0.9;
  std::uint64_t seed = 0;
  std::string style = "long_caption";
  std::size_t draws = 1;
  std::string out;
};

json RunCapHint(const CapHintArgs& a, Outputs& outputs) {
  const auto style = caption::ParseCaptionStyle(a.style);
  caption::LengthHintOptions opts{a.sigma, a.include_prob};
  std::mt19937_64 rng(a.seed);
  std::string lines;
  std::size_t present = 0;
  caption::LengthHint first;
  for (std::size_t i = 0; i < a.draws; ++i) {
    const auto hint = caption::MakeLengthHint(a.chars, opts, rng);
    if (i == 0) first = hint;
    present += hint.present ? 1 : 0;
    lines += caption::FormatCaptionPrompt(style, hint) + "\n";
  }
  outputs.Add(a.out, lines);
  json summary = {{"hint", first.present ? json(first.value) : json(nullptr)},
                  {"present", first.present},
                  {"prompt", caption::FormatCaptionPrompt(style, first)}};
  if (a.draws > 1) {
    summary["draws"] = a.draws;
    summary["present_fraction"] = static_cast<double>(present) / a.draws;
  }
  return summary;
}

struct CapF1Args {
  std::string judgments;
  bool sweep = false;
  std::string out;
  std::string svg;
};

json RunCapF1(const CapF1Args& a, Outputs& outputs, std::ostream& err) {
  std::vector<caption::ImageJudgment> judgments;
  std::map<int, std::vector<caption::ImageJudgment>> groups;
  for (const auto& j : io::ParseJsonl(io::ReadFile(a.judgments))) {
    auto judgment = caption::JudgmentFromJson(j);
    if (a.sweep) {
      if (!j.contains("hint")) {
        throw Error("--sweep requires a 'hint' field on every judgment");
      }
      groups[j.at("hint").get<int>()].push_back(judgment);
    }
    judgments.push_back(std::move(judgment));
  }
  if (a.sweep) {
    const auto sweep = caption::PrSweep(groups);
    for (const auto& w : sweep.warnings) err << "warning: " << w << "\n";
    outputs.Add(a.out, caption::SweepCsv(sweep));
    if (!a.svg.empty()) {
      plot::Series p{"precision", "#1f77b4", {}};
      plot::Series r{"recall", "#d62728", {}};
      for (const auto& row : sweep.rows) {
        p.points.emplace_back(row.hint, row.precision);
        r.points.emplace_back(row.hint, row.recall);
      }
      outputs.Add(a.svg, plot::LineChartSvg("Caption precision and recall by length hint",
                                            "length hint", "score", {p, r}));
    }
    json rows = json::array();
    for (const auto& row : sweep.rows) {
      rows.push_back({{"hint", row.hint},
                      {"precision", row.precision},
                      {"recall", row.recall},
                      {"images", row.images}});
    }
    return {{"sweep", rows}};
  }
  const auto score = caption::CapF1(judgments);
  for (const auto& w : score.warnings) err << "warning: " << w << "\n";
  outputs.Add(a.out, "precision,recall,f1,images\n" + io::FormatFixed(score.precision, 6) +
                         "," + io::FormatFixed(score.recall, 6) + "," +
                         io::FormatFixed(score.f1, 6) + "," + std::to_string(score.images) +
                         "\n");
  return {{"precision", score.precision},
          {"recall", score.recall},
          {"f1", score.f1},
          {"images", score.images}};
}

struct PointsArgs {
  std::string in;
  std::string text;
  bool lenient = false;
  std::string out;
};

std::string PointsInput(const PointsArgs& a) {
  if (!a.text.empty()) return a.text;
  if (a.in.empty()) throw CLI::ValidationError("one of --in or --text is required");
  return io::ReadFile(a.in);
}

std::vector<points::PointSet> ReadPointSets(const PointsArgs& a) {
  std::vector<points::PointSet> sets;
  for (const auto& j : io::ParseJsonl(PointsInput(a))) {
    sets.push_back(points::PointSetFromJson(j));
  }
  return sets;
}

json RunPointsParse(const PointsArgs& a, Outputs& outputs, std::ostream& err) {
  const auto parsed = points::Parse(
      PointsInput(a), a.lenient ? points::ParseMode::kLenient : points::ParseMode::kStrict);
  for (const auto& issue : parsed.skipped) {
    err << "warning: skipped tag at offset " << issue.offset << ": " << issue.message << "\n";
  }
  std::vector<json> lines;
  for (const auto& s : parsed.sets) lines.push_back(points::ToJson(s));
  outputs.Add(a.out, io::DumpJsonl(lines));
  return {{"sets", parsed.sets.size()},
          {"points", parsed.point_count()},
          {"skipped", parsed.skipped.size()},
          {"residual_text", parsed.residual_text}};
}

json RunPointsRender(const PointsArgs& a, Outputs& outputs) {
  std::string text;
  json rendered = json::array();
  for (const auto& s : ReadPointSets(a)) {
    const std::string line = points::Render(s);
    text += line + "\n";
    rendered.push_back(line);
  }
  outputs.Add(a.out, text);
  return {{"rendered", rendered}};
}

json RunPointsOrder(const PointsArgs& a, Outputs& outputs) {
  std::vector<json> lines;
  for (auto s : ReadPointSets(a)) {
    s.points = points::OrderPoints(std::move(s.points));
    lines.push_back(points::ToJson(s));
  }
  outputs.Add(a.out, io::DumpJsonl(lines));
  return {{"sets", lines.size()}};
}

struct CountArgs {
  std::string in;
  std::string strategy = "point_then_count";
  std::string out;
};

json RunCount(const CountArgs& a, Outputs& outputs) {
  const auto strategy = eval::ParseCountStrategy(a.strategy);
  std::vector<eval::CountingExample> examples;
  std::string csv = "id,extracted,gt_count,correct\n";
  for (const auto& j : io::ParseJsonl(io::ReadFile(a.in))) {
    eval::CountingExample ex{j.at("response_text").get<std::string>(),
                             j.at("gt_count").get<std::int64_t>()};
    const auto count = eval::ExtractCount(ex.response, strategy);
    const auto& id = j.value("id", json(examples.size()));
    csv += io::CsvEscape(id.is_string() ? id.get<std::string>() : id.dump()) + "," +
           (count ? std::to_string(*count) : std::string()) + "," +
           std::to_string(ex.gt_count) + "," +
           (count && *count == ex.gt_count ? "1" : "0") + "\n";
    examples.push_back(std::move(ex));
  }
  const double accuracy = eval::CountingAccuracy(examples, strategy);
  outputs.Add(a.out, csv);
  return {{"strategy", eval::CountStrategyName(strategy)},
          {"examples", examples.size()},
          {"accuracy", accuracy}};
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Vision-language data pipeline and evaluation tools", "vlpipe"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML config file; command-line flags override it");

  LayoutArgs layout_args;
  auto* layout_cmd = app.add_subcommand("layout", "Plan multi-crop tiling and vision tokens");
  layout_cmd->add_option("--width", layout_args.width, "Image width in pixels")->required();
  layout_cmd->add_option("--height", layout_args.height, "Image height in pixels")->required();
  layout_cmd->add_option("--crop-size", layout_args.config.crop_size_px, "Crop side in pixels");
  layout_cmd->add_option("--patch-size", layout_args.config.patch_size_px, "Patch side in pixels");
  layout_cmd->add_option("--overlap", layout_args.config.overlap_margin_patches,
                         "Overlap margin in patches (even)");
  layout_cmd->add_option("--pool", layout_args.config.pool_window, "Pooling window side");
  layout_cmd->add_option("--max-crops", layout_args.config.max_crops, "Maximum crops");
  layout_cmd->add_option("--out", layout_args.out, "Layout JSON output path");

  EvalPointArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval-point", "Score pointing predictions");
  eval_cmd->add_option("--gt", eval_args.gt, "Ground-truth JSONL")->required();
  eval_cmd->add_option("--pred", eval_args.pred, "Predictions JSONL")->required();
  eval_cmd->add_option("--out", eval_args.out, "Per-example CSV output path");

  EloArgs elo_args;
  auto* elo_cmd = app.add_subcommand("elo", "Fit Bradley-Terry ratings on the Elo scale");
  elo_cmd->add_option("--log", elo_args.log, "Outcome log CSV")->required();
  elo_cmd->add_option("--anchor", elo_args.anchor, "Mean rating");
  elo_cmd->add_option("--tie-policy", elo_args.tie_policy, "half_win or ignore")
      ->check(CLI::IsMember({"half_win", "ignore"}));
  elo_cmd->add_option("--max-iterations", elo_args.max_iterations, "Iteration cap");
  elo_cmd->add_option("--out", elo_args.out, "Ratings CSV output path");
  elo_cmd->add_option("--win-rates", elo_args.win_rates, "Pairwise win-rate matrix CSV path");

  PackArgs pack_args;
  auto* pack_cmd = app.add_subcommand("pack", "Pack per-image annotations into sequences");
  pack_cmd->add_option("--annotations", pack_args.annotations, "Annotations JSONL");
  pack_cmd->add_option("--packed", pack_args.packed, "Existing packed JSONL (stats only)");
  pack_cmd->add_option("--image-tokens", pack_args.image_tokens, "Vision tokens per image");
  pack_cmd->add_option("--max-len", pack_args.max_len, "Maximum sequence length");
  pack_cmd->add_option("--max-points", pack_args.max_points,
                       "Drop pointing annotations with more points");
  pack_cmd->add_option("--seed", pack_args.seed, "Seed for multi-answer selection");
  pack_cmd->add_option("--out", pack_args.out, "Packed JSONL output path");

  MixArgs mix_args;
  auto* mix_cmd = app.add_subcommand("mix", "Compute dataset mixture rates");
  mix_cmd->add_option("--spec", mix_args.spec, "Mixture spec JSON");
  mix_cmd->add_option("--sizes", mix_args.sizes, "Dataset sizes")->delimiter(',');
  mix_cmd->add_option("--multipliers", mix_args.multipliers, "Weight multipliers")
      ->delimiter(',');
  mix_cmd->add_option("--draws", mix_args.draws, "Number of dataset draws to sample");
  mix_cmd->add_option("--seed", mix_args.seed, "Sampling seed");
  mix_cmd->add_option("--out", mix_args.out, "Rates CSV output path");
  mix_cmd->add_option("--samples-out", mix_args.samples_out, "Sampled dataset names");

  CapHintArgs hint_args;
  auto* hint_cmd = app.add_subcommand("caphint", "Draw captioning length hints");
  hint_cmd->add_option("--chars", hint_args.chars, "Caption length in characters")->required();
  hint_cmd->add_option("--sigma", hint_args.sigma, "Noise standard deviation");
  hint_cmd->add_option("--include-prob", hint_args.include_prob, "Probability of a hint");
  hint_cmd->add_option("--seed", hint_args.seed, "Random seed");
  hint_cmd->add_option("--style", hint_args.style, "long_caption or transcript")
      ->check(CLI::IsMember({"long_caption", "transcript"}));
  hint_cmd->add_option("--draws", hint_args.draws, "Number of hints to draw");
  hint_cmd->add_option("--out", hint_args.out, "Prompt-per-line output path");

  CapF1Args capf1_args;
  auto* capf1_cmd = app.add_subcommand("capf1", "Aggregate caption precision/recall/F1");
  capf1_cmd->add_option("--judgments", capf1_args.judgments, "Judgments JSONL")->required();
  capf1_cmd->add_flag("--sweep", capf1_args.sweep, "Group by length hint");
  capf1_cmd->add_option("--out", capf1_args.out, "CSV output path");
  capf1_cmd->add_option("--svg", capf1_args.svg, "SVG chart path (with --sweep)");

  PointsArgs points_args;
  auto* points_cmd = app.add_subcommand("points", "Parse, render or order point annotations");
  points_cmd->require_subcommand(1);
  auto add_points_io = [&](CLI::App* cmd) {
    cmd->add_option("--in", points_args.in, "Input file");
    cmd->add_option("--text", points_args.text, "Inline input");
    cmd->add_option("--out", points_args.out, "Output path");
  };
  auto* parse_cmd = points_cmd->add_subcommand("parse", "Tagged text to JSONL");
  add_points_io(parse_cmd);
  parse_cmd->add_flag("--lenient", points_args.lenient, "Skip malformed tags");
  auto* render_cmd = points_cmd->add_subcommand("render", "JSONL to canonical tags");
  add_points_io(render_cmd);
  auto* order_cmd = points_cmd->add_subcommand("order", "Order points top-down, left-right");
  add_points_io(order_cmd);

  CountArgs count_args;
  auto* count_cmd = app.add_subcommand("count", "Counting accuracy from responses");
  count_cmd->add_option("--in", count_args.in, "JSONL {id, response_text, gt_count}")
      ->required();
  count_cmd->add_option("--strategy", count_args.strategy, "Counting strategy")
      ->check(CLI::IsMember({"count", "point_then_count", "count_then_point", "point_regex"}));
  count_cmd->add_option("--out", count_args.out, "Per-example CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsageError;
  }

  Outputs outputs;
  json summary;
  std::string command;
  try {
    if (layout_cmd->parsed()) {
      command = "layout";
      summary = RunLayout(layout_args, outputs);
    } else if (eval_cmd->parsed()) {
      command = "eval-point";
      summary = RunEvalPoint(eval_args, outputs);
    } else if (elo_cmd->parsed()) {
      command = "elo";
      summary = RunElo(elo_args, outputs, err);
    } else if (pack_cmd->parsed()) {
      command = "pack";
      summary = RunPack(pack_args, outputs);
    } else if (mix_cmd->parsed()) {
      command = "mix";
      if (mix_args.spec.empty() == mix_args.sizes.empty()) {
        throw CLI::ValidationError("exactly one of --spec or --sizes is required");
      }
      summary = RunMix(mix_args, outputs);
    } else if (hint_cmd->parsed()) {
      command = "caphint";
      summary = RunCapHint(hint_args, outputs);
    } else if (capf1_cmd->parsed()) {
      command = "capf1";
      summary = RunCapF1(capf1_args, outputs, err);
    } else if (parse_cmd->parsed()) {
      command = "points parse";
      summary = RunPointsParse(points_args, outputs, err);
    } else if (render_cmd->parsed()) {
      command = "points render";
      summary = RunPointsRender(points_args, outputs);
    } else if (order_cmd->parsed()) {
      command = "points order";
      summary = RunPointsOrder(points_args, outputs);
    } else if (count_cmd->parsed()) {
      command = "count";
      summary = RunCount(count_args, outputs);
    }
    outputs.Commit();
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    out << json{{"command", command}, {"ok", false}, {"error", e.what()}}.dump() << "\n";
    return kExitDomainError;
  } catch (const json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    out << json{{"command", command}, {"ok", false}, {"error", e.what()}}.dump() << "\n";
    return kExitDomainError;
  }
  summary["command"] = command;
  summary["ok"] = true;
  json written = json::array();
  for (const auto& [path, contents] : outputs.files) written.push_back(path);
  summary["outputs"] = written;
  out << summary.dump() << "\n";
  return kExitOk;
}

}  // namespace vlpipe::cli
