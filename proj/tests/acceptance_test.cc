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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only
// when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "vlpipe/assignment.h"
#include "vlpipe/caption_metrics.h"
#include "vlpipe/cli.h"
#include "vlpipe/connector.h"
#include "vlpipe/data_mixture.h"
#include "vlpipe/image_layout.h"
#include "vlpipe/io_util.h"
#include "vlpipe/mask.h"
#include "vlpipe/point_eval.h"
#include "vlpipe/point_format.h"
#include "vlpipe/preference.h"

namespace vlpipe {
namespace {

namespace fs = std::filesystem;

struct Verdict {
  bool pass = false;
  std::string detail;
};

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

// 1
Verdict GridSelectionOracle() {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> dim(1, 6000);
  std::uniform_int_distribution<int> crops(1, 24);
  int mismatches = 0;
  Timer timer;
  for (int i = 0; i < 200; ++i) {
    layout::LayoutConfig config;
    config.max_crops = crops(rng);
    const int w = dim(rng);
    const int h = dim(rng);
    const auto got = layout::SelectGrid(w, h, config);
    const auto want = testing::BruteForceGrid(w, h, config.crop_size_px,
                                              config.overlap_px(), config.max_crops);
    if (got.rows != want.rows || got.cols != want.cols ||
        !(got.scale == layout::Scale{want.num, want.den})) {
      ++mismatches;
    }
  }
  const double t = timer.seconds();
  return {mismatches == 0 && t < 1.0,
          Fmt("%.0f/200 mismatches, %.3f s (limit 1 s)", mismatches, t)};
}

// 2
Verdict TilingExactness() {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> dim(1, 6000);
  std::uniform_int_distribution<int> half_margin(0, 6);
  std::uniform_int_distribution<int> crops(1, 24);
  long violations = 0;
  for (int i = 0; i < 100; ++i) {
    layout::LayoutConfig config;
    config.overlap_margin_patches = 2 * half_margin(rng);
    config.max_crops = crops(rng);
    const auto l = layout::BuildCropLayout(dim(rng), dim(rng), config);
    const int rows = l.global_patch_rows();
    const int cols = l.global_patch_cols();
    std::vector<int> hits(static_cast<std::size_t>(rows) * cols, 0);
    for (const auto& c : l.crops) {
      for (int r = c.kept_rows.begin; r < c.kept_rows.end; ++r) {
        for (int k = c.kept_cols.begin; k < c.kept_cols.end; ++k) {
          const int gr = l.GlobalPatchRowOffset(c.grid_row) + r;
          const int gc = l.GlobalPatchColOffset(c.grid_col) + k;
          if (gr < 0 || gr >= rows || gc < 0 || gc >= cols) {
            ++violations;
            continue;
          }
          ++hits[static_cast<std::size_t>(gr) * cols + gc];
        }
      }
    }
    for (int h : hits) violations += h != 1;
  }
  return {violations == 0, Fmt("%.0f violations over 100 layouts", violations)};
}

// 3
Verdict EncoderConstants() {
  const layout::LayoutConfig config;
  const auto tokens = layout::BuildTokenLayout(layout::BuildCropLayout(336, 336, config));
  const bool ok = config.patches_per_side() == 24 &&
                  tokens.pooled_per_untrimmed_crop == 144 &&
                  tokens.low_res_rows == 12 && tokens.low_res_cols == 12 &&
                  config.overlap_px() == 56 && config.overlap_margin_patches == 4;
  return {ok, Fmt("%.0f patches/side, %.0f pooled/crop, overlap %.0f px",
                  config.patches_per_side(), tokens.pooled_per_untrimmed_crop,
                  config.overlap_px())};
}

// 4
Verdict AssignmentExactness() {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> size(1, 7);
  std::uniform_int_distribution<int> cost_value(0, 1000);
  int mismatches = 0;
  Timer timer;
  for (int i = 0; i < 500; ++i) {
    const int rows = size(rng);
    const int cols = size(rng);
    std::vector<std::vector<double>> cost(rows, std::vector<double>(cols));
    for (auto& row : cost) {
      for (double& v : row) v = cost_value(rng);
    }
    if (eval::SolveAssignment(cost).total_cost != testing::BruteForceAssignmentCost(cost)) {
      ++mismatches;
    }
  }
  const double t = timer.seconds();
  return {mismatches == 0 && t < 5.0,
          Fmt("%.0f/500 mismatches, %.3f s (limit 5 s)", mismatches, t)};
}

// 5
Verdict PointingDefinitions() {
  using points::Point;
  auto rect = [](int x0, int y0, int x1, int y1) {
    eval::Mask m(101, 101);
    m.FillRect(x0, y0, x1, y1);
    return m;
  };
  int failures = 0;
  auto check = [&](const eval::PointingScore& s, double p, double r) {
    failures += !(s.precision == p && s.recall == r);
  };
  // Three masks; the third prediction sits in mask B but is assigned to C.
  const std::vector<Point> gt = {{10, 10}, {50, 50}, {90, 90}};
  const std::vector<eval::Mask> masks = {rect(0, 0, 20, 20), rect(40, 40, 75, 75),
                                         rect(80, 80, 100, 100)};
  const std::vector<Point> pred = {{12, 12}, {52, 48}, {72, 72}};
  const auto scene = eval::ScorePointing(pred, gt, masks, 101, 101);
  failures += std::abs(scene.precision - 2.0 / 3.0) > 0 ||
              std::abs(scene.recall - 2.0 / 3.0) > 0;
  const std::vector<Point> one_gt = {{10, 10}};
  const std::vector<eval::Mask> one_mask = {rect(0, 0, 20, 20)};
  check(eval::ScorePointing(std::vector<Point>{{11, 11}}, one_gt, one_mask, 101, 101),
        1.0, 1.0);
  check(eval::ScorePointing(std::vector<Point>{{90, 90}, {11, 11}}, one_gt, one_mask,
                            101, 101),
        0.5, 1.0);
  check(eval::ScorePointing(std::vector<Point>{}, one_gt, one_mask, 101, 101), 0.0, 0.0);
  check(eval::ScoreNoTarget("There are none."), 1.0, 1.0);
  check(eval::ScoreNoTarget(""), 1.0, 1.0);
  check(eval::ScoreNoTarget(R"(<point x="5.0" y="5.0" alt="x">x</point>)"), 0.0, 0.0);
  return {failures == 0, Fmt("%.0f of 7 fixtures differ from hand values", failures)};
}

// 6
Verdict PointFormatRoundTrip() {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> count(1, 60);
  std::uniform_real_distribution<double> coord(0.0, 100.0);
  std::uniform_int_distribution<std::size_t> len(0, 16);
  const std::string alphabet = "abc XYZ 0189<>&\"'=/";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  const std::regex last_index(R"(.*\bx(\d+)=")");
  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    points::PointSet s;
    for (int n = count(rng); n > 0; --n) s.points.push_back({coord(rng), coord(rng)});
    s.alt.assign(len(rng), ' ');
    for (char& c : s.alt) c = alphabet[pick(rng)];
    s.inline_text.assign(len(rng), ' ');
    for (char& c : s.inline_text) c = alphabet[pick(rng)];
    const std::string first = points::Render(s);
    const auto parsed = points::Parse(first);
    if (parsed.sets.size() != 1 || points::Render(parsed.sets[0]) != first) {
      ++failures;
      continue;
    }
    std::size_t last = 1;
    if (s.points.size() > 1) {
      std::smatch m;
      const std::string attrs = first.substr(0, first.find(" alt=\""));
      last = std::regex_search(attrs, m, last_index) ? std::stoul(m[1]) : 0;
    }
    failures += last != s.points.size();
  }
  return {failures == 0, Fmt("%.0f/1000 round-trip or numbering failures", failures)};
}

// 7
Verdict BradleyTerry() {
  using ranking::Verdict;
  Timer timer;
  auto pair_log = [](int a_wins, int b_wins) {
    ranking::PreferenceLog log;
    for (int i = 0; i < a_wins; ++i) log.push_back({"a", "b", Verdict::kAWins, ""});
    for (int i = 0; i < b_wins; ++i) log.push_back({"a", "b", Verdict::kBWins, ""});
    return log;
  };
  const auto even = ranking::FitBradleyTerry(pair_log(500, 500));
  const double even_gap = std::abs(even.rating("a") - even.rating("b"));
  const auto skew = ranking::FitBradleyTerry(pair_log(750, 250));
  const double skew_gap = skew.rating("a") - skew.rating("b");

  const std::vector<double> theta = {0.0, 0.6, -0.4, 1.1, 0.3};
  const std::vector<std::string> planted = {"m3", "m1", "m4", "m0", "m2"};
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int recovered = 0;
  for (int trial = 0; trial < 100; ++trial) {
    ranking::PreferenceLog log;
    log.reserve(10000);
    for (int m = 0; m < 10000; ++m) {
      const int a = pick(rng);
      int b = pick(rng);
      while (b == a) b = pick(rng);
      const double p = 1.0 / (1.0 + std::exp(theta[b] - theta[a]));
      log.push_back({"m" + std::to_string(a), "m" + std::to_string(b),
                     u(rng) < p ? Verdict::kAWins : Verdict::kBWins, ""});
    }
    const auto table = ranking::FitBradleyTerry(log);
    std::vector<std::string> order;
    for (const auto& r : table.ratings) order.push_back(r.model);
    recovered += order == planted;
  }
  const double t = timer.seconds();
  const bool ok = even_gap < 0.01 &&
                  std::abs(skew_gap - 400.0 * std::log10(3.0)) <= 0.1 &&
                  recovered >= 99 && t < 10.0;
  return {ok, Fmt("50/50 gap %.4f, 75/25 gap %.4f, ", even_gap, skew_gap) +
                  Fmt("ordering %.0f/100, %.2f s (limit 10 s)", recovered, t)};
}

// 8
Verdict OutcomeRateFixture() {
  using ranking::Verdict;
  ranking::PreferenceLog log;
  auto add = [&](Verdict v, int n) {
    for (int i = 0; i < n; ++i) log.push_back({"api_model", "ours", v, ""});
  };
  add(Verdict::kTieGood, 455);
  add(Verdict::kTieBad, 141);
  add(Verdict::kAWins, 261);
  add(Verdict::kBWins, 143);
  add(Verdict::kIdk, 30);
  const double idk_share = 30.0 / static_cast<double>(log.size());
  const auto kept = ranking::FilterIdk(log);
  const auto b = ranking::ComputeOutcomeBreakdown(kept, "api_model", "ours");
  const double win = 100.0 * ranking::WinRate(kept, "api_model", "ours").value();
  const bool ok = std::abs(idk_share - 0.029) < 0.0005 && b.tie_good == 0.455 &&
                  b.tie_bad == 0.141 && b.a_wins == 0.261 && b.b_wins == 0.143 &&
                  std::abs(win - 65.0) <= 0.5;
  return {ok, Fmt("win rate excluding ties %.2f%% (target 65 +/- 0.5), idk %.2f%%", win,
                  100 * idk_share)};
}

// 9
Verdict PackingEquivalence() {
  constexpr int kImage = 2;
  long mismatches = 0;
  long cases = 0;
  std::vector<mixture::Annotation> anns;
  std::vector<int> lengths;
  std::function<void(int)> enumerate = [&](int remaining) {
    if (!lengths.empty()) {
      anns.clear();
      for (std::size_t i = 0; i < lengths.size(); ++i) {
        anns.push_back({std::to_string(i), lengths[i] / 3, lengths[i] - lengths[i] / 3});
      }
      const auto packed = mixture::PackAnnotations("img", kImage, anns, 4096);
      ++cases;
      if (packed.size() != 1) {
        ++mismatches;
      } else {
        const auto& p = packed[0];
        const auto dense = p.DenseVisibility();
        // Image tokens: plain causal attention among themselves.
        for (int q = 0; q < kImage; ++q) {
          for (int k = 0; k < p.length(); ++k) mismatches += dense[q][k] != (k <= q);
        }
        // Segment token j of a segment at `offset` corresponds to position
        // kImage + j of its own (image, annotation) sequence, where causal
        // attention reaches the image and segment tokens 0..j.
        for (const auto& seg : p.segments) {
          for (int j = 0; j < seg.length(); ++j) {
            const auto& row = dense[seg.offset + j];
            for (int k = 0; k < p.length(); ++k) {
              const bool want = k < kImage || (k >= seg.offset && k <= seg.offset + j);
              mismatches += row[k] != want;
            }
          }
        }
      }
    }
    if (remaining == 0) return;
    for (int len = 1; len <= 20; ++len) {
      lengths.push_back(len);
      enumerate(remaining - 1);
      lengths.pop_back();
    }
  };
  enumerate(4);

  // 40 images with three 50-token annotations each.
  std::vector<mixture::PackedExample> all;
  const std::vector<mixture::Annotation> three = {{"a", 10, 40}, {"b", 20, 30}, {"c", 5, 45}};
  for (int i = 0; i < 40; ++i) {
    for (auto& p : mixture::PackAnnotations("img" + std::to_string(i), 576, three)) {
      all.push_back(std::move(p));
    }
  }
  const auto stats = mixture::ComputePackingStats(all);
  const bool two_thirds = 3 * stats.packed_sequences == stats.unpacked_sequences &&
                          std::abs(stats.image_reduction - 2.0 / 3.0) <= 1e-15;
  return {mismatches == 0 && two_thirds,
          Fmt("%.0f visibility mismatches over %.0f packings, image reduction %.6f",
              static_cast<double>(mismatches), static_cast<double>(cases),
              stats.image_reduction)};
}

// 10
Verdict LossWeighting() {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> loss(0.0, 50.0);
  std::uniform_int_distribution<std::int64_t> count(0, 4000);
  std::uniform_int_distribution<int> devices(1, 32);
  double worst = 0.0;
  int checked = 0;
  while (checked < 100) {
    std::vector<mixture::DeviceLoss> d(static_cast<std::size_t>(devices(rng)));
    std::int64_t total = 0;
    double loss_total = 0.0;
    for (auto& x : d) {
      x = {loss(rng), count(rng)};
      total += x.loss_token_count;
      loss_total += x.loss_sum;
    }
    if (total == 0) continue;
    const auto div = mixture::LossTokenDivisors(d);
    double lhs = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) lhs += d[i].loss_sum / div[i];
    lhs /= static_cast<double>(d.size());
    worst = std::max(worst, std::abs(lhs - loss_total / static_cast<double>(total)));
    ++checked;
  }

  // Toy model: per-token loss (w * x - y)^2, gradient 2 x (w x - y).
  struct Device {
    std::vector<double> x, y;
  };
  auto grad_sum = [](const Device& d, double w) {
    double g = 0.0;
    for (std::size_t t = 0; t < d.x.size(); ++t) g += 2 * d.x[t] * (w * d.x[t] - d.y[t]);
    return g;
  };
  auto averaged = [&](const std::vector<Device>& ds, const std::vector<double>& div,
                      double w) {
    double g = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) g += grad_sum(ds[i], w) / div[i];
    return g / static_cast<double>(ds.size());
  };
  auto counts = [](const std::vector<Device>& ds) {
    std::vector<mixture::DeviceLoss> out;
    for (const auto& d : ds) out.push_back({0.0, static_cast<std::int64_t>(d.x.size())});
    return out;
  };
  const double w = 0.3;
  const std::vector<Device> unequal = {{{1.0}, {0.0}}, {{2.0, 3.0, 1.0}, {5.0, 1.0, 2.0}}};
  const std::vector<Device> equal = {{{1.0, 4.0}, {0.0, 2.0}}, {{2.0, 3.0}, {5.0, 1.0}}};
  const double full_unequal = (grad_sum(unequal[0], w) + grad_sum(unequal[1], w)) / 4.0;
  const double unbiased = averaged(unequal, mixture::LossTokenDivisors(counts(unequal)), w);
  const double biased =
      averaged(unequal, mixture::LocalLossTokenDivisors(counts(unequal)), w);
  const double eq_unbiased = averaged(equal, mixture::LossTokenDivisors(counts(equal)), w);
  const double eq_biased = averaged(equal, mixture::LocalLossTokenDivisors(counts(equal)), w);
  const bool ok = worst <= 1e-12 && std::abs(unbiased - full_unequal) <= 1e-12 &&
                  std::abs(biased - unbiased) > 1e-3 &&
                  std::abs(eq_biased - eq_unbiased) <= 1e-12;
  return {ok, Fmt("identity max error %.2e; toy gradients unequal %.4f vs %.4f, ", worst,
                  biased, unbiased) +
                  Fmt("equal gap %.1e", std::abs(eq_biased - eq_unbiased))};
}

// 11
Verdict LengthHint() {
  const auto exact = caption::MakeLengthHint(975, caption::LengthHintOptions{0.0, 1.0}, 11u);
  std::mt19937_64 rng(11);
  int present = 0;
  for (int i = 0; i < 10000; ++i) present += caption::MakeLengthHint(800, {}, rng).present;
  const double frac = present / 10000.0;
  const bool ok = exact.present && exact.value == 65 && std::abs(frac - 0.9) <= 0.01;
  return {ok, Fmt("sigma 0 hint %.0f, inclusion %.4f (target 0.90 +/- 0.01)", exact.value,
                  frac)};
}

// 12
Verdict CapF1() {
  const std::vector<caption::ImageJudgment> single = {{"img", 5, 3, 5, 2}};
  const auto s = caption::CapF1(single);
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> n(0, 40);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<caption::ImageJudgment> js;
    for (int i = 0; i < 1 + trial % 20; ++i) {
      const int gen = n(rng);
      const int gt = 1 + n(rng);
      js.push_back({std::to_string(i), gen, std::uniform_int_distribution<int>(0, gen)(rng),
                    gt, std::uniform_int_distribution<int>(0, gt)(rng)});
    }
    const auto r = caption::CapF1(js);
    worst = std::max(worst, std::abs(r.f1 * (r.precision + r.recall) -
                                     2 * r.precision * r.recall));
  }
  return {s.f1 == 0.48 && worst <= 1e-12,
          Fmt("(0.6, 0.4) -> %.17g, identity max error %.2e", s.f1, worst)};
}

// 13
Verdict ConnectorMath() {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g(0.0, 1.0);
  auto random_matrix = [&](int rows, int cols) {
    connector::Matrix m(rows, cols);
    for (double& v : m.data) v = 0.5 * g(rng);
    return m;
  };
  auto dense = [](const connector::Matrix& m) {
    testing::DenseMatrix out(m.rows, std::vector<double>(m.cols));
    for (int r = 0; r < m.rows; ++r) {
      for (int c = 0; c < m.cols; ++c) out[r][c] = m(r, c);
    }
    return out;
  };
  double ref_err = 0.0;
  double perm_err = 0.0;
  double equal_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int heads = 1 + trial % 4;
    const int in = 3 + trial % 5;
    connector::PoolingWeights w;
    w.num_heads = heads;
    w.query = random_matrix(2 * heads, in);
    w.key = random_matrix(2 * heads, in);
    w.value = random_matrix(2 * heads, in);
    w.output = random_matrix(4, 2 * heads);
    std::vector<connector::PatchFeature> window(4, connector::PatchFeature(in));
    for (auto& f : window) {
      for (double& v : f) v = g(rng);
    }
    const auto got = connector::AttentionPool(window, w);
    const auto want = testing::DenseAttentionPool(window, dense(w.query), dense(w.key),
                                                  dense(w.value), dense(w.output), heads);
    for (std::size_t i = 0; i < got.size(); ++i) {
      ref_err = std::max(ref_err, std::abs(got[i] - want[i]));
    }
    std::vector<int> order = {0, 1, 2, 3};
    while (std::next_permutation(order.begin(), order.end())) {
      std::vector<connector::PatchFeature> permuted;
      for (int k : order) permuted.push_back(window[k]);
      const auto p = connector::AttentionPool(permuted, w);
      for (std::size_t i = 0; i < p.size(); ++i) {
        perm_err = std::max(perm_err, std::abs(p[i] - got[i]));
      }
    }
    const std::vector<connector::PatchFeature> same(4, window[0]);
    const auto pooled = connector::AttentionPool(same, w);
    const auto projected = connector::MatVec(w.output, connector::MatVec(w.value, window[0]));
    for (std::size_t i = 0; i < pooled.size(); ++i) {
      equal_err = std::max(equal_err, std::abs(pooled[i] - projected[i]));
    }
  }
  return {ref_err <= 1e-9 && perm_err <= 1e-9 && equal_err <= 1e-9,
          Fmt("max error vs reference %.2e, permutation %.2e, equal inputs %.2e", ref_err,
              perm_err, equal_err)};
}

// 14
Verdict CliDeterminism() {
  const char* data_env = std::getenv("VLPIPE_TEST_DATA");
  const fs::path data = data_env ? data_env : "tests/data";
  std::random_device rd;
  const fs::path dir = fs::temp_directory_path() / ("vlpipe_accept_" + std::to_string(rd()));
  fs::create_directories(dir);
  auto d = [&](const char* name) { return (data / name).string(); };
  auto o = [&](const char* name) { return (dir / name).string(); };
  const std::vector<std::vector<std::string>> commands = {
      {"layout", "--width", "1000", "--height", "600", "--out", o("layout.json")},
      {"eval-point", "--gt", d("pointing_gt.jsonl"), "--pred", d("pointing_pred.jsonl"),
       "--out", o("points.csv")},
      {"elo", "--log", d("outcomes.csv"), "--out", o("ratings.csv"), "--win-rates",
       o("win_rates.csv")},
      {"pack", "--annotations", d("annotations.jsonl"), "--image-tokens", "400", "--seed",
       "3", "--out", o("packed.jsonl")},
      {"mix", "--spec", d("mixture.json"), "--draws", "500", "--seed", "9", "--out",
       o("rates.csv"), "--samples-out", o("samples.txt")},
      {"caphint", "--chars", "1234", "--draws", "200", "--seed", "4", "--out",
       o("hints.txt")},
      {"capf1", "--judgments", d("judgments.jsonl"), "--sweep", "--out", o("sweep.csv"),
       "--svg", o("sweep.svg")},
      {"points", "parse", "--in", d("tagged.txt"), "--out", o("sets.jsonl")},
      {"points", "render", "--in", d("pointsets.jsonl"), "--out", o("rendered.txt")},
      {"points", "order", "--in", d("pointsets.jsonl"), "--out", o("ordered.jsonl")},
      {"count", "--in", d("counting.jsonl"), "--strategy", "point_then_count", "--out",
       o("counts.csv")},
  };
  auto run = [&](const std::vector<std::string>& args, int& code) {
    std::vector<std::string> full = {"vlpipe"};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : full) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    code = cli::RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
    std::string snapshot = out.str();
    for (const auto& entry : fs::directory_iterator(dir)) {
      snapshot += "\n--" + entry.path().filename().string() + "--\n" +
                  io::ReadFile(entry.path().string());
    }
    fs::remove_all(dir);
    fs::create_directories(dir);
    return snapshot;
  };
  int differing = 0;
  int failing = 0;
  for (const auto& cmd : commands) {
    int code_a = 0;
    int code_b = 0;
    const std::string a = run(cmd, code_a);
    const std::string b = run(cmd, code_b);
    failing += code_a != cli::kExitOk || code_b != cli::kExitOk;
    differing += a != b;
  }
  fs::remove_all(dir);
  return {differing == 0 && failing == 0,
          Fmt("%.0f commands, %.0f with differing bytes, %.0f failed", commands.size(),
              differing, failing)};
}

}  // namespace
}  // namespace vlpipe

int main() {
  struct Criterion {
    const char* name;
    std::function<vlpipe::Verdict()> check;
  };
  const std::vector<Criterion> criteria = {
      {"grid selection matches exhaustive oracle", vlpipe::GridSelectionOracle},
      {"kept patch windows tile the lattice exactly", vlpipe::TilingExactness},
      {"default encoder geometry constants", vlpipe::EncoderConstants},
      {"assignment equals brute-force minimum", vlpipe::AssignmentExactness},
      {"pointing precision/recall definitions", vlpipe::PointingDefinitions},
      {"point format round-trip and numbering", vlpipe::PointFormatRoundTrip},
      {"Bradley-Terry fit", vlpipe::BradleyTerry},
      {"outcome-rate fixture win rate", vlpipe::OutcomeRateFixture},
      {"packing visibility and image reduction", vlpipe::PackingEquivalence},
      {"loss-token weighting identity", vlpipe::LossWeighting},
      {"length hint constants", vlpipe::LengthHint},
      {"cap F1 harmonic mean", vlpipe::CapF1},
      {"connector attention pooling", vlpipe::ConnectorMath},
      {"CLI byte-identical reruns", vlpipe::CliDeterminism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    vlpipe::Verdict v;
    try {
      v = criteria[i].check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s [%2zu] %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                v.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
