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

// Bradley-Terry strengths from pairwise preference outcomes, reported on
// the Elo scale, plus win-rate and outcome breakdowns.

#ifndef VLPIPE_PREFERENCE_H_
#define VLPIPE_PREFERENCE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vlpipe::ranking {

enum class Verdict { kAWins, kBWins, kTieGood, kTieBad, kIdk };

// CSV codes: a, b, tie_good, tie_bad, idk.
Verdict ParseVerdict(std::string_view code);
std::string VerdictCode(Verdict v);

struct Outcome {
  std::string model_a;
  std::string model_b;
  Verdict verdict = Verdict::kTieGood;
  std::string category;
};

using PreferenceLog = std::vector<Outcome>;

// Header `model_a,model_b,verdict[,category]`, columns in any order.
PreferenceLog ParseLogCsv(std::string_view text);
std::string LogToCsv(const PreferenceLog& log);

PreferenceLog FilterIdk(const PreferenceLog& log);

enum class TiePolicy {
  // A tie is half a win for each side.
  kHalfWin,
  // Ties are dropped before fitting.
  kIgnore,
};

TiePolicy ParseTiePolicy(std::string_view name);

struct FitOptions {
  double anchor = 1000.0;
  TiePolicy tie_policy = TiePolicy::kHalfWin;
  // Convergence when the largest parameter change falls below this.
  double tolerance = 1e-8;
  int max_iterations = 10000;
};

struct ModelRating {
  std::string model;
  double rating = 0.0;
  // Natural-log strength, centred per connected component.
  double strength = 0.0;
  int component = 0;
};

struct RatingTable {
  // Sorted by rating, descending; ties by model name.
  std::vector<ModelRating> ratings;
  int iterations = 0;
  double gradient_norm = 0.0;
  double log_likelihood = 0.0;
  // Log-likelihood at the all-equal starting point.
  double initial_log_likelihood = 0.0;
  int components = 1;
  std::vector<std::string> warnings;

  // Throws if the model is unknown.
  double rating(std::string_view model) const;
};

// Maximum-likelihood fit of p(A beats B) = 1 / (1 + exp(s_B - s_A)) by
// damped Newton iterations from all-zero strengths. Ratings are
// anchor + s * 400 / ln(10) with strengths mean-centred, separately per
// connected component of the comparison graph (a warning is recorded
// when there is more than one). IDK outcomes are ignored.
//
// Throws DegenerateInputError when nothing is left to fit and
// ConvergenceError when the iteration cap is reached.
RatingTable FitBradleyTerry(const PreferenceLog& log,
                            const FitOptions& options = {});

// wins / (wins + losses) of `model` against `baseline`, ties and IDK
// excluded. nullopt when the pair has no decisive outcome.
std::optional<double> WinRate(const PreferenceLog& log, std::string_view model,
                              std::string_view baseline);

struct OutcomeBreakdown {
  double a_wins = 0.0;
  double b_wins = 0.0;
  double tie_good = 0.0;
  double tie_bad = 0.0;
  int matches = 0;
};

// Outcome fractions from model_a's point of view over all non-IDK matches
// of the pair. Throws DegenerateInputError if the pair never met.
OutcomeBreakdown ComputeOutcomeBreakdown(const PreferenceLog& log,
                                         std::string_view model_a,
                                         std::string_view model_b);

// "rank,model,rating".
std::string RatingsCsv(const RatingTable& table);

// Square matrix of WinRate(row, column); blank where undefined.
std::string WinRateMatrixCsv(const PreferenceLog& log);

}  // namespace vlpipe::ranking

#endif  // VLPIPE_PREFERENCE_H_
