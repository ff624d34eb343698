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

#include "vlpipe/preference.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "vlpipe/error.h"
#include "vlpipe/io_util.h"

namespace vlpipe::ranking {
namespace {

const double kEloPerNat = 400.0 / std::log(10.0);

double LogSigmoid(double x) {
  // log(1 / (1 + exp(-x))) without overflow.
  return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Pairwise tallies for one connected component, indices local.
struct Tally {
  int size = 0;
  // wins[i][j]: (fractional) wins of i over j.
  std::vector<std::vector<double>> wins;
};

double LogLikelihood(const Tally& t, const std::vector<double>& s) {
  double ll = 0.0;
  for (int i = 0; i < t.size; ++i) {
    for (int j = 0; j < t.size; ++j) {
      if (i != j && t.wins[i][j] > 0) ll += t.wins[i][j] * LogSigmoid(s[i] - s[j]);
    }
  }
  return ll;
}

// Solves a x = b in place by Gaussian elimination with partial pivoting.
std::vector<double> SolveDense(std::vector<std::vector<double>> a,
                               std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    const double d = a[col][col];
    if (d == 0.0) throw InvariantError("singular Newton system");
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / d;
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

struct ComponentFit {
  std::vector<double> strengths;
  int iterations = 0;
  double gradient_norm = 0.0;
  double log_likelihood = 0.0;
  double initial_log_likelihood = 0.0;
};

ComponentFit FitComponent(const Tally& t, const FitOptions& options) {
  const int n = t.size;
  ComponentFit fit;
  fit.strengths.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<double>& s = fit.strengths;
  fit.initial_log_likelihood = LogLikelihood(t, s);
  double ll = fit.initial_log_likelihood;

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    // Gradient and the (negated) Hessian, a weighted graph Laplacian. The
    // all-ones term pins the gauge so the step keeps the mean fixed.
    std::vector<double> grad(static_cast<std::size_t>(n), 0.0);
    std::vector<std::vector<double>> info(
        static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 1.0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const double games = t.wins[i][j] + t.wins[j][i];
        if (games == 0) continue;
        const double p = Sigmoid(s[i] - s[j]);
        grad[i] += t.wins[i][j] - games * p;
        const double w = games * p * (1.0 - p);
        info[i][i] += w;
        info[i][j] -= w;
      }
    }
    fit.gradient_norm = 0.0;
    for (double g : grad) fit.gradient_norm = std::max(fit.gradient_norm, std::abs(g));

    std::vector<double> step;
    try {
      step = SolveDense(info, grad);
    } catch (const InvariantError&) {
      // Curvature underflows once strengths run off to infinity.
      throw ConvergenceError(
          "Bradley-Terry fit diverged after " + std::to_string(iter) +
              " iterations (max |gradient| " + std::to_string(fit.gradient_norm) +
              "); a model may have no wins or no losses",
          iter, fit.gradient_norm);
    }
    double scale = 1.0;
    std::vector<double> next(s.size());
    double next_ll = ll;
    while (true) {
      for (std::size_t i = 0; i < s.size(); ++i) next[i] = s[i] + scale * step[i];
      next_ll = LogLikelihood(t, next);
      if (next_ll >= ll || scale < 1e-12) break;
      scale *= 0.5;
    }
    double max_change = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      max_change = std::max(max_change, std::abs(next[i] - s[i]));
    }
    if (next_ll >= ll) {
      s = next;
      ll = next_ll;
    }
    fit.iterations = iter;
    if (max_change < options.tolerance) {
      fit.log_likelihood = ll;
      const double mean = std::accumulate(s.begin(), s.end(), 0.0) / n;
      for (double& v : s) v -= mean;
      return fit;
    }
  }
  throw ConvergenceError(
      "Bradley-Terry fit did not converge after " +
          std::to_string(options.max_iterations) +
          " iterations (max |gradient| " + std::to_string(fit.gradient_norm) +
          "); a model may have no wins or no losses",
      fit.iterations, fit.gradient_norm);
}

int Find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

Verdict ParseVerdict(std::string_view code) {
  if (code == "a") return Verdict::kAWins;
  if (code == "b") return Verdict::kBWins;
  if (code == "tie_good") return Verdict::kTieGood;
  if (code == "tie_bad") return Verdict::kTieBad;
  if (code == "idk") return Verdict::kIdk;
  throw Error("unknown verdict '" + std::string(code) + "'");
}

std::string VerdictCode(Verdict v) {
  switch (v) {
    case Verdict::kAWins:
      return "a";
    case Verdict::kBWins:
      return "b";
    case Verdict::kTieGood:
      return "tie_good";
    case Verdict::kTieBad:
      return "tie_bad";
    case Verdict::kIdk:
      return "idk";
  }
  return "idk";
}

PreferenceLog ParseLogCsv(std::string_view text) {
  const auto rows = io::ParseCsv(text);
  if (rows.empty()) throw ParseError("outcome log has no header", 1);
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < rows[0].size(); ++i) column[rows[0][i]] = i;
  for (const char* required : {"model_a", "model_b", "verdict"}) {
    if (!column.count(required)) {
      throw ParseError(std::string("outcome log header lacks '") + required + "'", 1);
    }
  }
  const bool has_category = column.count("category") > 0;
  PreferenceLog log;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    auto field = [&](const char* name) -> const std::string& {
      const std::size_t c = column.at(name);
      if (c >= row.size()) {
        throw ParseError(std::string("row is missing column '") + name + "'", r + 1);
      }
      return row[c];
    };
    Outcome o;
    o.model_a = field("model_a");
    o.model_b = field("model_b");
    try {
      o.verdict = ParseVerdict(field("verdict"));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), r + 1);
    }
    if (has_category && column.at("category") < row.size()) {
      o.category = row[column.at("category")];
    }
    if (o.model_a.empty() || o.model_b.empty()) {
      throw ParseError("empty model name", r + 1);
    }
    if (o.model_a == o.model_b) {
      throw ParseError("model '" + o.model_a + "' compared with itself", r + 1);
    }
    log.push_back(std::move(o));
  }
  return log;
}

std::string LogToCsv(const PreferenceLog& log) {
  std::string out = "model_a,model_b,verdict,category\n";
  for (const Outcome& o : log) {
    out += io::CsvEscape(o.model_a) + "," + io::CsvEscape(o.model_b) + "," +
           VerdictCode(o.verdict) + "," + io::CsvEscape(o.category) + "\n";
  }
  return out;
}

PreferenceLog FilterIdk(const PreferenceLog& log) {
  PreferenceLog out;
  std::copy_if(log.begin(), log.end(), std::back_inserter(out),
               [](const Outcome& o) { return o.verdict != Verdict::kIdk; });
  return out;
}

TiePolicy ParseTiePolicy(std::string_view name) {
  if (name == "half_win") return TiePolicy::kHalfWin;
  if (name == "ignore") return TiePolicy::kIgnore;
  throw ConfigError("unknown tie policy '" + std::string(name) + "'");
}

double RatingTable::rating(std::string_view model) const {
  for (const auto& r : ratings) {
    if (r.model == model) return r.rating;
  }
  throw Error("no rating for model '" + std::string(model) + "'");
}

RatingTable FitBradleyTerry(const PreferenceLog& log,
                            const FitOptions& options) {
  std::set<std::string> names;
  for (const Outcome& o : log) {
    if (o.model_a == o.model_b) {
      throw Error("model '" + o.model_a + "' compared with itself");
    }
    const bool tie = o.verdict == Verdict::kTieGood || o.verdict == Verdict::kTieBad;
    if (o.verdict == Verdict::kIdk) continue;
    if (tie && options.tie_policy == TiePolicy::kIgnore) continue;
    names.insert(o.model_a);
    names.insert(o.model_b);
  }
  if (names.size() < 2) {
    throw DegenerateInputError(
        "Bradley-Terry fit needs outcomes between at least two models");
  }
  const std::vector<std::string> models(names.begin(), names.end());
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < models.size(); ++i) index[models[i]] = static_cast<int>(i);
  const int n = static_cast<int>(models.size());

  std::vector<std::vector<double>> wins(static_cast<std::size_t>(n),
                                        std::vector<double>(static_cast<std::size_t>(n), 0.0));
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  for (const Outcome& o : log) {
    if (!index.count(o.model_a) || !index.count(o.model_b)) continue;
    const int a = index.at(o.model_a);
    const int b = index.at(o.model_b);
    switch (o.verdict) {
      case Verdict::kAWins:
        wins[a][b] += 1.0;
        break;
      case Verdict::kBWins:
        wins[b][a] += 1.0;
        break;
      case Verdict::kTieGood:
      case Verdict::kTieBad:
        if (options.tie_policy == TiePolicy::kIgnore) continue;
        wins[a][b] += 0.5;
        wins[b][a] += 0.5;
        break;
      case Verdict::kIdk:
        continue;
    }
    parent[Find(parent, a)] = Find(parent, b);
  }

  std::map<int, std::vector<int>> components;
  for (int i = 0; i < n; ++i) components[Find(parent, i)].push_back(i);

  RatingTable table;
  table.components = static_cast<int>(components.size());
  if (components.size() > 1) {
    table.warnings.push_back(
        "comparison graph has " + std::to_string(components.size()) +
        " connected components; ratings are anchored per component and are "
        "not comparable across components");
  }
  int component_id = 0;
  for (const auto& [root, members] : components) {
    Tally t;
    t.size = static_cast<int>(members.size());
    t.wins.assign(members.size(), std::vector<double>(members.size(), 0.0));
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = 0; j < members.size(); ++j) {
        t.wins[i][j] = wins[members[i]][members[j]];
      }
    }
    const ComponentFit fit = FitComponent(t, options);
    table.iterations = std::max(table.iterations, fit.iterations);
    table.gradient_norm = std::max(table.gradient_norm, fit.gradient_norm);
    table.log_likelihood += fit.log_likelihood;
    table.initial_log_likelihood += fit.initial_log_likelihood;
    for (std::size_t i = 0; i < members.size(); ++i) {
      table.ratings.push_back({models[members[i]],
                               options.anchor + fit.strengths[i] * kEloPerNat,
                               fit.strengths[i], component_id});
    }
    ++component_id;
  }
  std::sort(table.ratings.begin(), table.ratings.end(),
            [](const ModelRating& a, const ModelRating& b) {
              if (a.rating != b.rating) return a.rating > b.rating;
              return a.model < b.model;
            });
  return table;
}

std::optional<double> WinRate(const PreferenceLog& log, std::string_view model,
                              std::string_view baseline) {
  int wins = 0;
  int losses = 0;
  for (const Outcome& o : log) {
    const bool forward = o.model_a == model && o.model_b == baseline;
    const bool reverse = o.model_a == baseline && o.model_b == model;
    if (!forward && !reverse) continue;
    if (o.verdict == Verdict::kAWins) (forward ? wins : losses) += 1;
    if (o.verdict == Verdict::kBWins) (forward ? losses : wins) += 1;
  }
  if (wins + losses == 0) return std::nullopt;
  return static_cast<double>(wins) / (wins + losses);
}

OutcomeBreakdown ComputeOutcomeBreakdown(const PreferenceLog& log,
                                         std::string_view model_a,
                                         std::string_view model_b) {
  OutcomeBreakdown b;
  int a_wins = 0;
  int b_wins = 0;
  int tie_good = 0;
  int tie_bad = 0;
  for (const Outcome& o : log) {
    const bool forward = o.model_a == model_a && o.model_b == model_b;
    const bool reverse = o.model_a == model_b && o.model_b == model_a;
    if (!forward && !reverse) continue;
    switch (o.verdict) {
      case Verdict::kAWins:
        (forward ? a_wins : b_wins) += 1;
        break;
      case Verdict::kBWins:
        (forward ? b_wins : a_wins) += 1;
        break;
      case Verdict::kTieGood:
        ++tie_good;
        break;
      case Verdict::kTieBad:
        ++tie_bad;
        break;
      case Verdict::kIdk:
        break;
    }
  }
  b.matches = a_wins + b_wins + tie_good + tie_bad;
  if (b.matches == 0) {
    throw DegenerateInputError("no matches between '" + std::string(model_a) +
                               "' and '" + std::string(model_b) + "'");
  }
  const double n = b.matches;
  b.a_wins = a_wins / n;
  b.b_wins = b_wins / n;
  b.tie_good = tie_good / n;
  b.tie_bad = tie_bad / n;
  return b;
}

std::string RatingsCsv(const RatingTable& table) {
  std::string out = "rank,model,rating\n";
  for (std::size_t i = 0; i < table.ratings.size(); ++i) {
    out += std::to_string(i + 1) + "," + io::CsvEscape(table.ratings[i].model) +
           "," + io::FormatFixed(table.ratings[i].rating, 4) + "\n";
  }
  return out;
}

std::string WinRateMatrixCsv(const PreferenceLog& log) {
  std::set<std::string> names;
  for (const Outcome& o : log) {
    names.insert(o.model_a);
    names.insert(o.model_b);
  }
  std::string out = "model";
  for (const auto& n : names) out += "," + io::CsvEscape(n);
  out += "\n";
  for (const auto& row : names) {
    out += io::CsvEscape(row);
    for (const auto& col : names) {
      out += ",";
      if (row == col) continue;
      if (const auto wr = WinRate(log, row, col)) out += io::FormatFixed(*wr, 6);
    }
    out += "\n";
  }
  return out;
}

}  // namespace vlpipe::ranking
