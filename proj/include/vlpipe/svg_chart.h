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

#ifndef VLPIPE_SVG_CHART_H_
#define VLPIPE_SVG_CHART_H_

#include <string>
#include <utility>
#include <vector>

namespace vlpipe::plot {

struct Series {
  std::string name;
  std::string color;
  std::vector<std::pair<double, double>> points;
};

// Minimal line chart: axes with min/max tick labels, one polyline and
// legend entry per series. Output is byte-stable for identical input.
std::string LineChartSvg(const std::string& title, const std::string& x_label,
                         const std::string& y_label,
                         const std::vector<Series>& series);

}  // namespace vlpipe::plot

#endif  // VLPIPE_SVG_CHART_H_
