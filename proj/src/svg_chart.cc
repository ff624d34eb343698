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

#include "vlpipe/svg_chart.h"

#include <algorithm>
#include <limits>

#include "vlpipe/io_util.h"

namespace vlpipe::plot {
namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 400;
constexpr double kLeft = 70;
constexpr double kRight = 150;
constexpr double kTop = 40;
constexpr double kBottom = 60;

std::string Esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string F(double v) { return io::FormatFixed(v, 2); }

}  // namespace

std::string LineChartSvg(const std::string& title, const std::string& x_label,
                         const std::string& y_label,
                         const std::vector<Series>& series) {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (x_min > x_max) {
    x_min = 0;
    x_max = 1;
    y_min = 0;
    y_max = 1;
  }
  if (x_max == x_min) x_max = x_min + 1;
  if (y_max == y_min) y_max = y_min + 1;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) {
    return kTop + plot_h - (y - y_min) / (y_max - y_min) * plot_h;
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + F(kWidth) +
         "\" height=\"" + F(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + F(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
         Esc(title) + "</text>\n";
  const double x0 = kLeft;
  const double y0 = kTop + plot_h;
  out += "<line x1=\"" + F(x0) + "\" y1=\"" + F(y0) + "\" x2=\"" + F(x0 + plot_w) +
         "\" y2=\"" + F(y0) + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + F(x0) + "\" y1=\"" + F(kTop) + "\" x2=\"" + F(x0) +
         "\" y2=\"" + F(y0) + "\" stroke=\"black\"/>\n";
  out += "<text x=\"" + F(x0) + "\" y=\"" + F(y0 + 16) + "\" text-anchor=\"middle\">" +
         io::FormatFixed(x_min, 2) + "</text>\n";
  out += "<text x=\"" + F(x0 + plot_w) + "\" y=\"" + F(y0 + 16) +
         "\" text-anchor=\"middle\">" + io::FormatFixed(x_max, 2) + "</text>\n";
  out += "<text x=\"" + F(x0 - 6) + "\" y=\"" + F(y0) + "\" text-anchor=\"end\">" +
         io::FormatFixed(y_min, 3) + "</text>\n";
  out += "<text x=\"" + F(x0 - 6) + "\" y=\"" + F(kTop + 4) + "\" text-anchor=\"end\">" +
         io::FormatFixed(y_max, 3) + "</text>\n";
  out += "<text x=\"" + F(x0 + plot_w / 2) + "\" y=\"" + F(kHeight - 16) +
         "\" text-anchor=\"middle\">" + Esc(x_label) + "</text>\n";
  out += "<text x=\"18\" y=\"" + F(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " + F(kTop + plot_h / 2) +
         ")\">" + Esc(y_label) + "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    std::string pts;
    for (const auto& [x, y] : s.points) {
      if (!pts.empty()) pts += ' ';
      pts += F(sx(x)) + "," + F(sy(y));
    }
    out += "<polyline class=\"series\" data-name=\"" + Esc(s.name) +
           "\" fill=\"none\" stroke=\"" + Esc(s.color) + "\" stroke-width=\"2\" points=\"" +
           pts + "\"/>\n";
    for (const auto& [x, y] : s.points) {
      out += "<circle cx=\"" + F(sx(x)) + "\" cy=\"" + F(sy(y)) + "\" r=\"3\" fill=\"" +
             Esc(s.color) + "\"/>\n";
    }
    const double ly = kTop + 16 + 20 * static_cast<double>(i);
    const double lx = kWidth - kRight + 16;
    out += "<line x1=\"" + F(lx) + "\" y1=\"" + F(ly - 4) + "\" x2=\"" + F(lx + 20) +
           "\" y2=\"" + F(ly - 4) + "\" stroke=\"" + Esc(s.color) +
           "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + F(lx + 26) + "\" y=\"" + F(ly) + "\">" + Esc(s.name) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace vlpipe::plot
