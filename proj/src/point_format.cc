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

#include "vlpipe/point_format.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>

#include "vlpipe/error.h"

namespace vlpipe::points {
namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

bool IsNameChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '-' || c == ':';
}

std::string Unescape(std::string_view s) {
  static constexpr std::pair<std::string_view, char> kEntities[] = {
      {"&quot;", '"'}, {"&amp;", '&'}, {"&lt;", '<'},
      {"&gt;", '>'},   {"&#39;", '\''}, {"&apos;", '\''}};
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    bool replaced = false;
    if (s[i] == '&') {
      for (const auto& [entity, ch] : kEntities) {
        if (s.substr(i, entity.size()) == entity) {
          out += ch;
          i += entity.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out += s[i++];
  }
  return out;
}

std::string Escape(std::string_view s, bool attribute) {
  std::string out;
  out.reserve(s.size());
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
      case '"':
        if (attribute) {
          out += "&quot;";
          break;
        }
        [[fallthrough]];
      default:
        out += c;
    }
  }
  return out;
}

struct Attribute {
  std::string name;
  std::string value;
  std::size_t offset;
};

struct TagError {
  std::size_t offset;
  std::string message;
};

// Parses "x", "y", "x12", "y3". Returns {axis, index}; index 0 when absent.
std::optional<std::pair<char, int>> CoordinateName(std::string_view name) {
  if (name.empty() || (name[0] != 'x' && name[0] != 'y')) return std::nullopt;
  if (name.size() == 1) return std::make_pair(name[0], 0);
  int index = 0;
  const char* first = name.data() + 1;
  const char* last = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(first, last, index);
  if (ec != std::errc() || ptr != last || index < 1) return std::nullopt;
  return std::make_pair(name[0], index);
}

class TagParser {
 public:
  TagParser(std::string_view text, ParseMode mode) : text_(text), mode_(mode) {}

  // Parses the tag starting at `begin`. On success returns the set and
  // sets `end` to one past the closing tag.
  PointSet ParseTag(std::size_t begin, bool plural, std::size_t& end) {
    const std::string_view name = plural ? "points" : "point";
    std::size_t i = begin + 1 + name.size();
    std::vector<Attribute> attrs;
    while (true) {
      while (i < text_.size() && IsSpace(text_[i])) ++i;
      if (i >= text_.size()) {
        throw TagError{begin, "unterminated <" + std::string(name) + "> tag"};
      }
      if (text_[i] == '>') {
        ++i;
        break;
      }
      const std::size_t attr_begin = i;
      while (i < text_.size() && IsNameChar(text_[i])) ++i;
      if (i == attr_begin) {
        throw TagError{i, std::string("unexpected character '") + text_[i] +
                              "' in tag"};
      }
      std::string attr_name(text_.substr(attr_begin, i - attr_begin));
      while (i < text_.size() && IsSpace(text_[i])) ++i;
      if (i >= text_.size() || text_[i] != '=') {
        throw TagError{attr_begin, "attribute '" + attr_name + "' has no value"};
      }
      ++i;
      while (i < text_.size() && IsSpace(text_[i])) ++i;
      if (i >= text_.size() || (text_[i] != '"' && text_[i] != '\'')) {
        throw TagError{attr_begin,
                       "attribute '" + attr_name + "' value is not quoted"};
      }
      const char quote = text_[i++];
      const std::size_t close = text_.find(quote, i);
      if (close == std::string_view::npos) {
        throw TagError{attr_begin,
                       "unterminated value of attribute '" + attr_name + "'"};
      }
      attrs.push_back({std::move(attr_name),
                       Unescape(text_.substr(i, close - i)), attr_begin});
      i = close + 1;
    }
    const std::string closing = "</" + std::string(name) + ">";
    const std::size_t close = text_.find(closing, i);
    if (close == std::string_view::npos) {
      throw TagError{begin, "missing " + closing};
    }
    PointSet set;
    set.singular = !plural;
    set.inline_text = Unescape(text_.substr(i, close - i));
    end = close + closing.size();

    std::vector<std::pair<int, const Attribute*>> xs;
    std::vector<std::pair<int, const Attribute*>> ys;
    bool have_alt = false;
    for (const Attribute& a : attrs) {
      if (a.name == "alt") {
        if (have_alt) throw TagError{a.offset, "duplicate alt attribute"};
        set.alt = a.value;
        have_alt = true;
        continue;
      }
      const auto coord = CoordinateName(a.name);
      if (!coord) continue;  // unknown attributes are ignored
      if ((coord->second == 0) == plural) {
        throw TagError{a.offset, "attribute '" + a.name + "' not valid in <" +
                                     std::string(name) + ">"};
      }
      (coord->first == 'x' ? xs : ys).emplace_back(coord->second, &a);
    }
    if (xs.empty() || xs.size() != ys.size()) {
      throw TagError{begin, "missing coordinate pair"};
    }
    // y attributes pair with x by index when the index sets agree, and
    // positionally otherwise (tolerates repeated y indices).
    std::map<int, const Attribute*> y_by_index;
    for (const auto& [idx, attr] : ys) y_by_index.emplace(idx, attr);
    bool by_index = y_by_index.size() == ys.size();
    for (const auto& [idx, attr] : xs) {
      by_index = by_index && y_by_index.count(idx) > 0;
    }
    if (by_index) {
      std::stable_sort(xs.begin(), xs.end(), [](const auto& a, const auto& b) {
        return a.first < b.first;
      });
    }
    for (std::size_t k = 1; k < xs.size(); ++k) {
      if (xs[k].first <= xs[k - 1].first) {
        throw TagError{xs[k].second->offset,
                       "point indices must be strictly increasing"};
      }
    }
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const Attribute* ya =
          by_index ? y_by_index.at(xs[k].first) : ys[k].second;
      set.points.push_back(
          {Coordinate(*xs[k].second), Coordinate(*ya)});
    }
    return set;
  }

 private:
  double Coordinate(const Attribute& a) const {
    std::string_view v = a.value;
    while (!v.empty() && IsSpace(v.front())) v.remove_prefix(1);
    while (!v.empty() && IsSpace(v.back())) v.remove_suffix(1);
    double out = 0.0;
    const char* last = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), last, out);
    if (v.empty() || ec != std::errc() || ptr != last || !std::isfinite(out)) {
      throw TagError{a.offset, "non-numeric coordinate '" + a.value + "'"};
    }
    if (out < 0.0 || out > 100.0) {
      if (mode_ == ParseMode::kStrict) {
        throw TagError{a.offset, "coordinate " + a.value + " outside [0, 100]"};
      }
      out = std::clamp(out, 0.0, 100.0);
    }
    return out;
  }

  std::string_view text_;
  ParseMode mode_;
};

}  // namespace

std::size_t ParseResult::point_count() const {
  std::size_t n = 0;
  for (const PointSet& s : sets) n += s.points.size();
  return n;
}

ParseResult Parse(std::string_view text, ParseMode mode) {
  ParseResult result;
  TagParser parser(text, mode);
  std::size_t text_start = 0;
  std::size_t pos = 0;
  while (true) {
    const std::size_t cand = text.find("<point", pos);
    if (cand == std::string_view::npos) break;
    // A tag name ends at whitespace, '>' or end of input; "<pointer" is text.
    auto ends_name = [&](std::size_t i) {
      return i >= text.size() || IsSpace(text[i]) || text[i] == '>';
    };
    std::size_t after = cand + 6;
    const bool plural = after < text.size() && text[after] == 's';
    if (plural) ++after;
    if (!ends_name(after)) {
      pos = cand + 1;
      continue;
    }
    std::size_t end = 0;
    try {
      PointSet set = parser.ParseTag(cand, plural, end);
      if (cand > text_start) {
        result.residual_text.emplace_back(text.substr(text_start, cand - text_start));
      }
      result.sets.push_back(std::move(set));
      result.tag_spans.emplace_back(cand, end);
      text_start = end;
      pos = end;
    } catch (const TagError& e) {
      if (mode == ParseMode::kStrict) throw ParseError(e.message, e.offset);
      result.skipped.push_back({e.offset, e.message});
      pos = cand + 1;
    }
  }
  if (text_start < text.size()) {
    result.residual_text.emplace_back(text.substr(text_start));
  }
  return result;
}

std::vector<Point> OrderPoints(std::vector<Point> points) {
  std::stable_sort(points.begin(), points.end(),
                   [](const Point& a, const Point& b) {
                     if (a.y != b.y) return a.y < b.y;
                     return a.x < b.x;
                   });
  return points;
}

std::string FormatCoordinate(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  // Avoid "-0.0" from tiny negative inputs.
  if (buf[0] == '-' && std::string_view(buf) == "-0.0") return "0.0";
  return buf;
}

PointSet Canonicalize(const PointSet& set) {
  PointSet out = set;
  for (Point& p : out.points) {
    p.x = std::stod(FormatCoordinate(p.x));
    p.y = std::stod(FormatCoordinate(p.y));
  }
  out.points = OrderPoints(std::move(out.points));
  out.singular = out.points.size() == 1;
  return out;
}

std::string Render(const PointSet& set) {
  if (set.points.empty()) throw Error("cannot render an empty point list");
  const PointSet c = Canonicalize(set);
  std::string out;
  if (c.points.size() == 1) {
    out = "<point x=\"" + FormatCoordinate(c.points[0].x) + "\" y=\"" +
          FormatCoordinate(c.points[0].y) + "\" alt=\"" + Escape(c.alt, true) +
          "\">" + Escape(c.inline_text, false) + "</point>";
    return out;
  }
  out = "<points";
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const std::string idx = std::to_string(i + 1);
    out += " x" + idx + "=\"" + FormatCoordinate(c.points[i].x) + "\"";
    out += " y" + idx + "=\"" + FormatCoordinate(c.points[i].y) + "\"";
  }
  out += " alt=\"" + Escape(c.alt, true) + "\">" + Escape(c.inline_text, false) +
         "</points>";
  return out;
}

nlohmann::json ToJson(const PointSet& set) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const Point& p : set.points) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  return {{"x", xs}, {"y", ys}, {"alt", set.alt}, {"inline", set.inline_text}};
}

PointSet PointSetFromJson(const nlohmann::json& j) {
  const auto xs = j.at("x").get<std::vector<double>>();
  const auto ys = j.at("y").get<std::vector<double>>();
  if (xs.size() != ys.size()) {
    throw MismatchError("point record has " + std::to_string(xs.size()) +
                        " x values and " + std::to_string(ys.size()) +
                        " y values");
  }
  PointSet set;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] >= 0.0 && xs[i] <= 100.0 && ys[i] >= 0.0 && ys[i] <= 100.0)) {
      throw Error("point coordinate outside [0, 100]");
    }
    set.points.push_back({xs[i], ys[i]});
  }
  set.alt = j.value("alt", "");
  set.inline_text = j.value("inline", "");
  set.singular = set.points.size() == 1;
  return set;
}

}  // namespace vlpipe::points
