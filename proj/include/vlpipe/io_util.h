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

#ifndef VLPIPE_IO_UTIL_H_
#define VLPIPE_IO_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace vlpipe::io {

std::string ReadFile(const std::string& path);

// Writes `contents` to a sibling temp file and renames it over `path`, so
// readers never observe a partially written output.
void WriteFileAtomic(const std::string& path, std::string_view contents);

// One JSON object per non-blank line. Errors carry the 1-based line number.
std::vector<nlohmann::json> ParseJsonl(std::string_view text);
std::string DumpJsonl(const std::vector<nlohmann::json>& records);

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF tolerated.
std::vector<std::vector<std::string>> ParseCsv(std::string_view text);
std::string CsvEscape(std::string_view field);

// printf-style fixed formatting, locale independent.
std::string FormatFixed(double value, int digits);

std::vector<std::string> SplitTrimmed(std::string_view text, char sep);

}  // namespace vlpipe::io

#endif  // VLPIPE_IO_UTIL_H_
