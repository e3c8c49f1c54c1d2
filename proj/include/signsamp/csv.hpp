// Copyright 2026 The Authors.
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

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace signsamp::csv {

// Splits one line on commas and trims surrounding whitespace. Quoting is not
// supported; none of the schemas here need it.
std::vector<std::string> split_line(std::string_view line);

// Reads the next non-empty line. Returns false at end of stream.
bool next_row(std::istream& in, std::vector<std::string>& fields);

double parse_double(const std::string& field, std::string_view context);
std::size_t parse_index(const std::string& field, std::string_view context);

// Shortest round-trippable text for a double; fixed across runs so that
// identical inputs give byte-identical files.
std::string format_double(double v);

}  // namespace signsamp::csv
