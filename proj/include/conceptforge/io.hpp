// Copyright 2026 The ConceptForge Authors.
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

#ifndef CONCEPTFORGE_IO_HPP_
#define CONCEPTFORGE_IO_HPP_

#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace conceptforge {

using Json = nlohmann::json;
// Object keys keep insertion order; used where wire field order matters.
using OrderedJson = nlohmann::ordered_json;

// Calls `fn(record, line_number)` for every non-blank line. Lines that are not
// a JSON object raise kMalformedRecord with the 1-based line number.
void for_each_json_line(std::istream& in,
                        const std::function<void(const Json&, std::size_t)>& fn);

// Field accessors that raise kMalformedRecord(line) on type errors.
std::string required_string(const Json& record, std::string_view key, std::size_t line);
std::string optional_string(const Json& record, std::string_view key, std::size_t line);
std::vector<std::string> string_list(const Json& record, std::string_view key, std::size_t line);

std::ifstream open_input(const std::string& path);
std::ofstream open_output(const std::string& path);
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// Relative paths that do not exist are looked up under $CONCEPTFORGE_DATA_DIR.
std::string resolve_data_path(const std::string& path);

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex_digest(std::string_view bytes);

}  // namespace conceptforge

#endif  // CONCEPTFORGE_IO_HPP_
