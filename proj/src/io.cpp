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

#include "conceptforge/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "conceptforge/error.hpp"

namespace conceptforge {

void for_each_json_line(std::istream& in,
                        const std::function<void(const Json&, std::size_t)>& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Json record;
    try {
      record = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::kMalformedRecord, std::to_string(line_no), e.what());
    }
    if (!record.is_object()) {
      throw Error(ErrorCode::kMalformedRecord, std::to_string(line_no), "expected a JSON object");
    }
    fn(record, line_no);
  }
}

std::string required_string(const Json& record, std::string_view key, std::size_t line) {
  auto it = record.find(key);
  if (it == record.end() || !it->is_string()) {
    throw Error(ErrorCode::kMalformedRecord, std::to_string(line),
                "missing string field '" + std::string(key) + "'");
  }
  return it->get<std::string>();
}

std::string optional_string(const Json& record, std::string_view key, std::size_t line) {
  auto it = record.find(key);
  if (it == record.end() || it->is_null()) return {};
  if (!it->is_string()) {
    throw Error(ErrorCode::kMalformedRecord, std::to_string(line),
                "field '" + std::string(key) + "' must be a string");
  }
  return it->get<std::string>();
}

std::vector<std::string> string_list(const Json& record, std::string_view key, std::size_t line) {
  std::vector<std::string> out;
  auto it = record.find(key);
  if (it == record.end() || it->is_null()) return out;
  if (!it->is_array()) {
    throw Error(ErrorCode::kMalformedRecord, std::to_string(line),
                "field '" + std::string(key) + "' must be an array");
  }
  for (const auto& v : *it) {
    if (!v.is_string()) {
      throw Error(ErrorCode::kMalformedRecord, std::to_string(line),
                  "field '" + std::string(key) + "' must hold strings");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(resolve_data_path(path), std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, path, "cannot open for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, path, "cannot open for writing");
  return out;
}

std::string read_file(const std::string& path) {
  auto in = open_input(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  auto out = open_output(path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kIo, path, "write failed");
}

std::string resolve_data_path(const std::string& path) {
  namespace fs = std::filesystem;
  fs::path p(path);
  if (p.is_absolute() || fs::exists(p)) return path;
  if (const char* root = std::getenv("CONCEPTFORGE_DATA_DIR"); root && *root) {
    fs::path candidate = fs::path(root) / p;
    if (fs::exists(candidate)) return candidate.string();
  }
  return path;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex_digest(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

}  // namespace conceptforge
