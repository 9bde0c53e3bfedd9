// Copyright 2026 The stratcomm Authors.
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

#ifndef STRATCOMM_EMIT_HPP_
#define STRATCOMM_EMIT_HPP_

// Deterministic CSV / JSON output. Every file carries a metadata block; real
// numbers are written with 12 significant digits.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace stratcomm {

inline constexpr std::string_view kToolName = "stratcomm";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum class OutputFormat { kCsv, kJson };
const char* to_string(OutputFormat f);
OutputFormat parse_format(std::string_view s);  // throws std::invalid_argument

// A missing value is std::monostate; written as an empty CSV field / null.
using Cell = std::variant<std::monostate, std::string, double, std::int64_t, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// Ordered key/value pairs; values are already-rendered strings.
using Metadata = std::vector<std::pair<std::string, std::string>>;

// %.12g; "nan", "inf", "-inf" for non-finite values.
std::string format_real(double v);
// The double closest to format_real(v).
double round_to_emitted(double v);

std::string render_csv(const Table& table, const Metadata& meta);
std::string render_json(const Table& table, const Metadata& meta);
std::string render(const Table& table, const Metadata& meta, OutputFormat format);

// Writes atomically enough for batch use (truncate + write); throws
// std::runtime_error naming the path on failure.
void write_file(const std::filesystem::path& path, std::string_view contents);
void emit(const Table& table, const Metadata& meta, OutputFormat format,
          const std::filesystem::path& path);

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

}  // namespace stratcomm

#endif  // STRATCOMM_EMIT_HPP_
