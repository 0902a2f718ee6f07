// Copyright 2026 The qas-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qas {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kCsvSchemaVersion = 1;

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Shortest round-trip decimal form, so equal doubles always print equally.
std::string format_double(double v);

/// RFC-4180 table builder with CRLF line endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  CsvWriter& cell(std::string_view text);
  CsvWriter& cell(double v);
  CsvWriter& cell(std::uint64_t v);
  CsvWriter& cell(int v) { return cell(static_cast<std::uint64_t>(v)); }
  /// Throws std::logic_error if the row does not match the header width.
  void end_row();

  std::size_t rows() const noexcept { return rows_; }
  const std::string& str() const noexcept { return out_; }

 private:
  void append_field(std::string_view text);

  std::size_t width_;
  std::size_t in_row_ = 0;
  std::size_t rows_ = 0;
  std::string out_;
};

/// Splits RFC-4180 text into rows of fields.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

void write_text_file(const std::filesystem::path& path, std::string_view content);

struct RunManifest {
  std::string kind;
  std::string config_hash;
  std::vector<std::uint64_t> seeds;
  std::string version = kVersion;
  double wall_clock_seconds = 0.0;
  std::map<std::string, std::string> outputs;  // file name -> sha256

  std::string to_json() const;
  static RunManifest from_json(std::string_view text);
};

/// Writes every file into `dir`, then records their checksums in manifest.json.
RunManifest write_outputs(const std::filesystem::path& dir,
                          const std::map<std::string, std::string>& files, RunManifest manifest);

/// Files in the manifest at `dir` whose checksum no longer matches.
std::vector<std::string> verify_manifest(const std::filesystem::path& dir);

}  // namespace qas
