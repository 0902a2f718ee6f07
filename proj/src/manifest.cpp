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

#include "qas/manifest.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <stdexcept>

#include <json.hpp>
#include <openssl/evp.h>

#include "qas/integrals.hpp"

namespace qas {

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xF]);
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_text_file(path)); }

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), end);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
  for (const auto& h : header) cell(h);
  end_row();
  rows_ = 0;
}

void CsvWriter::append_field(std::string_view text) {
  if (in_row_ > 0) out_.push_back(',');
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) {
    out_.append(text);
  } else {
    out_.push_back('"');
    for (char c : text) {
      if (c == '"') out_.push_back('"');
      out_.push_back(c);
    }
    out_.push_back('"');
  }
  ++in_row_;
}

CsvWriter& CsvWriter::cell(std::string_view text) {
  append_field(text);
  return *this;
}

CsvWriter& CsvWriter::cell(double v) {
  append_field(format_double(v));
  return *this;
}

CsvWriter& CsvWriter::cell(std::uint64_t v) {
  append_field(std::to_string(v));
  return *this;
}

void CsvWriter::end_row() {
  if (in_row_ != width_) {
    throw std::logic_error("CSV row has " + std::to_string(in_row_) + " fields, header has " +
                           std::to_string(width_));
  }
  out_.append("\r\n");
  in_row_ = 0;
  ++rows_;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field.push_back(c);
      any = true;
    }
  }
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = kind;
  j["version"] = version;
  j["config_sha256"] = config_hash;
  j["seeds"] = seeds;
  j["wall_clock_seconds"] = wall_clock_seconds;
  j["outputs"] = outputs;
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(std::string_view text) {
  RunManifest m;
  try {
    auto j = nlohmann::json::parse(text);
    m.kind = j.at("kind").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.config_hash = j.at("config_sha256").get<std::string>();
    m.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    m.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
    m.outputs = j.at("outputs").get<std::map<std::string, std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

RunManifest write_outputs(const std::filesystem::path& dir,
                          const std::map<std::string, std::string>& files, RunManifest manifest) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, content] : files) {
    write_text_file(dir / name, content);
    manifest.outputs[name] = sha256_hex(content);
  }
  write_text_file(dir / "manifest.json", manifest.to_json());
  return manifest;
}

std::vector<std::string> verify_manifest(const std::filesystem::path& dir) {
  auto m = RunManifest::from_json(read_text_file(dir / "manifest.json"));
  std::vector<std::string> bad;
  for (const auto& [name, hash] : m.outputs) {
    const auto p = dir / name;
    if (!std::filesystem::is_regular_file(p) || sha256_file(p) != hash) bad.push_back(name);
  }
  return bad;
}

}  // namespace qas
