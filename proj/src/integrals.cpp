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

#include "qas/integrals.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace qas {

namespace {

std::string upper(std::string_view s) {
  std::string r(s);
  std::transform(r.begin(), r.end(), r.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return r;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(std::move(cur));
  return lines;
}

double parse_real(const std::string& tok, std::size_t line_no) {
  std::string t = tok;
  // Fortran double-precision exponents.
  std::replace(t.begin(), t.end(), 'D', 'E');
  std::replace(t.begin(), t.end(), 'd', 'e');
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != t.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": bad number '" + tok + "'");
  }
  return v;
}

int parse_index(const std::string& tok, std::size_t line_no) {
  std::size_t used = 0;
  long v = -1;
  try {
    v = std::stol(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || v < 0) {
    throw ParseError("line " + std::to_string(line_no) + ": bad index '" + tok + "'");
  }
  return static_cast<int>(v);
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

// Namelist body -> KEY -> first value.
std::map<std::string, std::string> parse_namelist(const std::string& body) {
  std::map<std::string, std::string> out;
  std::string flat = body;
  std::replace(flat.begin(), flat.end(), ',', ' ');
  std::replace(flat.begin(), flat.end(), '\n', ' ');
  std::istringstream is(flat);
  std::string tok;
  std::string pending_key;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) {
      if (!pending_key.empty()) {
        out[pending_key] = tok;
        pending_key.clear();
      }
      continue;
    }
    std::string key = tok.substr(0, eq);
    std::string val = tok.substr(eq + 1);
    if (key.empty()) continue;
    if (val.empty()) {
      pending_key = key;
    } else {
      out[key] = val;
      pending_key.clear();
    }
  }
  return out;
}

void check_symmetric(const Eigen::MatrixXd& m, double tol, const char* what) {
  double err = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (err > tol) {
    throw std::invalid_argument(std::string(what) + " is not symmetric (max deviation " +
                                std::to_string(err) + ")");
  }
}

}  // namespace

TwoElectronTensor::TwoElectronTensor(int n_orbitals)
    : n_(n_orbitals),
      data_(static_cast<std::size_t>(n_orbitals) * n_orbitals * n_orbitals * n_orbitals, 0.0) {}

void TwoElectronTensor::set_symmetric(int p, int q, int r, int s, double value) {
  for (auto [a, b, c, d] : {std::array{p, q, r, s}, std::array{q, p, r, s},
                            std::array{p, q, s, r}, std::array{q, p, s, r},
                            std::array{r, s, p, q}, std::array{s, r, p, q},
                            std::array{r, s, q, p}, std::array{s, r, q, p}}) {
    (*this)(a, b, c, d) = value;
  }
}

double TwoElectronTensor::symmetry_error() const {
  double err = 0.0;
  for (int p = 0; p < n_; ++p)
    for (int q = 0; q < n_; ++q)
      for (int r = 0; r < n_; ++r)
        for (int s = 0; s < n_; ++s) {
          double v = (*this)(p, q, r, s);
          err = std::max({err, std::abs(v - (*this)(q, p, r, s)),
                          std::abs(v - (*this)(p, q, s, r)),
                          std::abs(v - (*this)(r, s, p, q))});
        }
  return err;
}

void IntegralSet::validate(double tol) const {
  if (n_orbitals <= 0) throw std::invalid_argument("integral set has no orbitals");
  if (h.rows() != n_orbitals || h.cols() != n_orbitals) {
    throw std::invalid_argument("one-electron matrix has the wrong shape");
  }
  if (eri.n_orbitals() != n_orbitals) {
    throw std::invalid_argument("two-electron tensor has the wrong shape");
  }
  check_symmetric(h, tol, "one-electron matrix");
  double eri_err = eri.symmetry_error();
  if (eri_err > tol) {
    throw std::invalid_argument("two-electron tensor violates 8-fold symmetry (max deviation " +
                                std::to_string(eri_err) + ")");
  }
  if (kinetic.has_value() != potential.has_value()) {
    throw std::invalid_argument("split integrals need both kinetic and potential parts");
  }
  if (has_split()) {
    check_symmetric(*kinetic, tol, "kinetic matrix");
    check_symmetric(*potential, tol, "potential matrix");
    double err = (h - *kinetic - *potential).cwiseAbs().maxCoeff();
    if (err > tol) {
      throw std::invalid_argument("one-electron integrals differ from kinetic + potential by " +
                                  std::to_string(err));
    }
  }
}

IntegralSet parse_fcidump(std::string_view text) {
  auto lines = split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && trim(lines[i]).empty()) ++i;
  if (i == lines.size() || upper(trim(lines[i])).rfind("&FCI", 0) != 0) {
    throw ParseError("missing &FCI namelist header");
  }
  std::string header;
  bool closed = false;
  for (; i < lines.size(); ++i) {
    std::string u = upper(lines[i]);
    auto end_pos = u.find("&END");
    auto slash = trim(u) == "/" ? u.find('/') : std::string::npos;
    if (end_pos != std::string::npos || slash != std::string::npos) {
      header += u.substr(0, std::min(end_pos, slash)) + " ";
      closed = true;
      ++i;
      break;
    }
    header += u + " ";
  }
  if (!closed) throw ParseError("unterminated &FCI namelist");
  header.erase(0, header.find("&FCI") + 4);
  auto keys = parse_namelist(header);
  if (!keys.contains("NORB")) throw ParseError("header lacks NORB");

  IntegralSet out;
  out.n_orbitals = parse_index(keys["NORB"], 1);
  if (out.n_orbitals <= 0) throw ParseError("NORB must be positive");
  if (keys.contains("NELEC")) out.n_electrons = parse_index(keys["NELEC"], 1);
  if (keys.contains("MS2")) out.ms2 = static_cast<int>(parse_real(keys["MS2"], 1));
  const int n = out.n_orbitals;
  out.h = Eigen::MatrixXd::Zero(n, n);
  out.eri = TwoElectronTensor(n);

  for (; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto tok = tokens(lines[i]);
    if (tok.empty()) continue;
    if (tok.size() != 5) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'value i j k l', got " + std::to_string(tok.size()) +
                       " fields");
    }
    double v = parse_real(tok[0], line_no);
    int idx[4];
    for (int k = 0; k < 4; ++k) {
      idx[k] = parse_index(tok[k + 1], line_no);
      if (idx[k] > n) {
        throw ParseError("line " + std::to_string(line_no) + ": orbital index " +
                         std::to_string(idx[k]) + " exceeds NORB=" + std::to_string(n));
      }
    }
    auto [p, q, r, s] = idx;
    if (p == 0 && q == 0 && r == 0 && s == 0) {
      out.e_nuc = v;
    } else if (p > 0 && q > 0 && r > 0 && s > 0) {
      out.eri.set_symmetric(p - 1, q - 1, r - 1, s - 1, v);
    } else if (p > 0 && q > 0 && r == 0 && s == 0) {
      out.h(p - 1, q - 1) = v;
      out.h(q - 1, p - 1) = v;
    } else if (p > 0 && q == 0 && r == 0 && s == 0) {
      // orbital energy record; not needed
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": malformed index pattern");
    }
  }
  return out;
}

IntegralSet read_fcidump(const std::filesystem::path& path) {
  return parse_fcidump(read_text_file(path));
}

void parse_split_integrals(std::string_view text, IntegralSet& integrals) {
  const int n = integrals.n_orbitals;
  if (n <= 0) throw std::invalid_argument("parse the FCIDUMP before the split sidecar");
  std::optional<Eigen::MatrixXd> kin;
  std::optional<Eigen::MatrixXd> pot;
  Eigen::MatrixXd* current = nullptr;
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    std::string t = upper(trim(lines[i]));
    if (t.empty() || t[0] == '#') continue;
    if (t == "&KINETIC") {
      kin = Eigen::MatrixXd::Zero(n, n);
      current = &*kin;
      continue;
    }
    if (t == "&POTENTIAL") {
      pot = Eigen::MatrixXd::Zero(n, n);
      current = &*pot;
      continue;
    }
    if (t == "&END" || t == "/") {
      current = nullptr;
      continue;
    }
    if (t[0] == '&') throw ParseError("line " + std::to_string(line_no) + ": unknown section " + t);
    if (current == nullptr) {
      throw ParseError("line " + std::to_string(line_no) + ": record outside a section");
    }
    auto tok = tokens(lines[i]);
    if (tok.size() != 3) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'value i j'");
    }
    double v = parse_real(tok[0], line_no);
    int p = parse_index(tok[1], line_no);
    int q = parse_index(tok[2], line_no);
    if (p < 1 || q < 1 || p > n || q > n) {
      throw ParseError("line " + std::to_string(line_no) + ": orbital index out of range");
    }
    (*current)(p - 1, q - 1) = v;
    (*current)(q - 1, p - 1) = v;
  }
  if (!kin || !pot) throw ParseError("sidecar needs both &KINETIC and &POTENTIAL sections");
  integrals.kinetic = std::move(kin);
  integrals.potential = std::move(pot);
}

void read_split_integrals(const std::filesystem::path& path, IntegralSet& integrals) {
  parse_split_integrals(read_text_file(path), integrals);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace qas
