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

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qas {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Real 4-index tensor over spatial orbitals in chemists' notation (pq|rs).
class TwoElectronTensor {
 public:
  TwoElectronTensor() = default;
  explicit TwoElectronTensor(int n_orbitals);

  int n_orbitals() const noexcept { return n_; }
  double operator()(int p, int q, int r, int s) const {
    return data_[index(p, q, r, s)];
  }
  double& operator()(int p, int q, int r, int s) { return data_[index(p, q, r, s)]; }

  /// Writes the value at all 8 index permutations of a real-orbital integral.
  void set_symmetric(int p, int q, int r, int s, double value);
  /// Largest deviation from 8-fold permutational symmetry.
  double symmetry_error() const;

 private:
  std::size_t index(int p, int q, int r, int s) const {
    return ((static_cast<std::size_t>(p) * n_ + q) * n_ + r) * n_ + s;
  }
  int n_ = 0;
  std::vector<double> data_;
};

/// Spatial-orbital integrals in Hartree.
struct IntegralSet {
  int n_orbitals = 0;
  int n_electrons = 0;
  int ms2 = 0;
  Eigen::MatrixXd h;  // one-electron core (kinetic + nuclear attraction)
  std::optional<Eigen::MatrixXd> kinetic;
  std::optional<Eigen::MatrixXd> potential;
  TwoElectronTensor eri;  // (pq|rs)
  double e_nuc = 0.0;

  bool has_split() const { return kinetic.has_value() && potential.has_value(); }

  /// Throws std::invalid_argument if a symmetry or the h = t + v identity is
  /// violated beyond `tol`.
  void validate(double tol = 1e-10) const;
};

/// Parses FCIDUMP text: a `&FCI ... &END` (or `/`) namelist carrying NORB,
/// NELEC and MS2, followed by `value i j k l` records with 1-based indices.
/// `i j 0 0` is one-electron, `0 0 0 0` the core energy. Symmetry-equivalent
/// entries are expanded; unknown namelist keys are ignored.
IntegralSet parse_fcidump(std::string_view text);
IntegralSet read_fcidump(const std::filesystem::path& path);

/// Parses the split-integral sidecar (`&KINETIC` / `&POTENTIAL` sections of
/// `value i j` records, each closed by `&END`) into `integrals`.
void parse_split_integrals(std::string_view text, IntegralSet& integrals);
void read_split_integrals(const std::filesystem::path& path, IntegralSet& integrals);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace qas
