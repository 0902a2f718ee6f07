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

#include <complex>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qas {

using cplx = std::complex<double>;

/// Largest register a bit-packed string can describe.
inline constexpr int kMaxQubits = 64;

/// Coefficients smaller than this are removed when terms are merged.
inline constexpr double kDropTolerance = 1e-12;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// Bit-packed tensor product of single-qubit Paulis with a phase i^k.
///
/// Bit j of `x_mask` is set when qubit j carries X or Y, bit j of `z_mask`
/// when it carries Z or Y. Y is the literal Pauli Y (not XZ), so the string
/// with both bits set on qubit j and phase +1 is Hermitian.
class PauliString {
 public:
  PauliString() = default;
  PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask,
              int log_i_phase = 0);

  static PauliString identity(int n_qubits);
  static PauliString single(int n_qubits, int qubit, Pauli p);

  /// Parses a label such as "XIZY" or "-iZX"; character k acts on qubit k.
  static PauliString from_label(std::string_view label);

  int n_qubits() const noexcept { return n_qubits_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }
  int log_i_phase() const noexcept { return phase_; }
  cplx phase() const noexcept;

  Pauli at(int qubit) const;
  int weight() const noexcept;
  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  bool commutes_with(const PauliString& other) const;

  /// Same operator with the phase reset to +1.
  PauliString unsigned_string() const noexcept {
    return PauliString(n_qubits_, x_, z_, 0);
  }
  PauliString inverse() const noexcept;

  std::string to_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  int n_qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int phase_ = 0;
};

/// Product a·b with the phase accumulated from the single-qubit algebra.
PauliString multiply(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) {
  return multiply(a, b);
}

/// Map key for a phase-normalized string.
struct PauliKey {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  friend auto operator<=>(const PauliKey&, const PauliKey&) = default;
};

/// Weighted sum of Pauli strings on a fixed register.
///
/// Terms are keyed by the phase-free string; the phase of an inserted string
/// is folded into its coefficient. Iteration order is the key order, which is
/// deterministic.
class PauliSum {
 public:
  struct Term {
    PauliString string;  // phase always +1
    cplx coefficient;
  };

  PauliSum() = default;
  explicit PauliSum(int n_qubits, double drop_tolerance = kDropTolerance);
  PauliSum(int n_qubits,
           std::initializer_list<std::pair<PauliString, cplx>> terms);

  static PauliSum identity(int n_qubits, cplx coefficient = 1.0);

  int n_qubits() const noexcept { return n_qubits_; }
  double drop_tolerance() const noexcept { return drop_tol_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  void add(const PauliString& s, cplx coefficient = 1.0);
  /// Coefficient of the phase-normalized form of `s` (0 when absent).
  cplx coefficient(const PauliString& s) const;

  std::vector<Term> terms() const;
  const std::map<PauliKey, cplx>& raw_terms() const noexcept { return terms_; }

  bool is_hermitian(double tol = 1e-10) const;
  PauliSum adjoint() const;
  /// Sum of coefficient magnitudes.
  double one_norm() const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(cplx scalar);

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, cplx s) { return a *= s; }
  friend PauliSum operator*(cplx s, PauliSum a) { return a *= s; }

  /// True when both sums hold the same strings with coefficients within tol.
  bool approx_equal(const PauliSum& other, double tol = 1e-10) const;

  std::string to_string() const;

 private:
  void check_register(const PauliSum& other) const;
  void accumulate(const PauliKey& key, cplx value);

  int n_qubits_ = 0;
  double drop_tol_ = kDropTolerance;
  std::map<PauliKey, cplx> terms_;
};

/// Distributive product with like-term merging.
PauliSum pauli_sum_product(const PauliSum& a, const PauliSum& b);
inline PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  return pauli_sum_product(a, b);
}

/// Dense 2^N x 2^N matrix; basis index bit j is qubit j.
Eigen::MatrixXcd to_dense(const PauliSum& s);
Eigen::MatrixXcd to_dense(const PauliString& s);

/// Pauli decomposition of a dense 2^N x 2^N matrix, c_P = Tr(P M) / 2^N.
PauliSum decompose(const Eigen::MatrixXcd& m, double drop_tolerance = kDropTolerance);

}  // namespace qas
