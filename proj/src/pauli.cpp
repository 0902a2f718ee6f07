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

#include "qas/pauli.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qas {

namespace {

constexpr cplx kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

std::uint64_t register_mask(int n_qubits) {
  return n_qubits >= 64 ? ~std::uint64_t{0}
                        : (std::uint64_t{1} << n_qubits) - 1;
}

void check_qubit_count(int n_qubits) {
  if (n_qubits <= 0 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, 64], got " +
                                std::to_string(n_qubits));
  }
}

int popcount(std::uint64_t v) { return std::popcount(v); }

// Amplitude factor of P|b> = factor * |b ^ x>, for a phase-free string.
inline cplx apply_factor(std::uint64_t b, std::uint64_t x, std::uint64_t z) {
  int k = popcount(x & z) + 2 * popcount(b & z);
  return kIPowers[k & 3];
}

}  // namespace

PauliString::PauliString(int n_qubits, std::uint64_t x_mask,
                         std::uint64_t z_mask, int log_i_phase)
    : n_qubits_(n_qubits), x_(x_mask), z_(z_mask), phase_(log_i_phase & 3) {
  check_qubit_count(n_qubits);
  auto outside = ~register_mask(n_qubits);
  if ((x_mask | z_mask) & outside) {
    throw std::invalid_argument("Pauli mask has bits beyond the register");
  }
}

PauliString PauliString::identity(int n_qubits) {
  return PauliString(n_qubits, 0, 0, 0);
}

PauliString PauliString::single(int n_qubits, int qubit, Pauli p) {
  if (qubit < 0 || qubit >= n_qubits) {
    throw std::out_of_range("qubit index out of range");
  }
  std::uint64_t bit = std::uint64_t{1} << qubit;
  std::uint64_t x = (p == Pauli::X || p == Pauli::Y) ? bit : 0;
  std::uint64_t z = (p == Pauli::Z || p == Pauli::Y) ? bit : 0;
  return PauliString(n_qubits, x, z, 0);
}

PauliString PauliString::from_label(std::string_view label) {
  int phase = 0;
  if (!label.empty() && (label.front() == '+' || label.front() == '-')) {
    if (label.front() == '-') phase += 2;
    label.remove_prefix(1);
  }
  if (!label.empty() && label.front() == 'i') {
    phase += 1;
    label.remove_prefix(1);
  }
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  int n = static_cast<int>(label.size());
  check_qubit_count(n);
  for (int q = 0; q < n; ++q) {
    std::uint64_t bit = std::uint64_t{1} << q;
    switch (label[q]) {
      case 'I': case '_': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw std::invalid_argument("bad Pauli label character '" +
                                    std::string(1, label[q]) + "'");
    }
  }
  return PauliString(n, x, z, phase);
}

cplx PauliString::phase() const noexcept { return kIPowers[phase_]; }

Pauli PauliString::at(int qubit) const {
  if (qubit < 0 || qubit >= n_qubits_) throw std::out_of_range("qubit index");
  bool xb = (x_ >> qubit) & 1;
  bool zb = (z_ >> qubit) & 1;
  if (xb && zb) return Pauli::Y;
  if (xb) return Pauli::X;
  if (zb) return Pauli::Z;
  return Pauli::I;
}

int PauliString::weight() const noexcept { return popcount(x_ | z_); }

bool PauliString::commutes_with(const PauliString& other) const {
  if (n_qubits_ != other.n_qubits_) {
    throw std::invalid_argument("qubit-count mismatch");
  }
  return ((popcount(x_ & other.z_) + popcount(z_ & other.x_)) & 1) == 0;
}

PauliString PauliString::inverse() const noexcept {
  // Phase-free strings are involutions, so only the phase is inverted.
  PauliString r = *this;
  r.phase_ = (4 - phase_) & 3;
  return r;
}

std::string PauliString::to_string() const {
  static const char* kPrefix[4] = {"+", "+i", "-", "-i"};
  static const char kChar[4] = {'I', 'X', 'Y', 'Z'};
  std::string s = kPrefix[phase_];
  for (int q = 0; q < n_qubits_; ++q) s += kChar[static_cast<int>(at(q))];
  return s;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("qubit-count mismatch in Pauli product");
  }
  // Write each factor as i^{|x&z|} X^x Z^z, move Z^{z1} past X^{x2}, and
  // convert the result back to the Y convention.
  std::uint64_t x = a.x_mask() ^ b.x_mask();
  std::uint64_t z = a.z_mask() ^ b.z_mask();
  int k = a.log_i_phase() + b.log_i_phase() +
          popcount(a.x_mask() & a.z_mask()) +
          popcount(b.x_mask() & b.z_mask()) +
          2 * popcount(a.z_mask() & b.x_mask()) - popcount(x & z);
  return PauliString(a.n_qubits(), x, z, ((k % 4) + 4) % 4);
}

// ---------------------------------------------------------------------------

PauliSum::PauliSum(int n_qubits, double drop_tolerance)
    : n_qubits_(n_qubits), drop_tol_(drop_tolerance) {
  check_qubit_count(n_qubits);
}

PauliSum::PauliSum(int n_qubits,
                   std::initializer_list<std::pair<PauliString, cplx>> terms)
    : PauliSum(n_qubits) {
  for (const auto& [s, c] : terms) add(s, c);
}

PauliSum PauliSum::identity(int n_qubits, cplx coefficient) {
  PauliSum s(n_qubits);
  s.add(PauliString::identity(n_qubits), coefficient);
  return s;
}

void PauliSum::accumulate(const PauliKey& key, cplx value) {
  auto [it, inserted] = terms_.try_emplace(key, value);
  if (!inserted) it->second += value;
  if (std::abs(it->second) < drop_tol_) terms_.erase(it);
}

void PauliSum::add(const PauliString& s, cplx coefficient) {
  if (s.n_qubits() != n_qubits_) {
    throw std::invalid_argument("qubit-count mismatch adding Pauli term");
  }
  accumulate({s.x_mask(), s.z_mask()}, coefficient * s.phase());
}

cplx PauliSum::coefficient(const PauliString& s) const {
  auto it = terms_.find({s.x_mask(), s.z_mask()});
  return it == terms_.end() ? cplx{0.0} : it->second;
}

std::vector<PauliSum::Term> PauliSum::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) {
    out.push_back({PauliString(n_qubits_, k.x, k.z, 0), c});
  }
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& [k, c] : terms_) {
    if (std::abs(c.imag()) > tol) return false;
  }
  return true;
}

PauliSum PauliSum::adjoint() const {
  PauliSum r(n_qubits_, drop_tol_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, std::conj(c));
  return r;
}

double PauliSum::one_norm() const {
  double s = 0.0;
  for (const auto& [k, c] : terms_) s += std::abs(c);
  return s;
}

void PauliSum::check_register(const PauliSum& other) const {
  if (n_qubits_ != other.n_qubits_) {
    throw std::invalid_argument("qubit-count mismatch between Pauli sums");
  }
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  check_register(other);
  for (const auto& [k, c] : other.terms_) accumulate(k, c);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  check_register(other);
  for (const auto& [k, c] : other.terms_) accumulate(k, -c);
  return *this;
}

PauliSum& PauliSum::operator*=(cplx scalar) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= scalar;
    if (std::abs(it->second) < drop_tol_) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

bool PauliSum::approx_equal(const PauliSum& other, double tol) const {
  if (n_qubits_ != other.n_qubits_) return false;
  for (const auto& [k, c] : terms_) {
    auto it = other.terms_.find(k);
    cplx oc = it == other.terms_.end() ? cplx{0.0} : it->second;
    if (std::abs(c - oc) > tol) return false;
  }
  for (const auto& [k, c] : other.terms_) {
    if (!terms_.contains(k) && std::abs(c) > tol) return false;
  }
  return true;
}

std::string PauliSum::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.coefficient.real() << (t.coefficient.imag() < 0 ? "" : "+")
       << t.coefficient.imag() << "i)*" << t.string.to_string().substr(1);
  }
  if (first) os << "0";
  return os.str();
}

PauliSum pauli_sum_product(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("qubit-count mismatch in Pauli sum product");
  }
  // Accumulate unpruned, prune once at the end.
  std::map<PauliKey, cplx> acc;
  int n = a.n_qubits();
  for (const auto& [ka, ca] : a.raw_terms()) {
    PauliString sa(n, ka.x, ka.z, 0);
    for (const auto& [kb, cb] : b.raw_terms()) {
      PauliString p = multiply(sa, PauliString(n, kb.x, kb.z, 0));
      acc[{p.x_mask(), p.z_mask()}] += ca * cb * p.phase();
    }
  }
  PauliSum out(n, std::min(a.drop_tolerance(), b.drop_tolerance()));
  for (const auto& [k, c] : acc) {
    if (std::abs(c) >= out.drop_tolerance()) {
      out.add(PauliString(n, k.x, k.z, 0), c);
    }
  }
  return out;
}

Eigen::MatrixXcd to_dense(const PauliString& s) {
  PauliSum sum(s.n_qubits());
  sum.add(s, 1.0);
  return to_dense(sum);
}

Eigen::MatrixXcd to_dense(const PauliSum& s) {
  if (s.n_qubits() > 14) {
    throw std::invalid_argument("dense conversion limited to 14 qubits");
  }
  const std::uint64_t dim = std::uint64_t{1} << s.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [k, c] : s.raw_terms()) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      m(b ^ k.x, b) += c * apply_factor(b, k.x, k.z);
    }
  }
  return m;
}

PauliSum decompose(const Eigen::MatrixXcd& m, double drop_tolerance) {
  const auto dim = static_cast<std::uint64_t>(m.rows());
  if (m.rows() != m.cols() || dim == 0 || !std::has_single_bit(dim)) {
    throw std::invalid_argument("decompose needs a square 2^N matrix");
  }
  int n = std::countr_zero(dim);
  if (n == 0) {
    throw std::invalid_argument("decompose needs at least one qubit");
  }
  PauliSum out(n, drop_tolerance);
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t z = 0; z < dim; ++z) {
      // Tr(P M) = sum_b <b^x| P |b> M(b, b^x)
      cplx tr = 0.0;
      for (std::uint64_t b = 0; b < dim; ++b) {
        tr += apply_factor(b, x, z) * m(b, b ^ x);
      }
      tr /= static_cast<double>(dim);
      if (std::abs(tr) >= drop_tolerance) {
        out.add(PauliString(n, x, z, 0), tr);
      }
    }
  }
  return out;
}

}  // namespace qas
