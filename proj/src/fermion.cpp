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

#include "qas/fermion.hpp"

#include <stdexcept>
#include <string>

namespace qas {

PauliSum jordan_wigner(FermionOp op, int n_modes) {
  if (n_modes <= 0 || n_modes > kMaxQubits) {
    throw std::invalid_argument("mode count must be in [1, 64]");
  }
  if (op.mode < 0 || op.mode >= n_modes) {
    throw std::out_of_range("fermion mode " + std::to_string(op.mode) +
                            " outside register of " + std::to_string(n_modes));
  }
  const std::uint64_t bit = std::uint64_t{1} << op.mode;
  const std::uint64_t zstring = bit - 1;
  PauliString x(n_modes, bit, zstring, 0);
  PauliString y(n_modes, bit, zstring | bit, 0);
  PauliSum out(n_modes);
  out.add(x, 0.5);
  out.add(y, op.dagger ? cplx{0.0, -0.5} : cplx{0.0, 0.5});
  return out;
}

PauliSum jordan_wigner(std::span<const FermionOp> ops, int n_modes) {
  PauliSum out = PauliSum::identity(n_modes);
  for (const auto& op : ops) out = pauli_sum_product(out, jordan_wigner(op, n_modes));
  return out;
}

JordanWignerTable::JordanWignerTable(int n_modes) : n_modes_(n_modes) {
  create_.reserve(n_modes);
  annihilate_.reserve(n_modes);
  for (int p = 0; p < n_modes; ++p) {
    create_.push_back(jordan_wigner(FermionOp::create(p), n_modes));
    annihilate_.push_back(jordan_wigner(FermionOp::annihilate(p), n_modes));
  }
}

const PauliSum& JordanWignerTable::image(FermionOp op) const {
  if (op.mode < 0 || op.mode >= n_modes_) {
    throw std::out_of_range("fermion mode out of range");
  }
  return op.dagger ? create_[op.mode] : annihilate_[op.mode];
}

PauliSum JordanWignerTable::one_body(int p, int q) const {
  return pauli_sum_product(image(FermionOp::create(p)),
                           image(FermionOp::annihilate(q)));
}

PauliSum JordanWignerTable::two_body(int p, int q, int r, int s) const {
  PauliSum left = pauli_sum_product(image(FermionOp::create(p)),
                                    image(FermionOp::create(q)));
  PauliSum right = pauli_sum_product(image(FermionOp::annihilate(r)),
                                     image(FermionOp::annihilate(s)));
  return pauli_sum_product(left, right);
}

}  // namespace qas
