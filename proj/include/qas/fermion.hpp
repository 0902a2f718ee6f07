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

#include <span>
#include <vector>

#include "qas/pauli.hpp"

namespace qas {

/// Fermionic creation (dagger) or annihilation operator on one spin-orbital.
///
/// Spin-orbitals are interleaved: mode 2k is spatial orbital k spin-up and
/// mode 2k+1 is spatial orbital k spin-down. An occupied mode is qubit |1>.
struct FermionOp {
  int mode = 0;
  bool dagger = false;

  static FermionOp create(int mode) { return {mode, true}; }
  static FermionOp annihilate(int mode) { return {mode, false}; }
};

inline constexpr int spin_orbital(int spatial, int spin) {
  return 2 * spatial + spin;
}

/// a_p^dag -> (X_p - iY_p)/2 Z_{p-1}..Z_0, a_p -> (X_p + iY_p)/2 Z_{p-1}..Z_0.
PauliSum jordan_wigner(FermionOp op, int n_modes);

/// JW image of the ordered product ops[0] ops[1] ... ops[k-1].
PauliSum jordan_wigner(std::span<const FermionOp> ops, int n_modes);

/// Caches the JW image of every ladder operator on a register.
class JordanWignerTable {
 public:
  explicit JordanWignerTable(int n_modes);

  int n_modes() const noexcept { return n_modes_; }
  const PauliSum& image(FermionOp op) const;

  /// a_p^dag a_q
  PauliSum one_body(int p, int q) const;
  /// a_p^dag a_q^dag a_r a_s
  PauliSum two_body(int p, int q, int r, int s) const;
  /// a_p^dag a_p = (I - Z_p)/2
  PauliSum number(int p) const { return one_body(p, p); }

 private:
  int n_modes_;
  std::vector<PauliSum> create_;
  std::vector<PauliSum> annihilate_;
};

}  // namespace qas
