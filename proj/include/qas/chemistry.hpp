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
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qas/integrals.hpp"
#include "qas/pauli.hpp"
#include "qas/statevector.hpp"

namespace qas {

/// Spin-summed one-body operator sum_{pq,sigma} m_pq a^dag_{p sigma} a_{q sigma}.
PauliSum one_body_operator(const Eigen::MatrixXd& m);

/// 1/2 sum_{pqrs,sigma tau} (ps|qr) a^dag_{p sigma} a^dag_{q tau} a_{r tau} a_{s sigma}.
PauliSum two_body_operator(const TwoElectronTensor& eri);

/// JW image of the electronic Hamiltonian on 2 * n_orbitals qubits, with the
/// nuclear repulsion carried on the identity term.
PauliSum build_electronic_hamiltonian(const IntegralSet& integrals);

/// Spin-up plus spin-down occupation of one spatial orbital.
PauliSum orbital_population(int orbital, int n_orbitals);
PauliSum particle_number(int n_orbitals);
/// 2 S_z = N_up - N_down
PauliSum spin_z2(int n_orbitals);

/// Named observables on the qubit register.
///
/// Populations are `pop_<label>`; the energy decomposition is `E_kinetic`,
/// `E_potential`, `E_coulomb` and `E_total` (which includes e_nuc).
struct ObservableSet {
  std::map<std::string, PauliSum> operators;

  bool contains(const std::string& label) const { return operators.contains(label); }
  const PauliSum& at(const std::string& label) const;
  std::vector<std::string> labels() const;
};

/// Orbital labels default to the 0-based orbital index. Energy observables
/// need split integrals; pass `with_energies = false` to omit them.
ObservableSet build_observables(const IntegralSet& integrals,
                                const std::vector<std::string>& orbital_labels = {},
                                bool with_energies = true);

/// Fixed particle-number / spin-projection block of Fock space.
struct Sector {
  int n_electrons = 0;
  int two_sz = 0;
};

std::vector<std::uint64_t> sector_basis(int n_qubits, Sector sector);

/// Eigenpairs of the Hamiltonian restricted to one sector, ascending.
/// Eigenvectors are full-register columns with the largest-magnitude
/// amplitude made real and positive.
struct SectorSpectrum {
  Eigen::VectorXd energies;
  Eigen::MatrixXcd states;
};

SectorSpectrum sector_spectrum(const PauliSum& h, Sector sector);

/// Superposition sum_j beta_j |e_j> of sector eigenstates. Negative indices
/// count from the top of the sector spectrum (-1 is the highest).
struct SuperpositionSpec {
  Sector sector;
  std::vector<int> eigen_indices;
  std::vector<cplx> amplitudes;
};

struct PreparedState {
  StateVector state;
  std::vector<double> energies;  // of the selected eigenstates, for diagnostics
};

/// Throws std::invalid_argument for unnormalized amplitudes, repeated or
/// out-of-range indices, or a selected eigenvalue that is degenerate.
PreparedState build_initial_state(const PauliSum& h, const SuperpositionSpec& spec,
                                  double degeneracy_tol = 1e-8);

}  // namespace qas
