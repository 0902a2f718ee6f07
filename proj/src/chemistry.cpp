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

#include "qas/chemistry.hpp"

#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "qas/fermion.hpp"

namespace qas {

namespace {

constexpr double kIntegralFloor = 1e-14;

// Unpruned accumulation; pruning happens once when the PauliSum is built.
class Accumulator {
 public:
  explicit Accumulator(int n_qubits) : n_(n_qubits) {}
  void add(const PauliSum& s, double scale) {
    for (const auto& [k, c] : s.raw_terms()) acc_[k] += scale * c;
  }
  void add_identity(double v) { acc_[PauliKey{0, 0}] += v; }
  PauliSum finish() const {
    PauliSum out(n_);
    for (const auto& [k, c] : acc_) {
      if (std::abs(c) >= out.drop_tolerance()) out.add(PauliString(n_, k.x, k.z), c);
    }
    return out;
  }

 private:
  int n_;
  std::map<PauliKey, cplx> acc_;
};

int modes_for(int n_orbitals) {
  if (n_orbitals <= 0 || 2 * n_orbitals > kMaxQubits) {
    throw std::invalid_argument("orbital count out of range");
  }
  return 2 * n_orbitals;
}

}  // namespace

PauliSum one_body_operator(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("one-body matrix must be square");
  const int n = static_cast<int>(m.rows());
  JordanWignerTable jw(modes_for(n));
  Accumulator acc(jw.n_modes());
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (std::abs(m(p, q)) < kIntegralFloor) continue;
      for (int sigma = 0; sigma < 2; ++sigma) {
        acc.add(jw.one_body(spin_orbital(p, sigma), spin_orbital(q, sigma)), m(p, q));
      }
    }
  }
  return acc.finish();
}

PauliSum two_body_operator(const TwoElectronTensor& eri) {
  const int n = eri.n_orbitals();
  JordanWignerTable jw(modes_for(n));
  Accumulator acc(jw.n_modes());
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v = eri(p, s, q, r);
          if (std::abs(v) < kIntegralFloor) continue;
          for (int sigma = 0; sigma < 2; ++sigma) {
            for (int tau = 0; tau < 2; ++tau) {
              const int a = spin_orbital(p, sigma);
              const int b = spin_orbital(q, tau);
              const int c = spin_orbital(r, tau);
              const int d = spin_orbital(s, sigma);
              if (a == b || c == d) continue;
              acc.add(jw.two_body(a, b, c, d), 0.5 * v);
            }
          }
        }
  return acc.finish();
}

PauliSum build_electronic_hamiltonian(const IntegralSet& integrals) {
  integrals.validate();
  const int n_modes = modes_for(integrals.n_orbitals);
  Accumulator acc(n_modes);
  acc.add(one_body_operator(integrals.h), 1.0);
  acc.add(two_body_operator(integrals.eri), 1.0);
  acc.add_identity(integrals.e_nuc);
  return acc.finish();
}

PauliSum orbital_population(int orbital, int n_orbitals) {
  JordanWignerTable jw(modes_for(n_orbitals));
  if (orbital < 0 || orbital >= n_orbitals) throw std::out_of_range("orbital index");
  return jw.number(spin_orbital(orbital, 0)) + jw.number(spin_orbital(orbital, 1));
}

PauliSum particle_number(int n_orbitals) {
  PauliSum out(modes_for(n_orbitals));
  for (int k = 0; k < n_orbitals; ++k) out += orbital_population(k, n_orbitals);
  return out;
}

PauliSum spin_z2(int n_orbitals) {
  JordanWignerTable jw(modes_for(n_orbitals));
  PauliSum out(jw.n_modes());
  for (int k = 0; k < n_orbitals; ++k) {
    out += jw.number(spin_orbital(k, 0));
    out -= jw.number(spin_orbital(k, 1));
  }
  return out;
}

const PauliSum& ObservableSet::at(const std::string& label) const {
  auto it = operators.find(label);
  if (it == operators.end()) throw std::out_of_range("unknown observable '" + label + "'");
  return it->second;
}

std::vector<std::string> ObservableSet::labels() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : operators) out.push_back(k);
  return out;
}

ObservableSet build_observables(const IntegralSet& integrals,
                                const std::vector<std::string>& orbital_labels,
                                bool with_energies) {
  integrals.validate();
  const int n = integrals.n_orbitals;
  if (!orbital_labels.empty() && static_cast<int>(orbital_labels.size()) != n) {
    throw std::invalid_argument("need one label per spatial orbital");
  }
  ObservableSet out;
  for (int k = 0; k < n; ++k) {
    std::string name = orbital_labels.empty() ? std::to_string(k) : orbital_labels[k];
    out.operators.emplace("pop_" + name, orbital_population(k, n));
  }
  if (!with_energies) return out;
  if (!integrals.has_split()) {
    throw std::invalid_argument("energy decomposition needs kinetic/potential integrals");
  }
  PauliSum kinetic = one_body_operator(*integrals.kinetic);
  PauliSum potential = one_body_operator(*integrals.potential);
  PauliSum coulomb = two_body_operator(integrals.eri);
  PauliSum total = kinetic + potential + coulomb +
                   PauliSum::identity(2 * n, integrals.e_nuc);
  out.operators.emplace("E_kinetic", std::move(kinetic));
  out.operators.emplace("E_potential", std::move(potential));
  out.operators.emplace("E_coulomb", std::move(coulomb));
  out.operators.emplace("E_total", std::move(total));
  return out;
}

std::vector<std::uint64_t> sector_basis(int n_qubits, Sector sector) {
  if (n_qubits <= 0 || n_qubits > 30) throw std::invalid_argument("qubit count out of range");
  const std::uint64_t up_mask = 0x5555555555555555ULL;
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  std::vector<std::uint64_t> out;
  for (std::uint64_t b = 0; b < dim; ++b) {
    int up = std::popcount(b & up_mask);
    int down = std::popcount(b & ~up_mask);
    if (up + down == sector.n_electrons && up - down == sector.two_sz) out.push_back(b);
  }
  return out;
}

SectorSpectrum sector_spectrum(const PauliSum& h, Sector sector) {
  if (!h.is_hermitian()) throw std::invalid_argument("sector spectrum needs a Hermitian operator");
  const auto basis = sector_basis(h.n_qubits(), sector);
  if (basis.empty()) throw std::invalid_argument("requested sector is empty");
  const Eigen::MatrixXcd dense = to_dense(h);
  const auto m = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd block(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      block(i, j) = dense(static_cast<Eigen::Index>(basis[i]), static_cast<Eigen::Index>(basis[j]));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block);
  if (es.info() != Eigen::Success) throw std::runtime_error("sector eigensolve failed");

  SectorSpectrum out;
  out.energies = es.eigenvalues();
  out.states = Eigen::MatrixXcd::Zero(dense.rows(), m);
  for (Eigen::Index k = 0; k < m; ++k) {
    Eigen::VectorXcd v = es.eigenvectors().col(k);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    v *= std::abs(v[imax]) / v[imax];
    for (Eigen::Index i = 0; i < m; ++i) out.states(static_cast<Eigen::Index>(basis[i]), k) = v[i];
  }
  return out;
}

PreparedState build_initial_state(const PauliSum& h, const SuperpositionSpec& spec,
                                  double degeneracy_tol) {
  if (spec.eigen_indices.empty() || spec.eigen_indices.size() != spec.amplitudes.size()) {
    throw std::invalid_argument("need one amplitude per selected eigenstate");
  }
  double norm2 = 0.0;
  for (auto b : spec.amplitudes) norm2 += std::norm(b);
  if (std::abs(norm2 - 1.0) > 1e-10) {
    throw std::invalid_argument("superposition amplitudes are not normalized (sum |b|^2 = " +
                                std::to_string(norm2) + ")");
  }
  const auto spectrum = sector_spectrum(h, spec.sector);
  const auto m = static_cast<int>(spectrum.energies.size());
  std::set<int> seen;
  PreparedState out{StateVector(h.n_qubits(), Eigen::VectorXcd::Zero(spectrum.states.rows())), {}};
  for (std::size_t j = 0; j < spec.eigen_indices.size(); ++j) {
    int k = spec.eigen_indices[j];
    if (k < 0) k += m;
    if (k < 0 || k >= m) throw std::out_of_range("eigen-index outside the sector spectrum");
    if (!seen.insert(k).second) throw std::invalid_argument("eigen-index selected twice");
    const double e = spectrum.energies[k];
    if ((k > 0 && std::abs(e - spectrum.energies[k - 1]) < degeneracy_tol) ||
        (k + 1 < m && std::abs(spectrum.energies[k + 1] - e) < degeneracy_tol)) {
      throw std::invalid_argument("selected eigenvalue " + std::to_string(e) + " is degenerate");
    }
    out.state.amplitudes() += spec.amplitudes[j] * spectrum.states.col(k);
    out.energies.push_back(e);
  }
  return out;
}

}  // namespace qas
