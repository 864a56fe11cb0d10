// Copyright 2026 The DQJ Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dqj/models.hpp"

#include <cmath>
#include <string>

#include "dqj/errors.hpp"

namespace dqj {

const OperatorMatrix& ModelInstance::observable(const std::string& name) const {
  const auto it = observables.find(name);
  if (it == observables.end()) {
    throw InvalidInput("model " + label + " has no observable '" + name + "'");
  }
  return it->second;
}

void ModelInstance::validate() const {
  const Index d = hamiltonian.dim();
  if (psi0.dim() != d) throw DimensionMismatch("model " + label + ": psi0 dimension");
  if (!jumps.empty() && jumps.dim() != d) throw DimensionMismatch("model " + label + ": jump dimension");
  for (const auto& [name, op] : observables) {
    if (op.dim() != d) throw DimensionMismatch("model " + label + ": observable " + name);
  }
  if (std::abs(squared_norm(psi0) - 1.0) > 1e-12) {
    throw InvalidInput("model " + label + ": psi0 is not normalized");
  }
}

OperatorMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return OperatorMatrix(m);
}

OperatorMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, -kI, kI, 0;
  return OperatorMatrix(m);
}

OperatorMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return OperatorMatrix(m);
}

OperatorMatrix sigma_minus() {
  CMatrix m(2, 2);
  m << 0, 0, 1, 0;
  return OperatorMatrix(m);
}

OperatorMatrix sigma_plus() { return sigma_minus().adjoint(); }

OperatorMatrix site_operator(const OperatorMatrix& op, int k, int n_qubits) {
  if (n_qubits < 1 || k < 1 || k > n_qubits) {
    throw InvalidInput("site_operator: site " + std::to_string(k) + " outside chain of " +
                       std::to_string(n_qubits));
  }
  OperatorMatrix out = OperatorMatrix::identity(1);
  for (int site = 1; site <= n_qubits; ++site) {
    out = kron(out, site == k ? op : OperatorMatrix::identity(2));
  }
  return out;
}

OperatorMatrix annihilation(int n_fock) {
  if (n_fock < 1) throw InvalidInput("annihilation: n_fock must be >= 1");
  CMatrix a = CMatrix::Zero(n_fock + 1, n_fock + 1);
  for (int n = 1; n <= n_fock; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return OperatorMatrix(a);
}

OperatorMatrix number_operator(int n_fock) {
  if (n_fock < 1) throw InvalidInput("number_operator: n_fock must be >= 1");
  CMatrix m = CMatrix::Zero(n_fock + 1, n_fock + 1);
  for (int n = 0; n <= n_fock; ++n) m(n, n) = static_cast<double>(n);
  return OperatorMatrix(m);
}

namespace {

CVector coherent_amplitudes(int n_fock, Complex alpha) {
  CVector c(n_fock + 1);
  Complex term = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n <= n_fock; ++n) {
    if (n > 0) term *= alpha / std::sqrt(static_cast<double>(n));
    c(n) = term;
  }
  return c;
}

}  // namespace

double coherent_tail_mass(int n_fock, Complex alpha) {
  if (n_fock < 0) throw InvalidInput("coherent_tail_mass: n_fock must be >= 0");
  return std::max(0.0, 1.0 - coherent_amplitudes(n_fock, alpha).squaredNorm());
}

StateVector coherent_state(int n_fock, Complex alpha) {
  const double tail = coherent_tail_mass(n_fock, alpha);
  if (tail >= 1e-3) {
    throw TruncationTooSmall("coherent_state: tail mass " + std::to_string(tail) +
                             " beyond n_fock = " + std::to_string(n_fock));
  }
  const CVector c = coherent_amplitudes(n_fock, alpha);
  return StateVector(c / c.norm());
}

ModelInstance build_tfim(int n_qubits, double g, double j_coupling, double gamma) {
  if (n_qubits < 1 || n_qubits > 10) throw InvalidInput("build_tfim: n_qubits must lie in 1..10");
  if (gamma < 0.0) throw InvalidInput("build_tfim: gamma must be >= 0");
  const Index dim = Index{1} << n_qubits;
  CMatrix h = CMatrix::Zero(dim, dim);
  std::vector<OperatorMatrix> jumps;
  ModelInstance m;
  CMatrix magnetization = CMatrix::Zero(dim, dim);
  for (int k = 1; k <= n_qubits; ++k) {
    const OperatorMatrix zk = site_operator(pauli_z(), k, n_qubits);
    h += g * site_operator(pauli_x(), k, n_qubits).entries();
    if (k < n_qubits) {
      h += j_coupling * (zk * site_operator(pauli_z(), k + 1, n_qubits)).entries();
    }
    if (gamma > 0.0) jumps.push_back(std::sqrt(gamma) * site_operator(sigma_minus(), k, n_qubits));
    m.observables.emplace("sz_" + std::to_string(k), zk);
    magnetization += zk.entries() / static_cast<double>(n_qubits);
  }
  m.label = "tfim" + std::to_string(n_qubits);
  m.hamiltonian = OperatorMatrix(h);
  m.jumps = JumpOperatorSet(std::move(jumps));
  m.psi0 = StateVector::basis(dim, 0);
  m.gamma = gamma;
  m.observables.emplace("magnetization", OperatorMatrix(magnetization));
  m.metadata = {{"boundary", "open"},
                {"g", std::to_string(g)},
                {"J", std::to_string(j_coupling)}};
  m.validate();
  return m;
}

ModelInstance build_kerr(int n_fock, double omega0, double omega_kerr, double gamma,
                         Complex alpha) {
  if (n_fock < 2) throw InvalidInput("build_kerr: n_fock must be >= 2");
  if (gamma < 0.0) throw InvalidInput("build_kerr: gamma must be >= 0");
  const OperatorMatrix a = annihilation(n_fock);
  const OperatorMatrix n = number_operator(n_fock);
  const OperatorMatrix id = OperatorMatrix::identity(n_fock + 1);
  ModelInstance m;
  m.label = "kerr";
  m.hamiltonian = omega0 * n + (0.5 * omega_kerr) * (n * (n - id));
  if (gamma > 0.0) m.jumps = JumpOperatorSet({std::sqrt(gamma) * a});
  m.psi0 = coherent_state(n_fock, alpha);
  m.gamma = gamma;
  m.observables.emplace("X", (1.0 / std::sqrt(2.0)) * (a + a.adjoint()));
  m.observables.emplace("n", n);
  m.metadata = {{"jump", "sqrt(gamma) a"}, {"n_fock", std::to_string(n_fock)}};
  m.validate();
  return m;
}

ModelInstance build_test_qubit(TestQubitKind kind, double gamma, double omega) {
  if (gamma < 0.0) throw InvalidInput("build_test_qubit: gamma must be >= 0");
  ModelInstance m;
  m.label = kind == TestQubitKind::kDark ? "dark_qubit" : "rabi_qubit";
  m.hamiltonian = kind == TestQubitKind::kDark ? OperatorMatrix::zero(2) : (0.5 * omega) * pauli_x();
  if (gamma > 0.0) m.jumps = JumpOperatorSet({std::sqrt(gamma) * sigma_minus()});
  m.psi0 = StateVector::basis(2, 0);
  m.gamma = gamma;
  m.observables.emplace("sz", pauli_z());
  m.observables.emplace("sx", pauli_x());
  m.validate();
  return m;
}

}  // namespace dqj
