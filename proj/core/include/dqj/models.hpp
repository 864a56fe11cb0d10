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

#pragma once

#include <map>
#include <string>

#include "dqj/quantum_state.hpp"

namespace dqj {

struct ModelInstance {
  std::string label;
  OperatorMatrix hamiltonian;
  JumpOperatorSet jumps;
  StateVector psi0;
  double gamma = 0.0;
  std::map<std::string, OperatorMatrix> observables;
  std::map<std::string, std::string> metadata;

  Index dim() const { return hamiltonian.dim(); }
  const OperatorMatrix& observable(const std::string& name) const;
  // Throws InvalidInput on inconsistent dimensions or a non-unit psi0.
  void validate() const;
};

// Single-qubit operators, basis {|up> = |e>, |down> = |g>}.
OperatorMatrix pauli_x();
OperatorMatrix pauli_y();
OperatorMatrix pauli_z();
OperatorMatrix sigma_minus();  // |g><e|
OperatorMatrix sigma_plus();

// `op` acting on site k (1-based, leftmost tensor factor first) of n qubits.
OperatorMatrix site_operator(const OperatorMatrix& op, int k, int n_qubits);

OperatorMatrix annihilation(int n_fock);
OperatorMatrix number_operator(int n_fock);

// Truncated coherent state on Fock levels 0..n_fock, renormalized. Throws
// TruncationTooSmall when the discarded Poisson tail is >= 1e-3.
StateVector coherent_state(int n_fock, Complex alpha);
double coherent_tail_mass(int n_fock, Complex alpha);

// H = g sum_k sigma^x_k + J sum_k sigma^z_k sigma^z_{k+1} on an open chain,
// L_k = sqrt(gamma) sigma^-_k, psi0 = all up.
ModelInstance build_tfim(int n_qubits, double g, double j_coupling, double gamma);

// H = w0 n + wK n (n - 1) / 2, L = sqrt(gamma) a, psi0 = |alpha>.
ModelInstance build_kerr(int n_fock, double omega0, double omega_kerr, double gamma,
                         Complex alpha);

enum class TestQubitKind { kDark, kRabi };

// dark: H = 0; rabi: H = (omega / 2) sigma^x. Both L = sqrt(gamma) sigma^-, psi0 = |e>.
ModelInstance build_test_qubit(TestQubitKind kind, double gamma, double omega = 0.0);

}  // namespace dqj
