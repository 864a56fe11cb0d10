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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace dqj {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

// Squared norms at or below this value mark an annihilated trajectory.
inline constexpr double kNormEpsilon = 1e-14;

// Complex amplitude vector. May be unnormalized: along an effective-Hamiltonian
// trajectory its squared norm is the running no-jump probability.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(CVector amplitudes);
  StateVector(std::initializer_list<Complex> amplitudes);

  static StateVector basis(Index dim, Index index);
  static StateVector zero(Index dim);

  Index dim() const { return amplitudes_.size(); }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex operator[](Index i) const { return amplitudes_[i]; }

  StateVector scaled(Complex factor) const;

 private:
  CVector amplitudes_;
};

// Square complex matrix acting on StateVector of matching dimension.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  explicit OperatorMatrix(CMatrix entries);

  static OperatorMatrix identity(Index dim);
  static OperatorMatrix zero(Index dim);

  Index dim() const { return entries_.rows(); }
  const CMatrix& entries() const { return entries_; }
  Complex operator()(Index r, Index c) const { return entries_(r, c); }

  OperatorMatrix adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;

 private:
  CMatrix entries_;
};

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(Complex s, const OperatorMatrix& a);
StateVector operator*(const OperatorMatrix& op, const StateVector& psi);

// Ordered jump operators L_j = sqrt(gamma_j) A_j. The position of an operator is
// its identity for the lifetime of the set.
class JumpOperatorSet {
 public:
  JumpOperatorSet() = default;
  explicit JumpOperatorSet(std::vector<OperatorMatrix> operators);

  std::size_t size() const { return operators_.size(); }
  bool empty() const { return operators_.empty(); }
  // Zero when empty.
  Index dim() const { return operators_.empty() ? 0 : operators_.front().dim(); }
  const OperatorMatrix& operator[](std::size_t j) const { return operators_[j]; }
  const std::vector<OperatorMatrix>& operators() const { return operators_; }

  auto begin() const { return operators_.begin(); }
  auto end() const { return operators_.end(); }

  // Sum_j L_j^dagger L_j; zero matrix of `dim` when the set is empty.
  OperatorMatrix decay_operator(Index dim) const;

 private:
  std::vector<OperatorMatrix> operators_;
};

class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(CMatrix entries);

  static DensityMatrix pure(const StateVector& psi);

  Index dim() const { return entries_.rows(); }
  const CMatrix& entries() const { return entries_; }
  Complex operator()(Index r, Index c) const { return entries_(r, c); }

  Complex trace() const { return entries_.trace(); }
  // max_ij |rho_ij - conj(rho_ji)|
  double hermiticity_error() const;
  double min_eigenvalue() const;
  DensityMatrix symmetrized() const;

 private:
  CMatrix entries_;
};

double squared_norm(const StateVector& psi);

// <psi|O|psi> without normalizing psi.
Complex expectation(const StateVector& psi, const OperatorMatrix& op);

// |psi><psi| / <psi|psi>. Throws NormUnderflow for an annihilated state.
DensityMatrix outer_product_normalized(const StateVector& psi);

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b);

// Largest |eigenvalue| of a Hermitian operator.
double hermitian_operator_norm(const OperatorMatrix& op);

}  // namespace dqj
