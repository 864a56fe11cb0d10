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

#include "dqj/quantum_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dqj/errors.hpp"

namespace dqj {
namespace {

void require_same_dim(Index a, Index b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) +
                            " does not match " + std::to_string(b));
  }
}

}  // namespace

StateVector::StateVector(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1) throw InvalidInput("StateVector: dimension must be >= 1");
}

StateVector::StateVector(std::initializer_list<Complex> amplitudes)
    : StateVector(CVector::Map(amplitudes.begin(), static_cast<Index>(amplitudes.size()))) {}

StateVector StateVector::basis(Index dim, Index index) {
  if (index < 0 || index >= dim) throw InvalidInput("StateVector::basis: index out of range");
  CVector v = CVector::Zero(dim);
  v[index] = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::zero(Index dim) { return StateVector(CVector::Zero(dim)); }

StateVector StateVector::scaled(Complex factor) const { return StateVector(factor * amplitudes_); }

OperatorMatrix::OperatorMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw DimensionMismatch("OperatorMatrix: matrix is not square");
  }
  if (entries_.rows() < 1) throw InvalidInput("OperatorMatrix: dimension must be >= 1");
}

OperatorMatrix OperatorMatrix::identity(Index dim) {
  return OperatorMatrix(CMatrix::Identity(dim, dim));
}

OperatorMatrix OperatorMatrix::zero(Index dim) { return OperatorMatrix(CMatrix::Zero(dim, dim)); }

OperatorMatrix OperatorMatrix::adjoint() const { return OperatorMatrix(entries_.adjoint()); }

bool OperatorMatrix::is_hermitian(double tol) const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "operator+");
  return OperatorMatrix(a.entries() + b.entries());
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "operator-");
  return OperatorMatrix(a.entries() - b.entries());
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "operator*");
  return OperatorMatrix(a.entries() * b.entries());
}

OperatorMatrix operator*(Complex s, const OperatorMatrix& a) {
  return OperatorMatrix(s * a.entries());
}

StateVector operator*(const OperatorMatrix& op, const StateVector& psi) {
  require_same_dim(op.dim(), psi.dim(), "apply");
  return StateVector(op.entries() * psi.amplitudes());
}

JumpOperatorSet::JumpOperatorSet(std::vector<OperatorMatrix> operators)
    : operators_(std::move(operators)) {
  for (const auto& op : operators_) {
    require_same_dim(op.dim(), operators_.front().dim(), "JumpOperatorSet");
  }
}

OperatorMatrix JumpOperatorSet::decay_operator(Index dim) const {
  if (!operators_.empty()) require_same_dim(this->dim(), dim, "decay_operator");
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (const auto& op : operators_) sum.noalias() += op.entries().adjoint() * op.entries();
  return OperatorMatrix(std::move(sum));
}

DensityMatrix::DensityMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw DimensionMismatch("DensityMatrix: matrix is not square");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) { return outer_product_normalized(psi); }

double DensityMatrix::hermiticity_error() const {
  if (entries_.size() == 0) return 0.0;
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const CMatrix h = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

DensityMatrix DensityMatrix::symmetrized() const {
  return DensityMatrix(0.5 * (entries_ + entries_.adjoint()));
}

double squared_norm(const StateVector& psi) { return psi.amplitudes().squaredNorm(); }

Complex expectation(const StateVector& psi, const OperatorMatrix& op) {
  require_same_dim(op.dim(), psi.dim(), "expectation");
  return psi.amplitudes().dot(op.entries() * psi.amplitudes());
}

DensityMatrix outer_product_normalized(const StateVector& psi) {
  const double n2 = squared_norm(psi);
  if (!(n2 > kNormEpsilon)) {
    throw NormUnderflow("outer_product_normalized: squared norm " + std::to_string(n2) +
                        " at or below annihilation threshold");
  }
  const CVector& a = psi.amplitudes();
  return DensityMatrix((a * a.adjoint()) / n2);
}

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b) {
  const Index na = a.dim();
  const Index nb = b.dim();
  CMatrix out(na * nb, na * nb);
  for (Index i = 0; i < na; ++i) {
    for (Index j = 0; j < na; ++j) {
      out.block(i * nb, j * nb, nb, nb) = a(i, j) * b.entries();
    }
  }
  return OperatorMatrix(std::move(out));
}

double hermitian_operator_norm(const OperatorMatrix& op) {
  const CMatrix h = 0.5 * (op.entries() + op.entries().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace dqj
