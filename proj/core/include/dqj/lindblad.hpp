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

#include <span>
#include <vector>

#include "dqj/quantum_state.hpp"

namespace dqj {

// Density matrices indexed by strictly increasing recording times.
class DensityMatrixSeries {
 public:
  DensityMatrixSeries() = default;
  DensityMatrixSeries(std::vector<double> times, std::vector<DensityMatrix> states);

  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }
  const std::vector<double>& times() const { return times_; }
  const std::vector<DensityMatrix>& states() const { return states_; }
  const DensityMatrix& operator[](std::size_t i) const { return states_[i]; }
  const DensityMatrix& back() const { return states_.back(); }

  // Exact-time lookup; throws InvalidInput if `t` is not a recording time.
  const DensityMatrix& at(double t) const;
  // Index of the recording time closest to `t` within `tol`, or throws.
  std::size_t index_of(double t, double tol = 1e-12) const;

 private:
  std::vector<double> times_;
  std::vector<DensityMatrix> states_;
};

struct LindbladSystem {
  OperatorMatrix hamiltonian;
  JumpOperatorSet jumps;
  DensityMatrix rho0;

  // Throws on dimension mismatch or if rho0 is not Hermitian, trace one and PSD.
  void validate() const;
};

// Precomputed pieces of L[rho] = -i[H, rho] + sum_j L_j rho L_j^dagger - {K, rho}/2
// with K = sum_j L_j^dagger L_j.
class LindbladGenerator {
 public:
  explicit LindbladGenerator(const LindbladSystem& sys);
  CMatrix operator()(const CMatrix& rho) const;
  Index dim() const { return h_.rows(); }

 private:
  CMatrix h_;
  CMatrix h_eff_;  // H - (i/2) K
  std::vector<CMatrix> jumps_;
};

CMatrix lindblad_rhs(const DensityMatrix& rho, const LindbladSystem& sys);

// Classical RK4 on the master equation. Every recording time is an exact step
// boundary; steps never exceed max_step. Recorded matrices are re-symmetrized.
DensityMatrixSeries integrate_master(const LindbladSystem& sys, double T,
                                     std::span<const double> record_at, double max_step);

}  // namespace dqj
