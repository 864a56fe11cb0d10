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
#include <span>
#include <vector>

#include "dqj/quantum_state.hpp"

namespace dqj {

// H_eff = H - (i/2) sum_j L_j^dagger L_j with both parts kept for inspection.
class EffectiveHamiltonian {
 public:
  // Throws InvalidInput if hermitian_part is not Hermitian or decay_part is not
  // Hermitian positive semidefinite (eigenvalues >= -1e-10).
  EffectiveHamiltonian(OperatorMatrix hermitian_part, OperatorMatrix decay_part);

  const OperatorMatrix& matrix() const { return matrix_; }
  const OperatorMatrix& hermitian_part() const { return hermitian_part_; }
  const OperatorMatrix& decay_part() const { return decay_part_; }
  Index dim() const { return matrix_.dim(); }

  // -i H_eff, the generator of d psi / dt.
  const CMatrix& generator() const { return generator_; }

 private:
  OperatorMatrix hermitian_part_;
  OperatorMatrix decay_part_;
  OperatorMatrix matrix_;
  CMatrix generator_;
};

EffectiveHamiltonian build_effective_hamiltonian(const OperatorMatrix& h,
                                                 const JumpOperatorSet& jumps);

enum class Integrator { kRk4 };

struct PropagationConfig {
  // Upper bound on the integrator step. Every interval between consecutive
  // required times is split into ceil(length / max_step) equal steps.
  double max_step = 1e-3;
  Integrator method = Integrator::kRk4;
};

struct TimedState {
  double time;
  StateVector state;
};

struct SegmentResult {
  StateVector final_state;
  std::vector<TimedState> recorded;

  // State recorded at exactly `t`; throws InvalidInput if absent.
  const StateVector& at(double t) const;
};

// Number of equal steps used for an interval of `length` under `max_step`.
long steps_for_interval(double length, double max_step);

// One classical RK4 step of d psi/dt = -i H_eff psi.
CVector rk4_step(const CMatrix& generator, const CVector& psi, double h);

// Integrates d psi/dt = -i H_eff psi from t0 to t1. Every time in record_at and
// t1 is an exact step boundary. Returned states are unnormalized.
SegmentResult propagate_segment(const StateVector& psi0, double t0, double t1,
                                const EffectiveHamiltonian& heff, const PropagationConfig& cfg,
                                std::span<const double> record_at = {});

struct JumpOutcome {
  StateVector state;   // unit norm unless annihilated
  double weight = 0.0; // <psi|L^dagger L|psi> on the incoming, unnormalized psi
  bool annihilated = false;
};

JumpOutcome apply_jump(const StateVector& psi, const OperatorMatrix& jump);

// Matrix applied by `substeps` RK4 steps of size interval/substeps. For a
// time-independent generator A one RK4 step is the polynomial
// 1 + hA + (hA)^2/2 + (hA)^3/6 + (hA)^4/24.
CMatrix rk4_transfer_matrix(const CMatrix& generator, double interval, long substeps);

// Propagators over integer multiples of a fixed tick, each tick integrated with
// a fixed number of RK4 substeps. Lookups after prepare() are const and safe to
// share between threads.
class LatticePropagator {
 public:
  LatticePropagator(const EffectiveHamiltonian& heff, double tick, long substeps_per_tick);

  double tick() const { return tick_; }
  long substeps_per_tick() const { return substeps_; }
  Index dim() const { return tick_matrix_.rows(); }

  // Makes over(ticks) available. ticks >= 0.
  void prepare(long ticks);
  const CMatrix& over(long ticks) const;
  bool has(long ticks) const { return cache_.contains(ticks); }

 private:
  double tick_;
  long substeps_;
  CMatrix tick_matrix_;
  std::map<long, CMatrix> cache_;
};

}  // namespace dqj
