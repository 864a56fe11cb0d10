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

#include <cstdint>
#include <vector>

#include "dqj/lindblad.hpp"
#include "dqj/propagation.hpp"
#include "dqj/quantum_state.hpp"
#include "dqj/random.hpp"

namespace dqj {

struct SqjConfig {
  std::uint64_t n_traj = 1000;
  std::uint64_t seed = 0;
  double bisection_tol = 1e-10;  // relative, in (0, 1e-6]
  PropagationConfig propagation{1e-3, Integrator::kRk4};
  unsigned workers = 1;
  // Attempts per trajectory before an annihilating jump is treated as fatal.
  int max_resamples = 1000;

  void validate() const;
};

struct JumpEvent {
  double time;
  std::size_t op;
};

struct SqjTrajectory {
  std::vector<JumpEvent> jump_events;
  std::vector<StateVector> recorded_states;  // unit norm, aligned with record times
  int resamples = 0;
};

struct SqjResult {
  double p0 = 0.0;
  std::vector<double> record_times;
  DensityMatrixSeries zero_jump;  // normalized no-jump trajectory
  std::vector<SqjTrajectory> trajectories;
  std::uint64_t resampled = 0;
};

struct JumpSearch {
  bool found = false;
  double time = 0.0;
  StateVector state;  // unnormalized state at `time`
};

// Integrates from t_start towards t_end in RK4 steps of cfg.propagation.max_step
// (the last one shortened) and returns the first time where the
// squared norm drops to s, or found = false with the state at t_end.
JumpSearch find_jump_time(const StateVector& psi, double t_start, double t_end, double s,
                          const EffectiveHamiltonian& heff, const SqjConfig& cfg);

// Index i with probability <L_i^dagger L_i> / sum_j <L_j^dagger L_j>.
std::size_t choose_jump_operator(const StateVector& psi, const JumpOperatorSet& jumps,
                                 CounterRng& rng);

// Adapted scheme: every sampled trajectory carries at least one jump, its
// first threshold drawn from [p0, 1]. Empty record_at records at T only.
SqjResult run_sqj(const OperatorMatrix& h, const JumpOperatorSet& jumps, const StateVector& psi0,
                  double T, const SqjConfig& cfg, std::vector<double> record_at = {});

// rho(t) = p0 rho0(t) + (1 - p0) / N * sum |psi(t)><psi(t)|.
DensityMatrixSeries assemble_sqj(double p0, const DensityMatrixSeries& zero_jump,
                                 const std::vector<SqjTrajectory>& trajectories,
                                 const std::vector<double>& record_at);

inline DensityMatrixSeries assemble_sqj(const SqjResult& r) {
  return assemble_sqj(r.p0, r.zero_jump, r.trajectories, r.record_times);
}

}  // namespace dqj
