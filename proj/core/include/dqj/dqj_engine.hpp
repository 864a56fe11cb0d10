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
#include <functional>
#include <span>
#include <vector>

#include "dqj/jump_grid.hpp"
#include "dqj/lindblad.hpp"
#include "dqj/propagation.hpp"
#include "dqj/quantum_state.hpp"

namespace dqj {

// Default integrator step is dt / kDefaultSubstepDivisor.
inline constexpr int kDefaultSubstepDivisor = 20;

struct TrajectorySpec {
  std::vector<double> jump_times;
  std::vector<std::size_t> jump_operators;
  double grid_weight = 0.0;

  int order() const { return static_cast<int>(jump_times.size()); }
};

// Sum over all n-jump trajectories of p_n * rho^(n)(t) at each recording time,
// plus N_n = sum of p_n. For order 0 the weighted sum is p0 * rho^(0)(t) and
// norm_constant equals p0.
struct JumpOrderContribution {
  int order = 0;
  std::vector<double> times;
  std::vector<CMatrix> weighted_sum;
  double norm_constant = 0.0;
  double p0 = 0.0;
};

// Called once per evaluated trajectory of order >= 1 with its unnormalized
// state at T and its probability p_n. Calls are serialized.
using TrajectoryObserver =
    std::function<void(const TrajectorySpec&, const StateVector& final_state, double probability)>;

struct DqjOptions {
  int order = 1;
  int n_grid = 16;
  // max_step <= 0 selects dt / kDefaultSubstepDivisor.
  PropagationConfig propagation{0.0, Integrator::kRk4};
  // Must lie on the dt/12 lattice inside [0, T]. Empty selects dt * {1..n_grid}.
  std::vector<double> record_at;
  // 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
  unsigned workers = 1;
  TrajectoryObserver observer;
};

struct DqjResult {
  std::vector<JumpOrderContribution> contributions;  // orders 0..order
  std::vector<double> record_times;
  std::uint64_t trajectories = 0;  // zero-jump trajectory included
  std::uint64_t annihilated = 0;   // trajectories dropped with zero weight
  long substeps_per_tick = 0;
  double step = 0.0;

  double p0() const { return contributions.front().p0; }
};

DqjResult run_dqj(const OperatorMatrix& h, const JumpOperatorSet& jumps, const StateVector& psi0,
                  double T, const DqjOptions& options);

// rho(t) = p0 rho0(t) + (1 - p0) / (N_1 + ... + N_order) * sum_n weighted_sum_n(t).
// Throws DegenerateNormalization when p0 < 1 but no jump trajectory carries weight.
DensityMatrixSeries assemble_density(std::span<const JumpOrderContribution> contributions,
                                     int order);

struct ErrorBoundInputs {
  double l0 = 0.0;                    // bound on <L^dagger L(tau)>
  double generator_norm_bound = 0.0;  // bound on ||L||, 2||H_eff|| + ||sum L^dagger L||
  double z_min = 1.0;                 // lower bound on no-jump probabilities
  double p0 = 0.0;
  double T = 0.0;
  int n_grid = 1;
};

// Grid error bound of the order-1 quadrature:
// (1 - p0) * 3 * l0 * ||L||^2 * T^3 / (8 * n_grid^2). The small-loss limit
// 1/z_min ~ 1 is already folded into the constant; z_min is only validated.
double error_bound_order1(const ErrorBoundInputs& in);

// l0 = lambda_max(sum L^dagger L), ||H_eff|| <= ||H|| + l0 / 2 and
// z_min = exp(-l0 T), from Hermitian eigendecompositions.
ErrorBoundInputs estimate_error_bound_inputs(const OperatorMatrix& h, const JumpOperatorSet& jumps,
                                             double p0, double T, int n_grid);

// Leading-order Poisson tail Pr(#jumps > n) = (gamma_eff T)^(n+1) / (n+1)!,
// squared when `squared` is set (full-rank fidelity plateau).
double poisson_plateau(double gamma_eff, double T, int order, bool squared);

}  // namespace dqj
