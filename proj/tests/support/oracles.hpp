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

#include "dqj/dqj_engine.hpp"
#include "dqj/quantum_state.hpp"

namespace dqj::testing {

CMatrix expm(const CMatrix& a);

// exp(-i H_eff t)
CMatrix no_jump_propagator(const OperatorMatrix& h, const JumpOperatorSet& jumps, double t);

// rho(T) from the exponential of the vectorized Lindblad superoperator.
CMatrix exact_master_solution(const OperatorMatrix& h, const JumpOperatorSet& jumps,
                              const CMatrix& rho0, double T);

// Nodes and weights of the n-point Gauss-Legendre rule on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

// First-order assembly with the jump-time integral evaluated by composite
// Gauss-Legendre quadrature and exact propagators:
// p0 rho0(T) + (1 - p0) / N1 * int_0^T sum_L p1(tau, L) rho_{tau,L}(T) dtau.
struct FirstOrderIntegral {
  double p0 = 0.0;
  CMatrix rho0;
  CMatrix weighted;  // int sum_L p1 rho dtau
  double norm = 0.0; // int sum_L p1 dtau
  CMatrix assembled() const;
};
FirstOrderIntegral exact_first_order(const OperatorMatrix& h, const JumpOperatorSet& jumps,
                                     const StateVector& psi0, double T, int panels,
                                     int nodes_per_panel = 8);

// Final unnormalized state of one trajectory integrated from t = 0 with
// plain RK4 steps of tick / substeps, jumping and renormalizing at each
// jump tick.
CVector replay_trajectory(const OperatorMatrix& h, const JumpOperatorSet& jumps,
                          const StateVector& psi0, long final_tick, double tick, long substeps,
                          const std::vector<long>& jump_ticks,
                          const std::vector<std::size_t>& jump_ops);

// Kolmogorov-Smirnov statistic of `samples` against the CDF `cdf`.
template <class Cdf>
double ks_statistic(std::vector<double> samples, Cdf cdf);

}  // namespace dqj::testing

#include <algorithm>
#include <cmath>

template <class Cdf>
double dqj::testing::ks_statistic(std::vector<double> samples, Cdf cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n),
                  std::abs(static_cast<double>(i + 1) / n - f)});
  }
  return d;
}
