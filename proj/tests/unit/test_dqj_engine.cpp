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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "dqj/dqj_engine.hpp"
#include "dqj/errors.hpp"
#include "dqj/metrics.hpp"
#include "dqj/models.hpp"
#include "oracles.hpp"

namespace dqj {
namespace {

DqjOptions options(int order, int n_grid) {
  DqjOptions o;
  o.order = order;
  o.n_grid = n_grid;
  return o;
}

TEST(RunDqj, DarkQubitIsExact) {
  const auto m = build_test_qubit(TestQubitKind::kDark, 0.1);
  for (int n : {1, 4, 16}) {
    const auto r = run_dqj(m.hamiltonian, m.jumps, m.psi0, 1.0, options(1, n));
    EXPECT_NEAR(r.p0(), std::exp(-0.1), 1e-9);
    const auto rho = assemble_density(r.contributions, 1);
    EXPECT_NEAR(rho.back()(0, 0).real(), std::exp(-0.1), 1e-9);
    EXPECT_NEAR(rho.back()(1, 1).real(), 1.0 - std::exp(-0.1), 1e-9);
  }
}

TEST(RunDqj, DarkQubitHigherOrdersAnnihilate) {
  const auto m = build_test_qubit(TestQubitKind::kDark, 0.3);
  const auto r = run_dqj(m.hamiltonian, m.jumps, m.psi0, 1.0, options(3, 4));
  EXPECT_GT(r.annihilated, 0u);
  EXPECT_EQ(r.contributions[2].norm_constant, 0.0);
  EXPECT_EQ(r.contributions[3].norm_constant, 0.0);
  const auto rho = assemble_density(r.contributions, 3);
  EXPECT_NEAR(rho.back()(0, 0).real(), std::exp(-0.3), 1e-9);
}

TEST(RunDqj, NoJumpsGivesPureState) {
  const auto m = build_tfim(2, 3.0, 1.0, 0.0);
  ASSERT_TRUE(m.jumps.empty());
  const auto r = run_dqj(m.hamiltonian, m.jumps, m.psi0, 1.0, options(2, 8));
  EXPECT_NEAR(r.p0(), 1.0, 1e-10);
  EXPECT_EQ(r.trajectories, 1u);
  const auto rho = assemble_density(r.contributions, 2);
  const CMatrix& e = rho.back().entries();
  EXPECT_NEAR((e * e).trace().real(), 1.0, 1e-10);
}

TEST(RunDqj, RecordsOnGridByDefault) {
  const auto m = build_test_qubit(TestQubitKind::kRabi, 0.1, M_PI);
  const auto r = run_dqj(m.hamiltonian, m.jumps, m.psi0, 2.0, options(1, 8));
  ASSERT_EQ(r.record_times.size(), 8u);
  EXPECT_NEAR(r.record_times.front(), 0.25, 1e-15);
  EXPECT_NEAR(r.record_times.back(), 2.0, 1e-15);
}

TEST(RunDqj, RejectsOffLatticeRecordTimes) {
  const auto m = build_test_qubit(TestQubitKind::kRabi, 0.1, M_PI);
  DqjOptions o = options(1, 4);
  o.record_at = {0.3};
  EXPECT_THROW(run_dqj(m.hamiltonian, m.jumps, m.psi0, 1.0, o), InvalidInput);
  o.record_at = {1.5};
  EXPECT_THROW(run_dqj(m.hamiltonian, m.jumps, m.psi0, 1.0, o), InvalidInput);
  EXPECT_THROW(run_dqj(m.hamiltonian, m.jumps, m.psi0, 1.0, options(4, 4)), InvalidOrder);
}

TEST(RunDqj, AssembledStateIsDensityMatrix) {
  const auto m = build_tfim(3, 9.87, 1.57, 0.1);
  DqjOptions o = options(2, 8);
  const auto r = run_dqj(m.hamiltonian, m.jumps, m.psi0, 1.0, o);
  const auto rho = assemble_density(r.contributions, 2);
  for (const auto& s : rho.states()) {
    EXPECT_NEAR(s.trace().real(), 1.0, 1e-12);
    EXPECT_LE(s.hermiticity_error(), 1e-14);
    EXPECT_GE(s.min_eigenvalue(), -1e-8);
  }
}

TEST(RunDqj, NormConstantIsTraceOfWeightedSum) {
  const auto m = build_tfim(2, 3.0, 1.0, 0.2);
  const auto r = run_dqj(m.hamiltonian, m.jumps, m.psi0, 1.0, options(3, 4));
  for (std::size_t n = 1; n < r.contributions.size(); ++n) {
    const auto& c = r.contributions[n];
    EXPECT_NEAR(c.weighted_sum.back().trace().real(), c.norm_constant, 1e-13);
  }
}

TEST(RunDqj, TrajectoryCountMatchesEnumeration) {
  const auto m = build_tfim(2, 3.0, 1.0, 0.2);
  for (int order : {1, 2, 3}) {
    const auto r = run_dqj(m.hamiltonian, m.jumps, m.psi0, 1.0, options(order, 5));
    EXPECT_EQ(r.trajectories, enumerated_trajectories(order, 5, 2));
  }
}

TEST(RunDqj, FirstOrderMassApproachesJumpProbability) {
  const auto m = build_test_qubit(TestQubitKind::kRabi, 0.02, M_PI);
  std::vector<double> gaps;
  for (int n : {16, 32, 64}) {
    const auto r = run_dqj(m.hamiltonian, m.jumps, m.psi0, 1.0, options(1, n));
    gaps.push_back(std::abs(r.contributions[1].norm_constant - (1.0 - r.p0())));
  }
  EXPECT_NEAR(gaps[0] / gaps[1], 4.0, 0.4);
  EXPECT_NEAR(gaps[1] / gaps[2], 4.0, 0.4);
}

TEST(RunDqj, WorkerCountDoesNotChangeBits) {
  const auto m = build_tfim(3, 9.87, 1.57, 0.1);
  DqjOptions o = options(2, 8);
  const auto serial = run_dqj(m.hamiltonian, m.jumps, m.psi0, 1.0, o);
  o.workers = 3;
  const auto threaded = run_dqj(m.hamiltonian, m.jumps, m.psi0, 1.0, o);
  ASSERT_EQ(serial.contributions.size(), threaded.contributions.size());
  for (std::size_t n = 0; n < serial.contributions.size(); ++n) {
    EXPECT_EQ(serial.contributions[n].norm_constant, threaded.contributions[n].norm_constant);
    for (std::size_t i = 0; i < serial.contributions[n].weighted_sum.size(); ++i) {
      EXPECT_TRUE(serial.contributions[n].weighted_sum[i] ==
                  threaded.contributions[n].weighted_sum[i]);
    }
  }
}

TEST(RunDqj, ReusedSegmentsMatchFreshReplay) {
  const auto m = build_tfim(2, 3.0, 1.0, 0.2);
  struct Seen {
    TrajectorySpec spec;
    CVector state;
  };
  std::vector<Seen> seen;
  DqjOptions o = options(3, 3);
  o.observer = [&](const TrajectorySpec& s, const StateVector& psi, double) {
    seen.push_back({s, psi.amplitudes()});
  };
  const auto r = run_dqj(m.hamiltonian, m.jumps, m.psi0, 1.0, o);
  ASSERT_EQ(seen.size() + 1, r.trajectories);
  const double tick = 1.0 / 3 / kTicksPerInterval;
  double worst = 0.0;
  for (const auto& s : seen) {
    std::vector<long> ticks;
    for (double t : s.spec.jump_times) ticks.push_back(std::lround(t / tick));
    const CVector fresh = testing::replay_trajectory(m.hamiltonian, m.jumps, m.psi0,
                                                     3 * kTicksPerInterval, tick,
                                                     r.substeps_per_tick, ticks,
                                                     s.spec.jump_operators);
    worst = std::max(worst, (fresh - s.state).cwiseAbs().maxCoeff());
  }
  EXPECT_LE(worst, 1e-13);
}

TEST(RunDqj, FirstOrderConvergesToExactIntegral) {
  const auto m = build_test_qubit(TestQubitKind::kRabi, 0.1, M_PI);
  const CMatrix exact =
      testing::exact_first_order(m.hamiltonian, m.jumps, m.psi0, 1.0, 64).assembled();
  std::vector<double> ns, errs;
  for (int n : {8, 16, 32}) {
    DqjOptions o = options(1, n);
    o.propagation.max_step = 1.0 / 2048;
    const auto r = run_dqj(m.hamiltonian, m.jumps, m.psi0, 1.0, o);
    ns.push_back(n);
    errs.push_back(spectral_norm_distance(assemble_density(r.contributions, 1).back().entries(),
                                          exact));
  }
  EXPECT_NEAR(fit_loglog_slope(ns, errs).slope, -2.0, 0.3);
}

TEST(AssembleDensity, ZeroJumpLimit) {
  JumpOrderContribution c0{0, {1.0}, {CMatrix::Identity(2, 2) * 0.5}, 1.0, 1.0};
  JumpOrderContribution c1{1, {1.0}, {CMatrix::Zero(2, 2)}, 0.0, 0.0};
  const std::vector<JumpOrderContribution> cs{c0, c1};
  const auto rho = assemble_density(cs, 1);
  EXPECT_NEAR(rho.back()(0, 0).real(), 0.5, 1e-15);
}

TEST(AssembleDensity, DegenerateNormalization) {
  CMatrix e0 = CMatrix::Zero(2, 2);
  e0(0, 0) = 0.5;
  JumpOrderContribution c0{0, {1.0}, {e0}, 0.5, 0.5};
  JumpOrderContribution c1{1, {1.0}, {CMatrix::Zero(2, 2)}, 0.0, 0.0};
  const std::vector<JumpOrderContribution> cs{c0, c1};
  EXPECT_THROW(assemble_density(cs, 1), DegenerateNormalization);
  EXPECT_THROW(assemble_density(cs, 2), InvalidInput);
}

TEST(ErrorBound, DampedQubitExample) {
  const auto m = build_test_qubit(TestQubitKind::kDark, 0.1);
  const auto in = estimate_error_bound_inputs(m.hamiltonian, m.jumps, std::exp(-0.1), 1.0, 10);
  EXPECT_NEAR(in.l0, 0.1, 1e-14);
  EXPECT_NEAR(in.generator_norm_bound, 0.2, 1e-14);
  const double bound = error_bound_order1(in);
  EXPECT_NEAR(bound, (1 - std::exp(-0.1)) * 3 * 0.1 * 0.04 / 800, 1e-18);
  EXPECT_NEAR(bound, 1.43e-6, 0.01e-6);
}

TEST(ErrorBound, QuartersWhenGridDoubles) {
  ErrorBoundInputs in{0.3, 2.5, 0.7, 0.6, 1.2, 12};
  const double coarse = error_bound_order1(in);
  in.n_grid = 24;
  EXPECT_DOUBLE_EQ(coarse / error_bound_order1(in), 4.0);
  in.p0 = 1.0;
  EXPECT_EQ(error_bound_order1(in), 0.0);
}

TEST(PoissonPlateau, Examples) {
  EXPECT_NEAR(poisson_plateau(0.15, 1.0, 2, true), 3.16e-7, 0.01e-7);
  EXPECT_NEAR(poisson_plateau(0.15, 1.0, 2, false), 5.625e-4, 1e-15);
  EXPECT_EQ(poisson_plateau(0.0, 1.0, 1, true), 0.0);
}

}  // namespace
}  // namespace dqj
