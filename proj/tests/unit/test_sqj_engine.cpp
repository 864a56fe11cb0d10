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

#include "dqj/errors.hpp"
#include "dqj/models.hpp"
#include "dqj/propagation.hpp"
#include "dqj/sqj_engine.hpp"

namespace dqj {
namespace {

SqjConfig config(std::uint64_t n_traj, std::uint64_t seed) {
  SqjConfig c;
  c.n_traj = n_traj;
  c.seed = seed;
  c.propagation.max_step = 1e-2;
  return c;
}

TEST(FindJumpTime, HalfLife) {
  const auto m = build_test_qubit(TestQubitKind::kDark, 1.0);
  const auto heff = build_effective_hamiltonian(m.hamiltonian, m.jumps);
  const auto r = find_jump_time(m.psi0, 0.0, 2.0, 0.5, heff, config(1, 0));
  ASSERT_TRUE(r.found);
  EXPECT_NEAR(r.time, std::log(2.0), 1e-6);
  EXPECT_NEAR(squared_norm(r.state), 0.5, 1e-6);
}

TEST(FindJumpTime, ThresholdAtStart) {
  const auto m = build_test_qubit(TestQubitKind::kDark, 1.0);
  const auto heff = build_effective_hamiltonian(m.hamiltonian, m.jumps);
  const auto r = find_jump_time(m.psi0, 0.25, 2.0, 1.0, heff, config(1, 0));
  ASSERT_TRUE(r.found);
  EXPECT_NEAR(r.time, 0.25, 1e-12);
}

TEST(FindJumpTime, NoCrossing) {
  const auto m = build_test_qubit(TestQubitKind::kDark, 0.1);
  const auto heff = build_effective_hamiltonian(m.hamiltonian, m.jumps);
  const auto r = find_jump_time(m.psi0, 0.0, 1.0, 0.5, heff, config(1, 0));
  EXPECT_FALSE(r.found);
  EXPECT_NEAR(squared_norm(r.state), std::exp(-0.1), 1e-9);
}

TEST(ChooseJumpOperator, SingleOperator) {
  const JumpOperatorSet jumps({sigma_minus()});
  CounterRng rng(1, 0);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(choose_jump_operator(StateVector::basis(2, 0), jumps, rng), 0u);
}

TEST(ChooseJumpOperator, WeightedFrequency) {
  const JumpOperatorSet jumps({std::sqrt(0.3) * sigma_minus(), std::sqrt(0.1) * sigma_minus()});
  CounterRng rng(42, 0);
  int zeros = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) zeros += choose_jump_operator(StateVector::basis(2, 0), jumps, rng) == 0;
  EXPECT_NEAR(static_cast<double>(zeros) / n, 0.75, 0.01);
}

TEST(ChooseJumpOperator, ZeroWeightNeverChosen) {
  const JumpOperatorSet jumps({std::sqrt(0.2) * sigma_minus(), sigma_plus()});
  CounterRng rng(3, 0);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(choose_jump_operator(StateVector::basis(2, 0), jumps, rng), 0u);
  EXPECT_THROW(choose_jump_operator(StateVector::basis(2, 1), JumpOperatorSet({sigma_minus()}), rng),
               AllAnnihilated);
}

TEST(RunSqj, DarkQubitHasOneJumpEach) {
  const auto m = build_test_qubit(TestQubitKind::kDark, 0.1);
  const auto r = run_sqj(m.hamiltonian, m.jumps, m.psi0, 1.0, config(200, 5));
  EXPECT_NEAR(r.p0, std::exp(-0.1), 1e-9);
  for (const auto& t : r.trajectories) {
    ASSERT_EQ(t.jump_events.size(), 1u);
    EXPECT_GE(t.jump_events[0].time, 0.0);
    EXPECT_LE(t.jump_events[0].time, 1.0);
    EXPECT_NEAR(std::abs(t.recorded_states.back()[1]), 1.0, 1e-12);
  }
  for (std::uint64_t n : {1, 7}) {
    const auto rho = assemble_sqj(run_sqj(m.hamiltonian, m.jumps, m.psi0, 1.0, config(n, 5)));
    EXPECT_NEAR(rho.back()(0, 0).real(), std::exp(-0.1), 1e-9);
  }
}

TEST(RunSqj, SeedDeterminesResult) {
  const auto m = build_tfim(2, 3.0, 1.0, 0.3);
  const auto a = assemble_sqj(run_sqj(m.hamiltonian, m.jumps, m.psi0, 1.0, config(50, 11)));
  const auto b = assemble_sqj(run_sqj(m.hamiltonian, m.jumps, m.psi0, 1.0, config(50, 11)));
  const auto c = assemble_sqj(run_sqj(m.hamiltonian, m.jumps, m.psi0, 1.0, config(50, 12)));
  EXPECT_TRUE(a.back().entries() == b.back().entries());
  EXPECT_FALSE(a.back().entries() == c.back().entries());
}

TEST(RunSqj, WorkersDoNotChangeBits) {
  const auto m = build_tfim(2, 3.0, 1.0, 0.3);
  SqjConfig cfg = config(40, 2);
  const auto a = assemble_sqj(run_sqj(m.hamiltonian, m.jumps, m.psi0, 1.0, cfg));
  cfg.workers = 3;
  const auto b = assemble_sqj(run_sqj(m.hamiltonian, m.jumps, m.psi0, 1.0, cfg));
  EXPECT_TRUE(a.back().entries() == b.back().entries());
}

TEST(RunSqj, RecordsRequestedTimes) {
  const auto m = build_test_qubit(TestQubitKind::kRabi, 0.3, M_PI);
  const auto r = run_sqj(m.hamiltonian, m.jumps, m.psi0, 1.0, config(20, 1), {0.25, 0.5, 1.0});
  EXPECT_EQ(r.record_times.size(), 3u);
  for (const auto& t : r.trajectories) {
    ASSERT_EQ(t.recorded_states.size(), 3u);
    for (const auto& s : t.recorded_states) EXPECT_NEAR(squared_norm(s), 1.0, 1e-12);
  }
  const auto rho = assemble_sqj(r);
  for (const auto& s : rho.states()) EXPECT_NEAR(s.trace().real(), 1.0, 1e-12);
}

TEST(RunSqj, RejectsInvalidSetups) {
  const auto m = build_test_qubit(TestQubitKind::kDark, 0.1);
  EXPECT_THROW(run_sqj(m.hamiltonian, JumpOperatorSet(), m.psi0, 1.0, config(10, 0)), ConfigError);
  const auto still = build_test_qubit(TestQubitKind::kDark, 0.0);
  EXPECT_THROW(run_sqj(still.hamiltonian, still.jumps, still.psi0, 1.0, config(10, 0)),
               InvalidInput);
  EXPECT_THROW(run_sqj(m.hamiltonian, m.jumps, m.psi0, 1.0, config(10, 0), {1.5}), InvalidInput);
  EXPECT_THROW(run_sqj(m.hamiltonian, m.jumps, StateVector::basis(2, 1), 1.0, config(10, 0)),
               DegenerateNormalization);
  SqjConfig bad = config(10, 0);
  bad.bisection_tol = 1e-3;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(AssembleSqj, IdenticalGroundTrajectories) {
  const StateVector g = StateVector::basis(2, 1);
  const DensityMatrixSeries zero({1.0}, {DensityMatrix::pure(StateVector::basis(2, 0))});
  std::vector<SqjTrajectory> trajs(5, SqjTrajectory{{{0.5, 0}}, {g}, 0});
  const auto rho = assemble_sqj(0.7, zero, trajs, {1.0});
  EXPECT_NEAR(rho.back()(0, 0).real(), 0.7, 1e-15);
  EXPECT_NEAR(rho.back()(1, 1).real(), 0.3, 1e-15);
}

TEST(CounterRng, StreamsAreIndependentOfOrder) {
  CounterRng a(9, 4);
  CounterRng b(9, 4);
  CounterRng c(9, 5);
  const auto first = a();
  EXPECT_EQ(first, b());
  EXPECT_NE(first, c());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace dqj
