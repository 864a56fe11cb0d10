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

#include <benchmark/benchmark.h>

#include "dqj/lindblad.hpp"
#include "dqj/models.hpp"
#include "dqj/propagation.hpp"

namespace {

void BM_Rk4Step(benchmark::State& state) {
  const auto m = dqj::build_tfim(static_cast<int>(state.range(0)), 9.87, 1.57, 0.03);
  const auto heff = dqj::build_effective_hamiltonian(m.hamiltonian, m.jumps);
  dqj::CVector psi = m.psi0.amplitudes();
  for (auto _ : state) {
    psi = dqj::rk4_step(heff.generator(), psi, 1e-4);
    benchmark::DoNotOptimize(psi.data());
  }
}
BENCHMARK(BM_Rk4Step)->DenseRange(2, 5);

void BM_TransferMatrix(benchmark::State& state) {
  const auto m = dqj::build_tfim(5, 9.87, 1.57, 0.03);
  const auto heff = dqj::build_effective_hamiltonian(m.hamiltonian, m.jumps);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dqj::rk4_transfer_matrix(heff.generator(), 1.0, state.range(0)));
  }
}
BENCHMARK(BM_TransferMatrix)->RangeMultiplier(8)->Range(8, 4096);

void BM_IntegrateMaster(benchmark::State& state) {
  const auto m = dqj::build_tfim(static_cast<int>(state.range(0)), 9.87, 1.57, 0.03);
  const dqj::LindbladSystem sys{m.hamiltonian, m.jumps, dqj::DensityMatrix::pure(m.psi0)};
  const std::vector<double> at{1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dqj::integrate_master(sys, 1.0, at, 1e-3));
  }
}
BENCHMARK(BM_IntegrateMaster)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace
