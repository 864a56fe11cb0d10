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

#include "dqj/dqj_engine.hpp"
#include "dqj/models.hpp"
#include "dqj/sqj_engine.hpp"

namespace {

void BM_DqjTfim(benchmark::State& state) {
  const auto m = dqj::build_tfim(3, 9.87, 1.57, 0.03);
  dqj::DqjOptions opt;
  opt.order = static_cast<int>(state.range(0));
  opt.n_grid = static_cast<int>(state.range(1));
  opt.record_at = {1.0};
  std::uint64_t traj = 0;
  for (auto _ : state) {
    const auto r = dqj::run_dqj(m.hamiltonian, m.jumps, m.psi0, 1.0, opt);
    traj = r.trajectories;
    benchmark::DoNotOptimize(r.contributions.data());
  }
  state.counters["trajectories"] = static_cast<double>(traj);
  state.counters["traj_per_s"] =
      benchmark::Counter(static_cast<double>(traj), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_DqjTfim)
    ->Args({1, 64})
    ->Args({1, 512})
    ->Args({2, 32})
    ->Args({2, 128})
    ->Args({3, 16})
    ->Unit(benchmark::kMillisecond);

void BM_SqjTfim(benchmark::State& state) {
  const auto m = dqj::build_tfim(3, 9.87, 1.57, 0.03);
  dqj::SqjConfig cfg;
  cfg.n_traj = static_cast<std::uint64_t>(state.range(0));
  cfg.seed = 1;
  for (auto _ : state) {
    const auto r = dqj::run_sqj(m.hamiltonian, m.jumps, m.psi0, 1.0, cfg);
    benchmark::DoNotOptimize(r.trajectories.data());
  }
  state.counters["traj_per_s"] = benchmark::Counter(static_cast<double>(state.range(0)),
                                                    benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_SqjTfim)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
