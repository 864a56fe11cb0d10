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
#include <map>
#include <string>
#include <vector>

#include "dqj/bench/config.hpp"
#include "dqj/lindblad.hpp"
#include "dqj/models.hpp"

namespace dqj::bench {

struct ResultRow {
  std::string method;
  int order = 0;
  int n_grid = 0;
  std::uint64_t n_traj = 0;
  std::string model;
  double gamma = 0.0;
  double T = 0.0;
  std::string metric;
  double value = 0.0;
  double stderr_value = 0.0;
  double wallclock_s = 0.0;
  std::uint64_t seed = 0;
  std::string version;

  bool operator==(const ResultRow&) const = default;
};

ModelInstance build_model(const ModelConfig& cfg);

// Recording times the configured method will produce, in increasing order.
std::vector<double> planned_record_times(const ExperimentConfig& cfg);

// Master-equation references keyed by model, T and step. Times announced with
// plan() before the first lookup are integrated together in one pass.
class ReferenceCache {
 public:
  void plan(const ExperimentConfig& cfg);
  const DensityMatrixSeries& reference(const ExperimentConfig& cfg);
  // Number of master-equation integrations performed so far.
  std::size_t invocations() const { return invocations_; }

 private:
  struct Entry {
    std::vector<double> times;
    DensityMatrixSeries series;
    bool ready = false;
  };
  static std::string key(const ExperimentConfig& cfg);
  Entry& entry(const ExperimentConfig& cfg);

  std::map<std::string, Entry> entries_;
  std::size_t invocations_ = 0;
};

// Expands the sweep block into one config per value; no sweep yields {cfg}.
std::vector<ExperimentConfig> expand_sweep(const ExperimentConfig& cfg);

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, ReferenceCache& cache);
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);
std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg, ReferenceCache& cache);
std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg);

}  // namespace dqj::bench
