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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dqj::bench {

enum class ModelKind { kTfim, kKerr, kTestQubit };
enum class MethodKind { kDqj, kSqj, kLindblad };
enum class RecordingPolicy { kFinal, kGrid };
enum class OutputFormat { kCsv, kJson };
enum class SweepAxis { kNGrid, kNTraj, kGamma, kNQubits };

struct ModelConfig {
  ModelKind kind = ModelKind::kTestQubit;
  double gamma = 0.05;
  // tfim
  int n_qubits = 5;
  double g = 9.869604401089358;  // 2 pi J
  double j_coupling = 1.5707963267948966;
  // kerr
  int n_fock = 6;
  double omega0 = 75.39822368615503;
  double omega_kerr = 18.84955592153876;
  double alpha_re = 1.0606601717798212;
  double alpha_im = 0.0;
  // test_qubit
  std::string variant = "rabi";
  double omega = 3.141592653589793;

  bool operator==(const ModelConfig&) const = default;
};

struct MethodConfig {
  MethodKind kind = MethodKind::kDqj;
  int order = 1;
  int n_grid = 16;
  std::uint64_t n_traj = 1000;
  std::uint64_t seed = 0;
  int repeats = 16;
  unsigned workers = 1;

  bool operator==(const MethodConfig&) const = default;
};

struct RecordingConfig {
  RecordingPolicy policy = RecordingPolicy::kFinal;
  // Grid recording at T * {1..intervals} / intervals. 0 means dt * {1..n_grid}
  // for dqj and 64 intervals otherwise.
  int intervals = 0;

  bool operator==(const RecordingConfig&) const = default;
};

struct PropagationSettings {
  int substep_div = 20;             // h <= dt / substep_div
  std::optional<double> max_step;   // absolute cap on h
  double reference_step = 1e-4;     // master-equation step

  bool operator==(const PropagationSettings&) const = default;
};

struct OutputConfig {
  std::string path;  // empty writes to stdout
  OutputFormat format = OutputFormat::kCsv;

  bool operator==(const OutputConfig&) const = default;
};

struct SweepConfig {
  SweepAxis axis = SweepAxis::kNGrid;
  std::vector<double> values;

  bool operator==(const SweepConfig&) const = default;
};

struct ExperimentConfig {
  ModelConfig model;
  MethodConfig method;
  double T = 1.0;
  RecordingConfig recording;
  PropagationSettings propagation;
  // fidelity_vs_lindblad | observable:<name> | spectrum:<omega>
  std::string metric = "fidelity_vs_lindblad";
  OutputConfig output;
  std::optional<SweepConfig> sweep;

  bool operator==(const ExperimentConfig&) const = default;
  // Range checks; throws ConfigError naming the offending field.
  void validate() const;
};

// Throws ConfigError for malformed JSON, unknown keys or invalid values.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

std::string to_string(ModelKind kind);
std::string to_string(MethodKind kind);
std::string to_string(SweepAxis axis);
OutputFormat parse_format(std::string_view name);

}  // namespace dqj::bench
