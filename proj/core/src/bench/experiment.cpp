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

#include "dqj/bench/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "dqj/dqj_engine.hpp"
#include "dqj/errors.hpp"
#include "dqj/jump_grid.hpp"
#include "dqj/metrics.hpp"
#include "dqj/sqj_engine.hpp"
#include "dqj/version.hpp"

namespace dqj::bench {
namespace {

constexpr int kDefaultIntervals = 64;
constexpr double kTimeTol = 1e-10;

double method_step(const ExperimentConfig& cfg) {
  double step = 0.0;
  if (cfg.method.kind == MethodKind::kDqj) {
    step = cfg.T / cfg.method.n_grid / cfg.propagation.substep_div;
  } else {
    const int k = cfg.recording.intervals > 0 ? cfg.recording.intervals : kDefaultIntervals;
    step = cfg.T / k / cfg.propagation.substep_div;
  }
  if (cfg.propagation.max_step) step = std::min(step, *cfg.propagation.max_step);
  return step;
}

LindbladSystem lindblad_system(const ModelInstance& m) {
  return LindbladSystem{m.hamiltonian, m.jumps, DensityMatrix::pure(m.psi0)};
}

const OperatorMatrix& spectrum_observable(const ModelInstance& m) {
  const auto it = m.metadata.find("spectrum_observable");
  if (it == m.metadata.end()) throw ConfigError("model " + m.label + " has no spectrum observable");
  return m.observable(it->second);
}

DensityMatrixSeries run_method(const ExperimentConfig& cfg, const ModelInstance& m,
                               const std::vector<double>& times, std::uint64_t seed) {
  switch (cfg.method.kind) {
    case MethodKind::kDqj: {
      DqjOptions opt;
      opt.order = cfg.method.order;
      opt.n_grid = cfg.method.n_grid;
      opt.propagation.max_step = method_step(cfg);
      opt.record_at = times;
      opt.workers = cfg.method.workers;
      const DqjResult r = run_dqj(m.hamiltonian, m.jumps, m.psi0, cfg.T, opt);
      return assemble_density(r.contributions, cfg.method.order);
    }
    case MethodKind::kSqj: {
      SqjConfig sc;
      sc.n_traj = cfg.method.n_traj;
      sc.seed = seed;
      sc.propagation.max_step = method_step(cfg);
      sc.workers = cfg.method.workers;
      return assemble_sqj(run_sqj(m.hamiltonian, m.jumps, m.psi0, cfg.T, sc, times));
    }
    case MethodKind::kLindblad:
      return integrate_master(lindblad_system(m), cfg.T, times, method_step(cfg));
  }
  throw ConfigError("unknown method");
}

double evaluate_metric(const ExperimentConfig& cfg, const ModelInstance& m,
                       const DensityMatrixSeries& approx, const DensityMatrixSeries& ref) {
  const auto ref_at = [&](double t) -> const DensityMatrix& {
    return ref[ref.index_of(t, kTimeTol)];
  };
  if (cfg.metric == "fidelity_vs_lindblad") {
    const double t = approx.times().back();
    return infidelity(ref_at(t), approx.back());
  }
  const std::string observable_prefix = "observable:";
  if (cfg.metric.rfind(observable_prefix, 0) == 0) {
    const OperatorMatrix& op = m.observable(cfg.metric.substr(observable_prefix.size()));
    const ObservableSeries a = observable_trace(approx, op);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.times.size(); ++i) {
      const Complex r = (ref_at(a.times[i]).entries() * op.entries()).trace();
      worst = std::max(worst, std::abs(a.values[i] - r));
    }
    return worst;
  }
  const double omega = std::stod(cfg.metric.substr(std::string("spectrum:").size()));
  const OperatorMatrix& op = spectrum_observable(m);
  const Complex initial = expectation(m.psi0, op);
  ObservableSeries a{{0.0}, {initial}};
  ObservableSeries b{{0.0}, {initial}};
  const ObservableSeries traced = observable_trace(approx, op);
  for (std::size_t i = 0; i < traced.times.size(); ++i) {
    a.times.push_back(traced.times[i]);
    a.values.push_back(traced.values[i]);
    b.times.push_back(traced.times[i]);
    b.values.push_back((ref_at(traced.times[i]).entries() * op.entries()).trace());
  }
  return std::abs(std::abs(spectrum(a, omega)) - std::abs(spectrum(b, omega)));
}

}  // namespace

ModelInstance build_model(const ModelConfig& cfg) {
  ModelInstance m;
  switch (cfg.kind) {
    case ModelKind::kTfim:
      m = build_tfim(cfg.n_qubits, cfg.g, cfg.j_coupling, cfg.gamma);
      m.metadata["spectrum_observable"] = "magnetization";
      break;
    case ModelKind::kKerr:
      m = build_kerr(cfg.n_fock, cfg.omega0, cfg.omega_kerr, cfg.gamma,
                     Complex(cfg.alpha_re, cfg.alpha_im));
      m.metadata["spectrum_observable"] = "X";
      break;
    case ModelKind::kTestQubit:
      if (cfg.variant == "dark") {
        m = build_test_qubit(TestQubitKind::kDark, cfg.gamma);
      } else if (cfg.variant == "rabi") {
        m = build_test_qubit(TestQubitKind::kRabi, cfg.gamma, cfg.omega);
      } else {
        throw ConfigError("model.variant: expected dark or rabi");
      }
      m.metadata["spectrum_observable"] = "sx";
      break;
  }
  return m;
}

std::vector<double> planned_record_times(const ExperimentConfig& cfg) {
  if (cfg.recording.policy == RecordingPolicy::kFinal) return {cfg.T};
  int k = cfg.recording.intervals;
  if (k == 0) k = cfg.method.kind == MethodKind::kDqj ? cfg.method.n_grid : kDefaultIntervals;
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) times.push_back(i == k ? cfg.T : cfg.T * i / k);
  return times;
}

std::string ReferenceCache::key(const ExperimentConfig& cfg) {
  ExperimentConfig stripped;
  stripped.model = cfg.model;
  stripped.T = cfg.T;
  stripped.propagation.reference_step = cfg.propagation.reference_step;
  return serialize_config(stripped);
}

ReferenceCache::Entry& ReferenceCache::entry(const ExperimentConfig& cfg) {
  return entries_[key(cfg)];
}

void ReferenceCache::plan(const ExperimentConfig& cfg) {
  Entry& e = entry(cfg);
  const std::vector<double> times = planned_record_times(cfg);
  e.times.insert(e.times.end(), times.begin(), times.end());
}

const DensityMatrixSeries& ReferenceCache::reference(const ExperimentConfig& cfg) {
  Entry& e = entry(cfg);
  const std::vector<double> wanted = planned_record_times(cfg);
  if (e.ready) {
    bool covered = true;
    for (double t : wanted) {
      try {
        e.series.index_of(t, kTimeTol);
      } catch (const InvalidInput&) {
        covered = false;
        break;
      }
    }
    if (covered) return e.series;
  }
  e.times.insert(e.times.end(), wanted.begin(), wanted.end());
  std::sort(e.times.begin(), e.times.end());
  std::vector<double> unique;
  for (double t : e.times) {
    if (unique.empty() || t - unique.back() > kTimeTol) unique.push_back(t);
  }
  e.times = unique;
  const ModelInstance m = build_model(cfg.model);
  e.series = integrate_master(lindblad_system(m), cfg.T, e.times, cfg.propagation.reference_step);
  e.ready = true;
  ++invocations_;
  return e.series;
}

std::vector<ExperimentConfig> expand_sweep(const ExperimentConfig& cfg) {
  if (!cfg.sweep) return {cfg};
  std::vector<ExperimentConfig> out;
  for (double v : cfg.sweep->values) {
    ExperimentConfig point = cfg;
    point.sweep.reset();
    switch (cfg.sweep->axis) {
      case SweepAxis::kNGrid: point.method.n_grid = static_cast<int>(v); break;
      case SweepAxis::kNTraj: point.method.n_traj = static_cast<std::uint64_t>(v); break;
      case SweepAxis::kGamma: point.model.gamma = v; break;
      case SweepAxis::kNQubits: point.model.n_qubits = static_cast<int>(v); break;
    }
    point.validate();
    out.push_back(std::move(point));
  }
  return out;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, ReferenceCache& cache) {
  cfg.validate();
  if (cfg.sweep) return run_sweep(cfg, cache);
  const ModelInstance m = build_model(cfg.model);
  const std::vector<double> times = planned_record_times(cfg);
  const DensityMatrixSeries& ref = cache.reference(cfg);

  ResultRow row;
  row.method = to_string(cfg.method.kind);
  row.model = m.label;
  row.gamma = cfg.model.gamma;
  row.T = cfg.T;
  row.metric = cfg.metric;
  row.version = kVersion;

  const int repeats = cfg.method.kind == MethodKind::kSqj ? cfg.method.repeats : 1;
  std::vector<double> values;
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < repeats; ++r) {
    const std::uint64_t seed = cfg.method.seed + static_cast<std::uint64_t>(r);
    const DensityMatrixSeries approx = run_method(cfg, m, times, seed);
    values.push_back(evaluate_metric(cfg, m, approx, ref));
  }
  row.wallclock_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  row.value = mean;
  if (values.size() > 1) {
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size() - 1);
    row.stderr_value = std::sqrt(var / static_cast<double>(values.size()));
  }

  switch (cfg.method.kind) {
    case MethodKind::kDqj:
      row.order = cfg.method.order;
      row.n_grid = cfg.method.n_grid;
      row.n_traj = m.jumps.empty()
                       ? 1
                       : count_trajectories(cfg.method.order, cfg.method.n_grid,
                                            m.jumps.size());
      break;
    case MethodKind::kSqj:
      row.n_traj = cfg.method.n_traj + 1;
      row.seed = cfg.method.seed;
      break;
    case MethodKind::kLindblad:
      break;
  }
  return {row};
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
  ReferenceCache cache;
  return run_experiment(cfg, cache);
}

std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg, ReferenceCache& cache) {
  cfg.validate();
  const std::vector<ExperimentConfig> points = expand_sweep(cfg);
  for (const auto& p : points) cache.plan(p);
  std::vector<ResultRow> rows;
  for (const auto& p : points) {
    std::vector<ResultRow> r = run_experiment(p, cache);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  return rows;
}

std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg) {
  ReferenceCache cache;
  return run_sweep(cfg, cache);
}

}  // namespace dqj::bench
