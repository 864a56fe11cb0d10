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

#include "dqj/bench/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "dqj/errors.hpp"
#include "json.hpp"

namespace dqj::bench {
namespace {

using json = nlohmann::json;

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  bool ok = true;
  if constexpr (std::is_same_v<T, double>) {
    ok = it->is_number();
  } else if constexpr (std::is_integral_v<T>) {
    ok = std::is_unsigned_v<T> ? it->is_number_unsigned() : it->is_number_integer();
  } else if constexpr (std::is_same_v<T, std::string>) {
    ok = it->is_string();
  }
  if (!ok) throw ConfigError(where + "." + key + ": wrong type");
  out = it->template get<T>();
}

const json& require_block(const json& root, const char* key) {
  const auto it = root.find(key);
  if (it == root.end()) throw ConfigError(std::string("missing block '") + key + "'");
  return *it;
}

ModelConfig parse_model(const json& j) {
  ModelConfig m;
  std::string kind;
  if (!j.is_object()) throw ConfigError("model: expected an object");
  read(j, "kind", kind, "model");
  if (kind == "tfim") {
    m.kind = ModelKind::kTfim;
    m.gamma = 0.03;
    check_keys(j, {"kind", "n_qubits", "g", "J", "gamma"}, "model");
    read(j, "n_qubits", m.n_qubits, "model");
    read(j, "g", m.g, "model");
    read(j, "J", m.j_coupling, "model");
  } else if (kind == "kerr") {
    m.kind = ModelKind::kKerr;
    m.gamma = 0.32;
    check_keys(j, {"kind", "n_fock", "omega0", "omega_kerr", "gamma", "alpha"}, "model");
    read(j, "n_fock", m.n_fock, "model");
    read(j, "omega0", m.omega0, "model");
    read(j, "omega_kerr", m.omega_kerr, "model");
    if (const auto it = j.find("alpha"); it != j.end()) {
      if (it->is_number()) {
        m.alpha_re = it->get<double>();
        m.alpha_im = 0.0;
      } else if (it->is_array() && it->size() == 2 && (*it)[0].is_number() &&
                 (*it)[1].is_number()) {
        m.alpha_re = (*it)[0].get<double>();
        m.alpha_im = (*it)[1].get<double>();
      } else {
        throw ConfigError("model.alpha: expected a number or [re, im]");
      }
    }
  } else if (kind == "test_qubit") {
    m.kind = ModelKind::kTestQubit;
    check_keys(j, {"kind", "variant", "gamma", "omega"}, "model");
    read(j, "variant", m.variant, "model");
    read(j, "omega", m.omega, "model");
  } else {
    throw ConfigError("model.kind: expected tfim, kerr or test_qubit, got '" + kind + "'");
  }
  read(j, "gamma", m.gamma, "model");
  return m;
}

MethodConfig parse_method(const json& j) {
  MethodConfig m;
  std::string kind;
  if (!j.is_object()) throw ConfigError("method: expected an object");
  read(j, "kind", kind, "method");
  if (kind == "dqj") {
    m.kind = MethodKind::kDqj;
    check_keys(j, {"kind", "order", "n_grid", "workers"}, "method");
    read(j, "order", m.order, "method");
    read(j, "n_grid", m.n_grid, "method");
  } else if (kind == "sqj") {
    m.kind = MethodKind::kSqj;
    check_keys(j, {"kind", "n_traj", "seed", "repeats", "workers"}, "method");
    read(j, "n_traj", m.n_traj, "method");
    read(j, "seed", m.seed, "method");
    read(j, "repeats", m.repeats, "method");
  } else if (kind == "lindblad") {
    m.kind = MethodKind::kLindblad;
    check_keys(j, {"kind"}, "method");
  } else {
    throw ConfigError("method.kind: expected dqj, sqj or lindblad, got '" + kind + "'");
  }
  read(j, "workers", m.workers, "method");
  return m;
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "n_grid") return SweepAxis::kNGrid;
  if (name == "n_traj") return SweepAxis::kNTraj;
  if (name == "gamma") return SweepAxis::kGamma;
  if (name == "n_qubits") return SweepAxis::kNQubits;
  throw ConfigError("sweep.axis: expected n_grid, n_traj, gamma or n_qubits, got '" + name + "'");
}

bool is_positive_integer(double v) { return v >= 1.0 && v == std::floor(v) && v < 9.0e15; }

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kTfim: return "tfim";
    case ModelKind::kKerr: return "kerr";
    case ModelKind::kTestQubit: return "test_qubit";
  }
  return "?";
}

std::string to_string(MethodKind kind) {
  switch (kind) {
    case MethodKind::kDqj: return "dqj";
    case MethodKind::kSqj: return "sqj";
    case MethodKind::kLindblad: return "lindblad";
  }
  return "?";
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kNGrid: return "n_grid";
    case SweepAxis::kNTraj: return "n_traj";
    case SweepAxis::kGamma: return "gamma";
    case SweepAxis::kNQubits: return "n_qubits";
  }
  return "?";
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw ConfigError("output.format: expected csv or json, got '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("T: must be positive and finite");
  if (!(model.gamma >= 0.0) || !std::isfinite(model.gamma)) {
    throw ConfigError("model.gamma: must be >= 0");
  }
  switch (model.kind) {
    case ModelKind::kTfim:
      if (model.n_qubits < 1 || model.n_qubits > 10) {
        throw ConfigError("model.n_qubits: must lie in 1..10");
      }
      break;
    case ModelKind::kKerr:
      if (model.n_fock < 2) throw ConfigError("model.n_fock: must be >= 2");
      break;
    case ModelKind::kTestQubit:
      if (model.variant != "dark" && model.variant != "rabi") {
        throw ConfigError("model.variant: expected dark or rabi");
      }
      break;
  }
  if (method.kind == MethodKind::kDqj) {
    if (method.order < 1 || method.order > 3) throw ConfigError("method.order: must be 1, 2 or 3");
    if (method.n_grid < 1) throw ConfigError("method.n_grid: must be >= 1");
  }
  if (method.kind == MethodKind::kSqj) {
    if (method.n_traj < 1) throw ConfigError("method.n_traj: must be >= 1");
    if (method.repeats < 1) throw ConfigError("method.repeats: must be >= 1");
  }
  if (recording.intervals < 0) throw ConfigError("recording.intervals: must be >= 0");
  if (propagation.substep_div < 1) throw ConfigError("propagation.substep_div: must be >= 1");
  if (propagation.max_step && !(*propagation.max_step > 0.0)) {
    throw ConfigError("propagation.max_step: must be positive");
  }
  if (!(propagation.reference_step > 0.0)) {
    throw ConfigError("propagation.reference_step: must be positive");
  }

  const std::string observable_prefix = "observable:";
  const std::string spectrum_prefix = "spectrum:";
  if (metric.rfind(observable_prefix, 0) == 0) {
    if (metric.size() == observable_prefix.size()) throw ConfigError("metric: empty observable name");
  } else if (metric.rfind(spectrum_prefix, 0) == 0) {
    const std::string w = metric.substr(spectrum_prefix.size());
    std::size_t used = 0;
    double omega = 0.0;
    try {
      omega = std::stod(w, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != w.size() || !std::isfinite(omega)) {
      throw ConfigError("metric: cannot parse frequency in '" + metric + "'");
    }
    if (recording.policy != RecordingPolicy::kGrid) {
      throw ConfigError("metric: spectrum needs recording.policy = grid");
    }
  } else if (metric != "fidelity_vs_lindblad") {
    throw ConfigError(
        "metric: expected fidelity_vs_lindblad, observable:<name> or spectrum:<omega>");
  }

  if (sweep) {
    if (sweep->values.empty()) throw ConfigError("sweep.values: must not be empty");
    for (double v : sweep->values) {
      if (sweep->axis == SweepAxis::kGamma) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("sweep.values: gamma must be >= 0");
      } else if (!is_positive_integer(v)) {
        throw ConfigError("sweep.values: " + to_string(sweep->axis) + " needs positive integers");
      }
    }
    if (sweep->axis == SweepAxis::kNGrid && method.kind != MethodKind::kDqj) {
      throw ConfigError("sweep.axis: n_grid applies to dqj only");
    }
    if (sweep->axis == SweepAxis::kNTraj && method.kind != MethodKind::kSqj) {
      throw ConfigError("sweep.axis: n_traj applies to sqj only");
    }
    if (sweep->axis == SweepAxis::kNQubits && model.kind != ModelKind::kTfim) {
      throw ConfigError("sweep.axis: n_qubits applies to tfim only");
    }
  }
}

ExperimentConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(root,
             {"model", "method", "T", "recording", "propagation", "metric", "output", "sweep"},
             "config");
  ExperimentConfig cfg;
  cfg.model = parse_model(require_block(root, "model"));
  cfg.method = parse_method(require_block(root, "method"));
  read(root, "T", cfg.T, "config");
  read(root, "metric", cfg.metric, "config");

  if (const auto it = root.find("recording"); it != root.end()) {
    check_keys(*it, {"policy", "intervals"}, "recording");
    std::string policy = "final";
    read(*it, "policy", policy, "recording");
    if (policy == "final") {
      cfg.recording.policy = RecordingPolicy::kFinal;
    } else if (policy == "grid") {
      cfg.recording.policy = RecordingPolicy::kGrid;
    } else {
      throw ConfigError("recording.policy: expected final or grid");
    }
    read(*it, "intervals", cfg.recording.intervals, "recording");
  }
  if (const auto it = root.find("propagation"); it != root.end()) {
    check_keys(*it, {"substep_div", "max_step", "reference_step"}, "propagation");
    read(*it, "substep_div", cfg.propagation.substep_div, "propagation");
    if (it->contains("max_step")) {
      double v = 0.0;
      read(*it, "max_step", v, "propagation");
      cfg.propagation.max_step = v;
    }
    read(*it, "reference_step", cfg.propagation.reference_step, "propagation");
  }
  if (const auto it = root.find("output"); it != root.end()) {
    check_keys(*it, {"path", "format"}, "output");
    read(*it, "path", cfg.output.path, "output");
    std::string format = "csv";
    read(*it, "format", format, "output");
    cfg.output.format = parse_format(format);
  }
  if (const auto it = root.find("sweep"); it != root.end()) {
    check_keys(*it, {"axis", "values"}, "sweep");
    std::string axis;
    read(*it, "axis", axis, "sweep");
    SweepConfig sweep;
    sweep.axis = parse_axis(axis);
    const auto values = it->find("values");
    if (values == it->end() || !values->is_array()) {
      throw ConfigError("sweep.values: expected an array");
    }
    for (const auto& v : *values) {
      if (!v.is_number()) throw ConfigError("sweep.values: expected numbers");
      sweep.values.push_back(v.get<double>());
    }
    cfg.sweep = std::move(sweep);
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  json root;
  json model{{"kind", to_string(cfg.model.kind)}, {"gamma", cfg.model.gamma}};
  switch (cfg.model.kind) {
    case ModelKind::kTfim:
      model["n_qubits"] = cfg.model.n_qubits;
      model["g"] = cfg.model.g;
      model["J"] = cfg.model.j_coupling;
      break;
    case ModelKind::kKerr:
      model["n_fock"] = cfg.model.n_fock;
      model["omega0"] = cfg.model.omega0;
      model["omega_kerr"] = cfg.model.omega_kerr;
      model["alpha"] = {cfg.model.alpha_re, cfg.model.alpha_im};
      break;
    case ModelKind::kTestQubit:
      model["variant"] = cfg.model.variant;
      model["omega"] = cfg.model.omega;
      break;
  }
  json method{{"kind", to_string(cfg.method.kind)}};
  switch (cfg.method.kind) {
    case MethodKind::kDqj:
      method["order"] = cfg.method.order;
      method["n_grid"] = cfg.method.n_grid;
      method["workers"] = cfg.method.workers;
      break;
    case MethodKind::kSqj:
      method["n_traj"] = cfg.method.n_traj;
      method["seed"] = cfg.method.seed;
      method["repeats"] = cfg.method.repeats;
      method["workers"] = cfg.method.workers;
      break;
    case MethodKind::kLindblad:
      break;
  }
  root["model"] = model;
  root["method"] = method;
  root["T"] = cfg.T;
  root["recording"] = {
      {"policy", cfg.recording.policy == RecordingPolicy::kGrid ? "grid" : "final"},
      {"intervals", cfg.recording.intervals}};
  json prop{{"substep_div", cfg.propagation.substep_div},
            {"reference_step", cfg.propagation.reference_step}};
  if (cfg.propagation.max_step) prop["max_step"] = *cfg.propagation.max_step;
  root["propagation"] = prop;
  root["metric"] = cfg.metric;
  root["output"] = {{"path", cfg.output.path},
                    {"format", cfg.output.format == OutputFormat::kJson ? "json" : "csv"}};
  if (cfg.sweep) {
    root["sweep"] = {{"axis", to_string(cfg.sweep->axis)}, {"values", cfg.sweep->values}};
  }
  return root.dump(2);
}

}  // namespace dqj::bench
