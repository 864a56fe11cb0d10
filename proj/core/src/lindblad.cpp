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

#include "dqj/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dqj/errors.hpp"
#include "dqj/propagation.hpp"

namespace dqj {

DensityMatrixSeries::DensityMatrixSeries(std::vector<double> times,
                                         std::vector<DensityMatrix> states)
    : times_(std::move(times)), states_(std::move(states)) {
  if (times_.size() != states_.size()) {
    throw InvalidInput("DensityMatrixSeries: times and states differ in length");
  }
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) {
      throw InvalidInput("DensityMatrixSeries: times must be strictly increasing");
    }
  }
}

const DensityMatrix& DensityMatrixSeries::at(double t) const {
  auto it = std::lower_bound(times_.begin(), times_.end(), t);
  if (it == times_.end() || *it != t) {
    throw InvalidInput("DensityMatrixSeries: no state recorded at t=" + std::to_string(t));
  }
  return states_[static_cast<std::size_t>(it - times_.begin())];
}

std::size_t DensityMatrixSeries::index_of(double t, double tol) const {
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (std::abs(times_[i] - t) <= tol) return i;
  }
  throw InvalidInput("DensityMatrixSeries: no state recorded near t=" + std::to_string(t));
}

void LindbladSystem::validate() const {
  const Index d = hamiltonian.dim();
  if (!jumps.empty() && jumps.dim() != d) {
    throw DimensionMismatch("LindbladSystem: jump operators and Hamiltonian differ in dimension");
  }
  if (rho0.dim() != d) throw DimensionMismatch("LindbladSystem: rho0 dimension");
  if (rho0.hermiticity_error() > 1e-10) throw InvalidInput("LindbladSystem: rho0 not Hermitian");
  if (std::abs(rho0.trace() - 1.0) > 1e-8) throw InvalidInput("LindbladSystem: rho0 trace != 1");
  if (rho0.min_eigenvalue() < -1e-10) throw InvalidInput("LindbladSystem: rho0 not PSD");
}

LindbladGenerator::LindbladGenerator(const LindbladSystem& sys)
    : h_(sys.hamiltonian.entries()) {
  if (!sys.jumps.empty() && sys.jumps.dim() != sys.hamiltonian.dim()) {
    throw DimensionMismatch("LindbladGenerator: dimension");
  }
  h_eff_ = h_ - 0.5 * kI * sys.jumps.decay_operator(sys.hamiltonian.dim()).entries();
  for (const auto& l : sys.jumps) jumps_.push_back(l.entries());
}

CMatrix LindbladGenerator::operator()(const CMatrix& rho) const {
  // -i(H_eff rho - rho H_eff^dagger) + sum_j L rho L^dagger
  // rho stays Hermitian along the flow, so rho H_eff^dagger = (H_eff rho)^dagger.
  const CMatrix a = h_eff_ * rho;
  CMatrix out = -kI * (a - a.adjoint());
  for (const auto& l : jumps_) out.noalias() += l * rho * l.adjoint();
  return out;
}

CMatrix lindblad_rhs(const DensityMatrix& rho, const LindbladSystem& sys) {
  if (rho.dim() != sys.hamiltonian.dim()) throw DimensionMismatch("lindblad_rhs: dimension");
  return LindbladGenerator(sys)(rho.entries());
}

DensityMatrixSeries integrate_master(const LindbladSystem& sys, double T,
                                     std::span<const double> record_at, double max_step) {
  sys.validate();
  if (T < 0.0) throw InvalidInterval("integrate_master: negative final time");
  std::vector<double> marks(record_at.begin(), record_at.end());
  for (double t : marks) {
    if (t < 0.0 || t > T) throw InvalidInterval("integrate_master: record time outside [0, T]");
  }
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  const LindbladGenerator rhs(sys);
  CMatrix rho = sys.rho0.entries();
  double t = 0.0;
  std::vector<DensityMatrix> states;
  states.reserve(marks.size());
  for (double mark : marks) {
    const long n = steps_for_interval(mark - t, max_step);
    const double h = n > 0 ? (mark - t) / static_cast<double>(n) : 0.0;
    for (long s = 0; s < n; ++s) {
      const CMatrix k1 = rhs(rho);
      const CMatrix k2 = rhs(rho + 0.5 * h * k1);
      const CMatrix k3 = rhs(rho + 0.5 * h * k2);
      const CMatrix k4 = rhs(rho + h * k3);
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    t = mark;
    states.push_back(DensityMatrix(rho).symmetrized());
  }
  return DensityMatrixSeries(std::move(marks), std::move(states));
}

}  // namespace dqj
