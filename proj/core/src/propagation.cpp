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

#include "dqj/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dqj/errors.hpp"

namespace dqj {

EffectiveHamiltonian::EffectiveHamiltonian(OperatorMatrix hermitian_part,
                                           OperatorMatrix decay_part)
    : hermitian_part_(std::move(hermitian_part)), decay_part_(std::move(decay_part)) {
  if (hermitian_part_.dim() != decay_part_.dim()) {
    throw DimensionMismatch("EffectiveHamiltonian: H and decay part differ in dimension");
  }
  if (!hermitian_part_.is_hermitian(1e-12)) {
    throw InvalidInput("EffectiveHamiltonian: Hamiltonian is not Hermitian");
  }
  if (!decay_part_.is_hermitian(1e-12)) {
    throw InvalidInput("EffectiveHamiltonian: decay part is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(decay_part_.entries(), Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    throw InvalidInput("EffectiveHamiltonian: decay part is not positive semidefinite");
  }
  matrix_ = OperatorMatrix(hermitian_part_.entries() - 0.5 * kI * decay_part_.entries());
  generator_ = -kI * matrix_.entries();
}

EffectiveHamiltonian build_effective_hamiltonian(const OperatorMatrix& h,
                                                 const JumpOperatorSet& jumps) {
  if (!jumps.empty() && jumps.dim() != h.dim()) {
    throw DimensionMismatch("build_effective_hamiltonian: jump operators act on dimension " +
                            std::to_string(jumps.dim()) + ", Hamiltonian on " +
                            std::to_string(h.dim()));
  }
  return EffectiveHamiltonian(h, jumps.decay_operator(h.dim()));
}

const StateVector& SegmentResult::at(double t) const {
  for (const auto& r : recorded) {
    if (r.time == t) return r.state;
  }
  throw InvalidInput("SegmentResult::at: time " + std::to_string(t) + " was not recorded");
}

long steps_for_interval(double length, double max_step) {
  if (!(max_step > 0.0)) throw InvalidInput("max_step must be positive");
  if (length <= 0.0) return 0;
  // Guard against ceil(4.0000000001) style rounding when length is a multiple of max_step.
  const double ratio = length / max_step;
  const double nearest = std::round(ratio);
  if (nearest >= 1.0 && std::abs(ratio - nearest) <= 1e-9 * nearest) {
    return static_cast<long>(nearest);
  }
  return std::max(1L, static_cast<long>(std::ceil(ratio)));
}

CVector rk4_step(const CMatrix& generator, const CVector& psi, double h) {
  const CVector k1 = generator * psi;
  const CVector k2 = generator * (psi + 0.5 * h * k1);
  const CVector k3 = generator * (psi + 0.5 * h * k2);
  const CVector k4 = generator * (psi + h * k3);
  return psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

SegmentResult propagate_segment(const StateVector& psi0, double t0, double t1,
                                const EffectiveHamiltonian& heff, const PropagationConfig& cfg,
                                std::span<const double> record_at) {
  if (t1 < t0) {
    throw InvalidInterval("propagate_segment: t1 < t0 (" + std::to_string(t1) + " < " +
                          std::to_string(t0) + ")");
  }
  if (psi0.dim() != heff.dim()) throw DimensionMismatch("propagate_segment: state dimension");

  std::vector<double> marks(record_at.begin(), record_at.end());
  for (double t : marks) {
    if (t < t0 || t > t1) {
      throw InvalidInterval("propagate_segment: record time " + std::to_string(t) +
                            " outside [t0, t1]");
    }
  }
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  SegmentResult result;
  CVector psi = psi0.amplitudes();
  const CMatrix& gen = heff.generator();
  double t = t0;
  auto advance_to = [&](double target) {
    const long n = steps_for_interval(target - t, cfg.max_step);
    const double h = n > 0 ? (target - t) / static_cast<double>(n) : 0.0;
    for (long s = 0; s < n; ++s) psi = rk4_step(gen, psi, h);
    t = target;
  };
  for (double mark : marks) {
    advance_to(mark);
    result.recorded.push_back({mark, StateVector(psi)});
  }
  advance_to(t1);
  result.final_state = StateVector(std::move(psi));
  return result;
}

JumpOutcome apply_jump(const StateVector& psi, const OperatorMatrix& jump) {
  if (psi.dim() != jump.dim()) throw DimensionMismatch("apply_jump: dimension");
  CVector jumped = jump.entries() * psi.amplitudes();
  const double weight = jumped.squaredNorm();
  if (!(weight > kNormEpsilon * squared_norm(psi))) {
    return {StateVector::zero(psi.dim()), 0.0, true};
  }
  jumped /= std::sqrt(weight);
  return {StateVector(std::move(jumped)), weight, false};
}

CMatrix rk4_transfer_matrix(const CMatrix& generator, double interval, long substeps) {
  const Index d = generator.rows();
  if (substeps < 1) throw InvalidInput("rk4_transfer_matrix: substeps must be >= 1");
  const double h = interval / static_cast<double>(substeps);
  const CMatrix a = h * generator;
  const CMatrix id = CMatrix::Identity(d, d);
  // Horner form of 1 + a + a^2/2 + a^3/6 + a^4/24.
  CMatrix step = id + a * (id + a * (id + a * (id + a / 4.0) / 3.0) / 2.0);
  CMatrix out = id;
  CMatrix base = step;
  for (long k = substeps; k > 0; k >>= 1) {
    if (k & 1) out = base * out;
    if (k > 1) base = base * base;
  }
  return out;
}

LatticePropagator::LatticePropagator(const EffectiveHamiltonian& heff, double tick,
                                     long substeps_per_tick)
    : tick_(tick), substeps_(substeps_per_tick) {
  if (!(tick > 0.0)) throw InvalidInput("LatticePropagator: tick must be positive");
  tick_matrix_ = rk4_transfer_matrix(heff.generator(), tick, substeps_per_tick);
  const Index d = tick_matrix_.rows();
  cache_.emplace(0, CMatrix::Identity(d, d));
  cache_.emplace(1, tick_matrix_);
}

void LatticePropagator::prepare(long ticks) {
  if (ticks < 0) throw InvalidInterval("LatticePropagator: negative tick count");
  if (cache_.contains(ticks)) return;
  // Build from the largest cached power not exceeding ticks; binary powering
  // covers the remainder.
  auto it = std::prev(cache_.upper_bound(ticks));
  CMatrix out = it->second;
  long rest = ticks - it->first;
  CMatrix base = tick_matrix_;
  for (long k = rest; k > 0; k >>= 1) {
    if (k & 1) out = base * out;
    if (k > 1) base = base * base;
  }
  cache_.emplace(ticks, std::move(out));
}

const CMatrix& LatticePropagator::over(long ticks) const {
  auto it = cache_.find(ticks);
  if (it == cache_.end()) {
    throw InvalidInput("LatticePropagator: propagator over " + std::to_string(ticks) +
                       " ticks was not prepared");
  }
  return it->second;
}

}  // namespace dqj
