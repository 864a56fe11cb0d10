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

#include "dqj/sqj_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dqj/detail/parallel.hpp"
#include "dqj/errors.hpp"

namespace dqj {

void SqjConfig::validate() const {
  if (n_traj < 1) throw ConfigError("sqj: n_traj must be >= 1");
  if (!(bisection_tol > 0.0 && bisection_tol <= 1e-6)) {
    throw ConfigError("sqj: bisection_tol must lie in (0, 1e-6]");
  }
  if (!(propagation.max_step > 0.0)) throw ConfigError("sqj: max_step must be positive");
  if (max_resamples < 1) throw ConfigError("sqj: max_resamples must be >= 1");
}

namespace {

// Fixed-size RK4 steps from t_start, the full step applied as one matrix.
struct Stepper {
  const CMatrix& generator;
  CMatrix step_matrix;
  double h;

  Stepper(const EffectiveHamiltonian& heff, double max_step)
      : generator(heff.generator()),
        step_matrix(rk4_transfer_matrix(heff.generator(), max_step, 1)),
        h(max_step) {}
};

JumpSearch search_threshold(const Stepper& st, const CVector& psi, double t_start, double t_end,
                            double s, double rel_tol) {
  if (!(s > 0.0)) throw InvalidInput("find_jump_time: threshold must be positive");
  const double tol = rel_tol * s;
  CVector x = psi;
  if (x.squaredNorm() <= s + tol) return {true, t_start, StateVector(std::move(x))};
  if (!(t_end > t_start)) return {false, t_start, StateVector(std::move(x))};

  double t_a = t_start;
  for (long k = 1; t_a < t_end; ++k) {
    double t_b = t_start + static_cast<double>(k) * st.h;
    if (t_b >= t_end - 1e-9 * st.h) t_b = t_end;
    const double h = t_b - t_a;
    CVector y = std::abs(h - st.h) <= 1e-12 * st.h ? CVector(st.step_matrix * x)
                                                    : rk4_step(st.generator, x, h);
    const double ny = y.squaredNorm();
    if (ny > s + tol) {
      x = std::move(y);
      t_a = t_b;
      continue;
    }
    if (ny >= s - tol) return {true, t_b, StateVector(std::move(y))};
    double lo = 0.0;
    double hi = h;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;
      CVector z = rk4_step(st.generator, x, mid);
      const double nz = z.squaredNorm();
      if (std::abs(nz - s) <= tol) return {true, t_a + mid, StateVector(std::move(z))};
      (nz > s ? lo : hi) = mid;
    }
    return {true, t_a + hi, StateVector(rk4_step(st.generator, x, hi))};
  }
  return {false, t_end, StateVector(std::move(x))};
}

}  // namespace

JumpSearch find_jump_time(const StateVector& psi, double t_start, double t_end, double s,
                          const EffectiveHamiltonian& heff, const SqjConfig& cfg) {
  const Stepper st(heff, cfg.propagation.max_step);
  return search_threshold(st, psi.amplitudes(), t_start, t_end, s, cfg.bisection_tol);
}

std::size_t choose_jump_operator(const StateVector& psi, const JumpOperatorSet& jumps,
                                 CounterRng& rng) {
  std::vector<double> delta;
  delta.reserve(jumps.size());
  double total = 0.0;
  for (const auto& l : jumps) {
    delta.push_back((l.entries() * psi.amplitudes()).squaredNorm());
    total += delta.back();
  }
  if (!(total > kNormEpsilon * squared_norm(psi))) {
    throw AllAnnihilated("choose_jump_operator: every jump operator annihilates the state");
  }
  const double u = rng.uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    if (delta[i] <= 0.0) continue;
    last_positive = i;
    acc += delta[i];
    if (u < acc) return i;
  }
  return last_positive;
}

namespace {

struct TrajectoryContext {
  const Stepper& stepper;
  const JumpOperatorSet& jumps;
  const StateVector& psi0;
  double T;
  double p0;
  const std::vector<double>& records;
  const SqjConfig& cfg;
};

// One attempt; returns false if a sampled jump annihilated the state.
bool sample_once(const TrajectoryContext& ctx, CounterRng& rng, SqjTrajectory& out) {
  out.jump_events.clear();
  out.recorded_states.clear();
  CVector x = ctx.psi0.amplitudes();
  double t = 0.0;
  std::size_t ri = 0;
  bool first = true;
  double s = ctx.p0 + (1.0 - ctx.p0) * (1.0 - rng.uniform());
  for (;;) {
    const double b = ri < ctx.records.size() ? ctx.records[ri] : ctx.T;
    JumpSearch search = search_threshold(ctx.stepper, x, t, b, s, ctx.cfg.bisection_tol);
    if (!search.found && first && b >= ctx.T) {
      // The first threshold lies above p0, so only rounding can miss it.
      search.found = true;
      search.time = ctx.T;
    }
    x = search.state.amplitudes();
    t = search.time;
    if (search.found) {
      std::size_t op = 0;
      try {
        op = choose_jump_operator(StateVector(x), ctx.jumps, rng);
      } catch (const AllAnnihilated&) {
        return false;
      }
      CVector y = ctx.jumps[op].entries() * x;
      const double e = y.squaredNorm();
      if (!(e > kNormEpsilon * x.squaredNorm())) return false;
      x = y / std::sqrt(e);
      out.jump_events.push_back({t, op});
      first = false;
      s = 1.0 - rng.uniform();
      continue;
    }
    if (ri < ctx.records.size()) {
      out.recorded_states.emplace_back(CVector(x / x.norm()));
      ++ri;
      continue;
    }
    return true;
  }
}

}  // namespace

SqjResult run_sqj(const OperatorMatrix& h, const JumpOperatorSet& jumps, const StateVector& psi0,
                  double T, const SqjConfig& cfg, std::vector<double> record_at) {
  cfg.validate();
  if (jumps.empty()) throw ConfigError("sqj: the adapted scheme needs at least one jump operator");
  if (!(T > 0.0)) throw InvalidInput("run_sqj: T must be positive");
  if (psi0.dim() != h.dim()) throw DimensionMismatch("run_sqj: initial state dimension");
  if (std::abs(squared_norm(psi0) - 1.0) > 1e-10) {
    throw InvalidInput("run_sqj: initial state must have unit norm");
  }
  if (record_at.empty()) record_at.push_back(T);
  std::sort(record_at.begin(), record_at.end());
  record_at.erase(std::unique(record_at.begin(), record_at.end()), record_at.end());
  if (record_at.front() <= 0.0 || record_at.back() > T) {
    throw InvalidInput("run_sqj: record times must lie in (0, T]");
  }

  const EffectiveHamiltonian heff = build_effective_hamiltonian(h, jumps);
  const SegmentResult zero = propagate_segment(psi0, 0.0, T, heff, cfg.propagation, record_at);

  SqjResult result;
  result.p0 = squared_norm(zero.final_state);
  result.record_times = record_at;
  if (!(1.0 - result.p0 > kNormEpsilon)) {
    throw DegenerateNormalization("run_sqj: no-jump probability is one, nothing to sample");
  }
  std::vector<DensityMatrix> zero_states;
  for (double t : record_at) {
    zero_states.push_back(outer_product_normalized(zero.at(t)));
  }
  result.zero_jump = DensityMatrixSeries(record_at, std::move(zero_states));

  const Stepper stepper(heff, cfg.propagation.max_step);
  const TrajectoryContext ctx{stepper, jumps, psi0, T, result.p0, result.record_times, cfg};
  result.trajectories.resize(cfg.n_traj);
  detail::parallel_for(cfg.n_traj, cfg.workers, [&](std::size_t i) {
    CounterRng rng(cfg.seed, i);
    SqjTrajectory& traj = result.trajectories[i];
    for (int attempt = 0;; ++attempt) {
      if (attempt >= cfg.max_resamples) {
        throw AllAnnihilated("run_sqj: trajectory " + std::to_string(i) +
                             " annihilated on every attempt");
      }
      if (sample_once(ctx, rng, traj)) break;
      ++traj.resamples;
    }
  });
  for (const auto& traj : result.trajectories) result.resampled += traj.resamples;
  return result;
}

DensityMatrixSeries assemble_sqj(double p0, const DensityMatrixSeries& zero_jump,
                                 const std::vector<SqjTrajectory>& trajectories,
                                 const std::vector<double>& record_at) {
  if (trajectories.empty()) throw InvalidInput("assemble_sqj: no trajectories");
  if (p0 < 0.0 || p0 > 1.0) throw InvalidInput("assemble_sqj: p0 outside [0, 1]");
  const double scale = (1.0 - p0) / static_cast<double>(trajectories.size());
  std::vector<DensityMatrix> states;
  states.reserve(record_at.size());
  for (std::size_t i = 0; i < record_at.size(); ++i) {
    CMatrix rho = p0 * zero_jump.at(record_at[i]).entries();
    CMatrix sum = CMatrix::Zero(rho.rows(), rho.cols());
    for (const auto& traj : trajectories) {
      if (traj.recorded_states.size() != record_at.size()) {
        throw DimensionMismatch("assemble_sqj: trajectory records do not match record times");
      }
      const CVector& psi = traj.recorded_states[i].amplitudes();
      sum.noalias() += psi * psi.adjoint();
    }
    rho += scale * sum;
    states.push_back(DensityMatrix(std::move(rho)).symmetrized());
  }
  return DensityMatrixSeries(record_at, std::move(states));
}

}  // namespace dqj
