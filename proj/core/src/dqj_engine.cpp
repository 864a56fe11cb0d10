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

#include "dqj/dqj_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <string>

#include <Eigen/SparseCore>

#include "dqj/detail/parallel.hpp"
#include "dqj/errors.hpp"

namespace dqj {
namespace {

using SparseOp = Eigen::SparseMatrix<Complex>;
using Weights = std::array<double, 4>;  // indexed by jump order 0..3

// Jump-time tuples of all grids merged into a prefix tree over lattice ticks.
// A trajectory is a root-to-node path plus one operator per edge.
struct TickNode {
  long tick = 0;
  bool terminal = false;
  double grid_weight = 0.0;
  // Trajectories (terminal nodes times operator choices) in the subtree,
  // counted with the operator of this node fixed.
  std::uint64_t specs = 0;
  std::vector<TickNode> children;
};

struct TrieBuilder {
  bool terminal = false;
  double grid_weight = 0.0;
  std::map<long, TrieBuilder> children;
};

TickNode freeze(long tick, const TrieBuilder& b, std::uint64_t n_jumps) {
  TickNode node;
  node.tick = tick;
  node.terminal = b.terminal;
  node.grid_weight = b.grid_weight;
  node.specs = b.terminal ? 1 : 0;
  node.children.reserve(b.children.size());
  for (const auto& [t, child] : b.children) {
    node.children.push_back(freeze(t, child, n_jumps));
    node.specs += n_jumps * node.children.back().specs;
  }
  return node;
}

TickNode build_trie(int max_order, double T, int n_grid, std::uint64_t n_jumps) {
  TrieBuilder root;
  for (int order = 1; order <= max_order; ++order) {
    const JumpTimeGrid grid = build_grid(order, T, n_grid);
    for (const auto& p : grid.points) {
      TrieBuilder* node = &root;
      for (long t : p.ticks) node = &node->children[t];
      node->terminal = true;
      node->grid_weight = p.weight;
    }
  }
  return freeze(0, root, n_jumps);
}

// Every gap between consecutive events that some node walk will propagate over.
void collect_gaps(const TickNode& node, const std::vector<long>& records, long final_tick,
                  std::set<long>& gaps) {
  std::vector<long> events;
  events.reserve(node.children.size() + records.size() + 1);
  for (const auto& c : node.children) events.push_back(c.tick);
  for (long r : records) {
    if (r >= node.tick) events.push_back(r);
  }
  events.push_back(final_tick);
  std::sort(events.begin(), events.end());
  long cur = node.tick;
  for (long e : events) {
    if (e > cur) gaps.insert(e - cur);
    cur = e;
  }
  for (const auto& c : node.children) collect_gaps(c, records, final_tick, gaps);
}

struct Accumulator {
  std::vector<std::vector<CMatrix>> weighted;  // [order][record]
  std::uint64_t trajectories = 0;
  std::uint64_t annihilated = 0;

  Accumulator(int max_order, std::size_t records, Index dim) {
    weighted.resize(static_cast<std::size_t>(max_order) + 1);
    for (int n = 1; n <= max_order; ++n) {
      weighted[static_cast<std::size_t>(n)].assign(records, CMatrix::Zero(dim, dim));
    }
  }

  void add(const Accumulator& other) {
    for (std::size_t n = 1; n < weighted.size(); ++n) {
      for (std::size_t i = 0; i < weighted[n].size(); ++i) weighted[n][i] += other.weighted[n][i];
    }
    trajectories += other.trajectories;
    annihilated += other.annihilated;
  }
};

struct Walker {
  const std::vector<SparseOp>& jumps;
  const LatticePropagator& prop;
  const std::vector<long>& record_ticks;
  long final_tick;
  int max_order;
  double tick_len;
  const TrajectoryObserver* observer;
  std::mutex* observer_mutex;

  // Weights in `w` for records at index >= first: trajectories of the subtree
  // whose next jump lies after the record time. Adds p_n * rho(t) of this
  // node's state to the accumulator.
  void deposit(const std::vector<CVector>& states, std::size_t first, const TickNode& node,
               const std::vector<Weights>& child_w, const Weights& own, int min_order,
               Accumulator& acc) const {
    Weights tail{};
    for (int n = 0; n < 4; ++n) tail[static_cast<std::size_t>(n)] = own[static_cast<std::size_t>(n)];
    std::size_t ci = node.children.size();
    for (std::size_t k = states.size(); k-- > 0;) {
      const long t = record_ticks[first + k];
      while (ci > 0 && node.children[ci - 1].tick > t) {
        --ci;
        for (int n = 0; n < 4; ++n) tail[static_cast<std::size_t>(n)] += child_w[ci][static_cast<std::size_t>(n)];
      }
      const CVector& psi = states[k];
      const double n2 = psi.squaredNorm();
      if (!(n2 > kNormEpsilon)) continue;
      bool any = false;
      for (int n = min_order; n <= max_order; ++n) any = any || tail[static_cast<std::size_t>(n)] > 0.0;
      if (!any) continue;
      const CMatrix rho = (psi * psi.adjoint()) / n2;
      for (int n = min_order; n <= max_order; ++n) {
        const double w = tail[static_cast<std::size_t>(n)];
        if (w > 0.0) acc.weighted[static_cast<std::size_t>(n)][first + k].noalias() += w * rho;
      }
    }
  }

  Weights visit(const TickNode& node, int depth, CVector psi, double density, Accumulator& acc,
                TrajectorySpec* path) const {
    const std::size_t first = static_cast<std::size_t>(
        std::lower_bound(record_ticks.begin(), record_ticks.end(), node.tick) - record_ticks.begin());
    std::vector<CVector> states;
    states.reserve(record_ticks.size() - first);
    std::vector<Weights> child_w(node.children.size(), Weights{});

    long cur = node.tick;
    std::size_t ri = first;
    std::size_t ci = 0;
    for (;;) {
      long next = final_tick;
      if (ri < record_ticks.size()) next = std::min(next, record_ticks[ri]);
      if (ci < node.children.size()) next = std::min(next, node.children[ci].tick);
      if (next > cur) {
        psi = prop.over(next - cur) * psi;
        cur = next;
      }
      if (ri < record_ticks.size() && record_ticks[ri] == cur) {
        states.push_back(psi);
        ++ri;
      }
      if (ci < node.children.size() && node.children[ci].tick == cur) {
        jump_into(node.children[ci], depth + 1, psi, density, acc, path, child_w[ci]);
        ++ci;
      }
      if (cur == final_tick && ri == record_ticks.size() && ci == node.children.size()) break;
    }

    Weights own{};
    if (node.terminal) {
      const double trailing = depth < max_order ? psi.squaredNorm() : 1.0;
      const double p = node.grid_weight * density * trailing;
      own[static_cast<std::size_t>(depth)] = p;
      ++acc.trajectories;
      if (observer != nullptr && *observer) {
        path->grid_weight = node.grid_weight;
        std::lock_guard lock(*observer_mutex);
        (*observer)(*path, StateVector(psi), p);
      }
    }
    deposit(states, first, node, child_w, own, depth, acc);

    Weights total = own;
    for (const auto& w : child_w) {
      for (std::size_t n = 0; n < 4; ++n) total[n] += w[n];
    }
    return total;
  }

  // Applies every jump operator to `psi` at the child's tick and walks the child.
  void jump_into(const TickNode& child, int depth, const CVector& psi, double density,
                 Accumulator& acc, TrajectorySpec* path, Weights& out) const {
    for (std::size_t j = 0; j < jumps.size(); ++j) {
      jump_one(child, depth, psi, density, j, acc, path, out);
    }
  }

  void jump_one(const TickNode& child, int depth, const CVector& psi, double density,
                std::size_t j, Accumulator& acc, TrajectorySpec* path, Weights& out) const {
    CVector jumped = jumps[j] * psi;
    const double e = jumped.squaredNorm();
    if (!(e > kNormEpsilon * psi.squaredNorm())) {
      acc.trajectories += child.specs;
      acc.annihilated += child.specs;
      return;
    }
    jumped /= std::sqrt(e);
    if (path != nullptr) {
      path->jump_times.push_back(static_cast<double>(child.tick) * tick_len);
      path->jump_operators.push_back(j);
    }
    const Weights w = visit(child, depth, std::move(jumped), density * e, acc, path);
    if (path != nullptr) {
      path->jump_times.pop_back();
      path->jump_operators.pop_back();
    }
    for (std::size_t n = 0; n < 4; ++n) out[n] += w[n];
  }
};

std::vector<long> record_ticks_for(const std::vector<double>& record_at, double T, int n_grid,
                                   double tick_len) {
  const long final_tick = kTicksPerInterval * n_grid;
  std::vector<long> ticks;
  if (record_at.empty()) {
    for (long i = 1; i <= n_grid; ++i) ticks.push_back(kTicksPerInterval * i);
    return ticks;
  }
  for (double t : record_at) {
    const double x = t / tick_len;
    const long k = std::llround(x);
    if (std::abs(x - static_cast<double>(k)) > 1e-6 || k < 0 || k > final_tick) {
      throw InvalidInput("run_dqj: record time " + std::to_string(t) +
                         " is not a multiple of dt/12 inside [0, T=" + std::to_string(T) + "]");
    }
    ticks.push_back(k);
  }
  std::sort(ticks.begin(), ticks.end());
  ticks.erase(std::unique(ticks.begin(), ticks.end()), ticks.end());
  return ticks;
}

}  // namespace

DqjResult run_dqj(const OperatorMatrix& h, const JumpOperatorSet& jumps, const StateVector& psi0,
                  double T, const DqjOptions& options) {
  if (options.order < 1 || options.order > 3) {
    throw InvalidOrder("run_dqj: order must be 1, 2 or 3");
  }
  if (options.n_grid < 1) throw InvalidInput("run_dqj: n_grid must be >= 1");
  if (!(T > 0.0)) throw InvalidInput("run_dqj: T must be positive");
  if (psi0.dim() != h.dim()) throw DimensionMismatch("run_dqj: initial state dimension");
  if (std::abs(squared_norm(psi0) - 1.0) > 1e-10) {
    throw InvalidInput("run_dqj: initial state must have unit norm");
  }

  const EffectiveHamiltonian heff = build_effective_hamiltonian(h, jumps);
  const int max_order = options.order;
  const int n_grid = options.n_grid;
  const double dt = T / n_grid;
  const double tick_len = T / (static_cast<double>(kTicksPerInterval) * n_grid);
  const double max_step = options.propagation.max_step > 0.0
                              ? options.propagation.max_step
                              : dt / kDefaultSubstepDivisor;
  const long substeps = steps_for_interval(tick_len, max_step);
  const long final_tick = kTicksPerInterval * n_grid;
  const std::vector<long> record_ticks = record_ticks_for(options.record_at, T, n_grid, tick_len);

  const std::uint64_t n_jumps = jumps.size();
  const TickNode root = n_jumps > 0 ? build_trie(max_order, T, n_grid, n_jumps) : TickNode{};

  LatticePropagator prop(heff, tick_len, substeps);
  {
    std::set<long> gaps;
    collect_gaps(root, record_ticks, final_tick, gaps);
    for (long g : gaps) prop.prepare(g);
  }

  std::vector<SparseOp> sparse_jumps;
  for (const auto& l : jumps) sparse_jumps.push_back(l.entries().sparseView());

  std::mutex observer_mutex;
  const Walker walker{sparse_jumps, prop,      record_ticks, final_tick, max_order,
                      tick_len,     &options.observer, &observer_mutex};

  // Zero-jump trajectory: states at records and at every first-jump tick.
  std::vector<CVector> root_records;
  std::vector<CVector> child_states;
  CVector psi = psi0.amplitudes();
  {
    long cur = 0;
    std::size_t ri = 0;
    std::size_t ci = 0;
    for (;;) {
      long next = final_tick;
      if (ri < record_ticks.size()) next = std::min(next, record_ticks[ri]);
      if (ci < root.children.size()) next = std::min(next, root.children[ci].tick);
      if (next > cur) {
        psi = prop.over(next - cur) * psi;
        cur = next;
      }
      if (ri < record_ticks.size() && record_ticks[ri] == cur) {
        root_records.push_back(psi);
        ++ri;
      }
      if (ci < root.children.size() && root.children[ci].tick == cur) {
        child_states.push_back(psi);
        ++ci;
      }
      if (cur == final_tick && ri == record_ticks.size() && ci == root.children.size()) break;
    }
  }
  const double p0 = jumps.empty() ? 1.0 : psi.squaredNorm();

  // First jumps fan out into independent subtrees; the chunking below is
  // fixed by the problem size so the reduction order never depends on workers.
  const std::size_t tasks = root.children.size() * n_jumps;
  const Index dim = h.dim();
  const double bytes_per_acc = static_cast<double>(max_order) *
                               static_cast<double>(record_ticks.size()) *
                               static_cast<double>(dim * dim) * sizeof(Complex);
  const std::size_t chunk_cap = static_cast<std::size_t>(
      std::clamp(256e6 / std::max(bytes_per_acc, 1.0), 1.0, 64.0));
  const std::size_t chunks = std::max<std::size_t>(1, std::min(tasks, chunk_cap));
  std::vector<Weights> task_w(tasks, Weights{});
  std::vector<Accumulator> chunk_acc;
  chunk_acc.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) chunk_acc.emplace_back(max_order, record_ticks.size(), dim);

  detail::parallel_for(chunks, options.workers, [&](std::size_t c) {
    const std::size_t begin = tasks * c / chunks;
    const std::size_t end = tasks * (c + 1) / chunks;
    TrajectorySpec path;
    TrajectorySpec* path_ptr = options.observer ? &path : nullptr;
    for (std::size_t task = begin; task < end; ++task) {
      const std::size_t ci = task / n_jumps;
      const std::size_t j = task % n_jumps;
      walker.jump_one(root.children[ci], 1, child_states[ci], 1.0, j, chunk_acc[c], path_ptr,
                      task_w[task]);
    }
  });

  Accumulator total(max_order, record_ticks.size(), dim);
  for (const auto& acc : chunk_acc) total.add(acc);

  std::vector<Weights> child_w(root.children.size(), Weights{});
  for (std::size_t task = 0; task < tasks; ++task) {
    for (std::size_t n = 0; n < 4; ++n) child_w[task / n_jumps][n] += task_w[task][n];
  }
  walker.deposit(root_records, 0, root, child_w, Weights{}, 1, total);

  DqjResult result;
  result.substeps_per_tick = substeps;
  result.step = tick_len / static_cast<double>(substeps);
  result.trajectories = 1 + total.trajectories;
  result.annihilated = total.annihilated;
  for (long t : record_ticks) result.record_times.push_back(static_cast<double>(t) * tick_len);

  JumpOrderContribution zero;
  zero.order = 0;
  zero.times = result.record_times;
  zero.p0 = p0;
  zero.norm_constant = p0;
  for (const auto& s : root_records) {
    const double n2 = s.squaredNorm();
    if (!(n2 > kNormEpsilon)) throw NormUnderflow("run_dqj: zero-jump trajectory annihilated");
    zero.weighted_sum.push_back(p0 * (s * s.adjoint()) / n2);
  }
  result.contributions.push_back(std::move(zero));

  for (int n = 1; n <= max_order; ++n) {
    JumpOrderContribution c;
    c.order = n;
    c.times = result.record_times;
    c.p0 = p0;
    c.weighted_sum = std::move(total.weighted[static_cast<std::size_t>(n)]);
    for (const auto& w : child_w) c.norm_constant += w[static_cast<std::size_t>(n)];
    result.contributions.push_back(std::move(c));
  }
  return result;
}

DensityMatrixSeries assemble_density(std::span<const JumpOrderContribution> contributions,
                                     int order) {
  if (order < 1 || order > 3) throw InvalidOrder("assemble_density: order must be 1, 2 or 3");
  if (contributions.size() < static_cast<std::size_t>(order) + 1) {
    throw InvalidInput("assemble_density: contributions must cover orders 0..order");
  }
  const JumpOrderContribution& zero = contributions[0];
  const double p0 = zero.p0;
  double norm_sum = 0.0;
  for (int n = 1; n <= order; ++n) norm_sum += contributions[static_cast<std::size_t>(n)].norm_constant;

  double scale = 0.0;
  if (norm_sum > kNormEpsilon) {
    scale = (1.0 - p0) / norm_sum;
  } else if (1.0 - p0 > 1e-12) {
    throw DegenerateNormalization("assemble_density: p0 = " + std::to_string(p0) +
                                  " but jump trajectories carry no weight");
  }

  std::vector<DensityMatrix> states;
  states.reserve(zero.times.size());
  for (std::size_t i = 0; i < zero.times.size(); ++i) {
    CMatrix rho = zero.weighted_sum[i];
    if (scale == 0.0) {
      rho /= p0;  // no jump weight: the zero-jump state is the whole ensemble
    } else {
      for (int n = 1; n <= order; ++n) rho += scale * contributions[static_cast<std::size_t>(n)].weighted_sum[i];
    }
    states.push_back(DensityMatrix(std::move(rho)).symmetrized());
  }
  return DensityMatrixSeries(zero.times, std::move(states));
}

double error_bound_order1(const ErrorBoundInputs& in) {
  if (!(in.l0 >= 0.0) || !(in.generator_norm_bound >= 0.0) || !(in.T > 0.0) || in.n_grid < 1) {
    throw InvalidInput("error_bound_order1: inputs must be positive");
  }
  if (!(in.z_min > 0.0 && in.z_min <= 1.0)) throw InvalidInput("error_bound_order1: z_min outside (0, 1]");
  if (in.p0 < 0.0 || in.p0 > 1.0) throw InvalidInput("error_bound_order1: p0 outside [0, 1]");
  const double n = static_cast<double>(in.n_grid);
  return (1.0 - in.p0) * 3.0 * in.l0 * in.generator_norm_bound * in.generator_norm_bound *
         in.T * in.T * in.T / (8.0 * n * n);
}

ErrorBoundInputs estimate_error_bound_inputs(const OperatorMatrix& h, const JumpOperatorSet& jumps,
                                             double p0, double T, int n_grid) {
  const double l0 = hermitian_operator_norm(jumps.decay_operator(h.dim()));
  const double h_norm = hermitian_operator_norm(h);
  ErrorBoundInputs in;
  in.l0 = l0;
  in.generator_norm_bound = 2.0 * (h_norm + 0.5 * l0) + l0;
  in.z_min = std::exp(-l0 * T);
  in.p0 = p0;
  in.T = T;
  in.n_grid = n_grid;
  return in;
}

double poisson_plateau(double gamma_eff, double T, int order, bool squared) {
  if (order < 0) throw InvalidOrder("poisson_plateau: order must be >= 0");
  if (gamma_eff < 0.0 || T < 0.0) throw InvalidInput("poisson_plateau: negative rate or time");
  double p = 1.0;
  for (int k = 1; k <= order + 1; ++k) p *= gamma_eff * T / k;
  return squared ? p * p : p;
}

}  // namespace dqj
