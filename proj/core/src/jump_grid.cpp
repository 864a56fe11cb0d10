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

#include "dqj/jump_grid.hpp"

#include <algorithm>
#include <string>

#include "dqj/errors.hpp"

namespace dqj {
namespace {

void check_order(int order) {
  if (order < 1 || order > 3) {
    throw InvalidOrder("jump order must be 1, 2 or 3 (got " + std::to_string(order) + ")");
  }
}

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

std::string_view to_string(GridPointKind kind) {
  switch (kind) {
    case GridPointKind::kCartesian: return "cartesian";
    case GridPointKind::kBary2: return "bary2";
    case GridPointKind::kBary3A: return "bary3a";
    case GridPointKind::kBary3B: return "bary3b";
    case GridPointKind::kBary3C: return "bary3c";
  }
  return "unknown";
}

double JumpTimeGrid::weight_sum() const {
  double s = 0.0;
  for (const auto& p : points) s += p.weight;
  return s;
}

std::size_t JumpTimeGrid::count(GridPointKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [kind](const GridPoint& p) { return p.kind == kind; }));
}

JumpTimeGrid build_grid(int order, double T, int n_grid) {
  check_order(order);
  if (n_grid < 1) throw InvalidInput("build_grid: n_grid must be >= 1");
  if (!(T > 0.0)) throw InvalidInput("build_grid: T must be positive");

  JumpTimeGrid grid;
  grid.order = order;
  grid.T = T;
  grid.n_grid = n_grid;
  grid.dt = T / n_grid;
  const double tick_len = T / (static_cast<double>(kTicksPerInterval) * n_grid);
  const double dt = grid.dt;
  const long n = n_grid;
  constexpr long K = kTicksPerInterval;

  auto add = [&](std::vector<long> ticks, double weight, GridPointKind kind) {
    GridPoint p;
    p.times.reserve(ticks.size());
    for (long t : ticks) p.times.push_back(static_cast<double>(t) * tick_len);
    p.ticks = std::move(ticks);
    p.weight = weight;
    p.kind = kind;
    grid.points.push_back(std::move(p));
  };
  auto mid = [](long cell) { return K * cell + K / 2; };

  switch (order) {
    case 1:
      grid.points.reserve(static_cast<std::size_t>(n));
      for (long i = 0; i < n; ++i) add({mid(i)}, dt, GridPointKind::kCartesian);
      break;
    case 2:
      grid.points.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
      for (long i = 0; i < n; ++i) {
        for (long j = i + 1; j < n; ++j) add({mid(i), mid(j)}, dt * dt, GridPointKind::kCartesian);
      }
      for (long k = 0; k < n; ++k) {
        add({K * k + K / 3, K * k + 2 * K / 3}, 0.5 * dt * dt, GridPointKind::kBary2);
      }
      break;
    case 3: {
      const double cell = dt * dt * dt;
      for (long i = 0; i < n; ++i) {
        for (long j = i + 1; j < n; ++j) {
          for (long l = j + 1; l < n; ++l) {
            add({mid(i), mid(j), mid(l)}, cell, GridPointKind::kCartesian);
          }
        }
      }
      for (long k = 0; k < n; ++k) {
        add({mid(k) - K / 4, mid(k), mid(k) + K / 4}, cell / 6.0, GridPointKind::kBary3A);
      }
      // B: one jump in cell l, two in a later cell k.
      for (long k = 1; k < n; ++k) {
        for (long l = 0; l < k; ++l) {
          add({mid(l), K * k + K / 3, K * k + 2 * K / 3}, cell / 2.0, GridPointKind::kBary3B);
        }
      }
      // C: two jumps in cell l, one in a later cell k.
      for (long k = 1; k < n; ++k) {
        for (long l = 0; l < k; ++l) {
          add({K * l + K / 3, K * l + 2 * K / 3, mid(k)}, cell / 2.0, GridPointKind::kBary3C);
        }
      }
      break;
    }
    default:
      break;
  }
  return grid;
}

std::uint64_t count_trajectories(int order, std::uint64_t n_grid, std::uint64_t n_jumps) {
  check_order(order);
  if (n_grid < 1 || n_jumps < 1) throw InvalidInput("count_trajectories: inputs must be >= 1");
  const std::uint64_t n = n_grid;
  std::uint64_t total = 1 + n * n_jumps;
  if (order >= 2) total += n * (n + 1) / 2 * ipow(n_jumps, 2);
  if (order >= 3) total += n * (n * n - 2 * n + 2) * ipow(n_jumps, 3);
  return total;
}

std::uint64_t grid_point_count(int order, std::uint64_t n_grid) {
  check_order(order);
  const std::uint64_t n = n_grid;
  switch (order) {
    case 1: return n;
    case 2: return n * (n - 1) / 2 + n;
    default: return n * (n - 1) * (n - 2) / 6 + n + n * (n - 1);
  }
}

std::uint64_t enumerated_trajectories(int order, std::uint64_t n_grid, std::uint64_t n_jumps) {
  check_order(order);
  if (n_grid < 1 || n_jumps < 1) throw InvalidInput("enumerated_trajectories: inputs must be >= 1");
  std::uint64_t total = 1;
  for (int k = 1; k <= order; ++k) total += grid_point_count(k, n_grid) * ipow(n_jumps, k);
  return total;
}

}  // namespace dqj
