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
#include <string_view>
#include <vector>

namespace dqj {

// Jump times live on a lattice of tick = dt / kTicksPerInterval. Every grid
// point of orders 1-3 (midpoints, thirds, quarters of a cell) is a lattice
// point, which lets trajectories share exactly the same propagators.
inline constexpr long kTicksPerInterval = 12;

enum class GridPointKind { kCartesian, kBary2, kBary3A, kBary3B, kBary3C };

std::string_view to_string(GridPointKind kind);

struct GridPoint {
  std::vector<long> ticks;     // strictly increasing, in (0, 12 * n_grid)
  std::vector<double> times;   // ticks * tick
  double weight = 0.0;         // quadrature weight (volume of the covered simplex cell)
  GridPointKind kind = GridPointKind::kCartesian;
};

struct JumpTimeGrid {
  int order = 1;
  double T = 0.0;
  int n_grid = 0;
  double dt = 0.0;
  std::vector<GridPoint> points;

  double tick() const { return dt / static_cast<double>(kTicksPerInterval); }
  double weight_sum() const;
  std::size_t count(GridPointKind kind) const;
};

// Deterministic jump-time grid of the given order on [0, T]:
//  order 1: midpoints dt * (k + 1/2), weight dt
//  order 2: Cartesian midpoint pairs (weight dt^2) and per-cell pairs
//           (tau - dt/6, tau + dt/6) (weight dt^2 / 2)
//  order 3: Cartesian triples (dt^3), diagonal cells A (dt^3 / 6), and the two
//           prism families B, C (dt^3 / 2)
// Weights sum to T^n / n!. Throws InvalidOrder / InvalidInput.
JumpTimeGrid build_grid(int order, double T, int n_grid);

// Closed-form trajectory count: 1 + N N_J (+ N(N+1)/2 N_J^2 (+ N(N^2 - 2N + 2) N_J^3)).
std::uint64_t count_trajectories(int order, std::uint64_t n_grid, std::uint64_t n_jumps);

// Trajectories actually enumerated for the grids above:
// 1 + sum_{k<=order} |grid_k| N_J^k.
std::uint64_t enumerated_trajectories(int order, std::uint64_t n_grid, std::uint64_t n_jumps);

// |grid_k| for a given order k, from the set definitions.
std::uint64_t grid_point_count(int order, std::uint64_t n_grid);

}  // namespace dqj
