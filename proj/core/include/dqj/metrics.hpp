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

#include <cstddef>
#include <vector>

#include "dqj/lindblad.hpp"
#include "dqj/quantum_state.hpp"

namespace dqj {

struct ObservableSeries {
  std::vector<double> times;
  std::vector<Complex> values;

  std::vector<double> real_values() const;
};

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t first = 0;  // window [first, last)
  std::size_t last = 0;
  double residual = 0.0;  // rms deviation in log space
};

// (Tr sqrt(sqrt(sigma) rho sqrt(sigma)))^2 in [0, 1]. Throws NotADensityMatrix
// when either argument misses unit trace or positivity by more than 1e-6.
double fidelity(const DensityMatrix& sigma, const DensityMatrix& rho);
double infidelity(const DensityMatrix& sigma, const DensityMatrix& rho);

// Tr(rho(t) O) at every recorded time. Hermitian O yields real values; an
// imaginary residue above 1e-9 is reported as NumericalError.
ObservableSeries observable_trace(const DensityMatrixSeries& series, const OperatorMatrix& op);

// S(w) = int_0^T <O(t)> exp(-i w t) dt by the trapezoidal rule on the series times.
Complex spectrum(const ObservableSeries& series, double omega);

// Least squares on (log x, log y) over the index window [first, last).
ScalingFit fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys,
                            std::size_t first, std::size_t last);
inline ScalingFit fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  return fit_loglog_slope(xs, ys, 0, xs.size());
}

// Largest singular value of a - b.
double spectral_norm_distance(const CMatrix& a, const CMatrix& b);
double max_abs_difference(const CMatrix& a, const CMatrix& b);

}  // namespace dqj
