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

#include <gtest/gtest.h>

#include <cmath>

#include "dqj/errors.hpp"
#include "dqj/metrics.hpp"
#include "dqj/models.hpp"

namespace dqj {
namespace {

DensityMatrix mixed(double p) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = p;
  m(1, 1) = 1.0 - p;
  return DensityMatrix(m);
}

TEST(Fidelity, SelfIsOne) {
  CMatrix m(2, 2);
  m << 0.7, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3;
  EXPECT_NEAR(fidelity(DensityMatrix(m), DensityMatrix(m)), 1.0, 1e-12);
  const auto pure = DensityMatrix::pure(StateVector{Complex(0.6, 0), Complex(0, 0.8)});
  EXPECT_NEAR(fidelity(pure, pure), 1.0, 1e-7);
}

TEST(Fidelity, OrthogonalPureStates) {
  EXPECT_NEAR(fidelity(mixed(1.0), mixed(0.0)), 0.0, 1e-14);
}

TEST(Fidelity, PureAgainstMaximallyMixed) {
  EXPECT_NEAR(fidelity(mixed(1.0), mixed(0.5)), 0.5, 1e-14);
  EXPECT_NEAR(infidelity(mixed(1.0), mixed(0.5)), 0.5, 1e-14);
}

TEST(Fidelity, Symmetric) {
  CMatrix m(2, 2);
  m << 0.6, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.4;
  const DensityMatrix a(m);
  const DensityMatrix b = mixed(0.3);
  EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-12);
}

TEST(Fidelity, RejectsInvalidMatrices) {
  EXPECT_THROW(fidelity(mixed(1.0), DensityMatrix(CMatrix::Identity(2, 2))), NotADensityMatrix);
  EXPECT_THROW(fidelity(mixed(1.2), mixed(0.5)), NotADensityMatrix);
  EXPECT_THROW(fidelity(mixed(1.0), DensityMatrix(CMatrix::Identity(3, 3) / 3.0)), DimensionMismatch);
}

TEST(ObservableTrace, Examples) {
  const DensityMatrixSeries s({0.5, 1.0}, {mixed(0.5), mixed(1.0)});
  const auto tr = observable_trace(s, pauli_z());
  ASSERT_EQ(tr.values.size(), 2u);
  EXPECT_NEAR(tr.real_values()[0], 0.0, 1e-15);
  EXPECT_NEAR(tr.real_values()[1], 1.0, 1e-15);
}

TEST(Spectrum, ConstantAtZeroFrequency) {
  ObservableSeries s;
  for (int i = 0; i <= 10; ++i) {
    s.times.push_back(0.2 * i);
    s.values.push_back(Complex(1.5, 0.0));
  }
  EXPECT_NEAR(std::abs(spectrum(s, 0.0) - Complex(3.0, 0.0)), 0.0, 1e-14);
}

TEST(Spectrum, ConstantAtNonzeroFrequency) {
  const double T = 1.0;
  const double w = 3.0;
  double previous = 0.0;
  for (int n : {100, 200}) {
    ObservableSeries s;
    for (int i = 0; i <= n; ++i) {
      s.times.push_back(T * i / n);
      s.values.push_back(Complex(2.0, 0.0));
    }
    const Complex exact = 2.0 * (1.0 - std::exp(-kI * w * T)) / (kI * w);
    const double err = std::abs(spectrum(s, w) - exact);
    EXPECT_LT(err, 1e-3);
    if (previous > 0.0) EXPECT_NEAR(previous / err, 4.0, 0.1);
    previous = err;
  }
}

TEST(Spectrum, ResonantIntegrand) {
  ObservableSeries s;
  const double w0 = 5.0;
  for (int i = 0; i <= 64; ++i) {
    const double t = i / 64.0;
    s.times.push_back(t);
    s.values.push_back(std::exp(kI * w0 * t));
  }
  EXPECT_NEAR(std::abs(spectrum(s, w0) - Complex(1.0, 0.0)), 0.0, 1e-13);
}

TEST(FitLoglogSlope, PowerLaws) {
  std::vector<double> xs{4, 8, 16, 32, 64};
  std::vector<double> inv2, inv4, flat;
  for (double x : xs) {
    inv2.push_back(3.0 / (x * x));
    inv4.push_back(0.5 / std::pow(x, 4));
    flat.push_back(7.0);
  }
  EXPECT_NEAR(fit_loglog_slope(xs, inv2).slope, -2.0, 1e-9);
  EXPECT_NEAR(fit_loglog_slope(xs, inv4).slope, -4.0, 1e-9);
  EXPECT_NEAR(fit_loglog_slope(xs, flat).slope, 0.0, 1e-12);
  const auto window = fit_loglog_slope(xs, inv2, 1, 4);
  EXPECT_EQ(window.first, 1u);
  EXPECT_EQ(window.last, 4u);
  EXPECT_NEAR(window.residual, 0.0, 1e-12);
}

TEST(FitLoglogSlope, DegenerateWindows) {
  const std::vector<double> xs{1, 2, 3};
  EXPECT_THROW(fit_loglog_slope(xs, {1, 2, 3}, 0, 2), DegenerateWindow);
  EXPECT_THROW(fit_loglog_slope(xs, {1, 0, 3}), DegenerateWindow);
  EXPECT_THROW(fit_loglog_slope({1, 1, 2}, {1, 2, 3}), DegenerateWindow);
}

TEST(MatrixDistances, Basic) {
  CMatrix a = CMatrix::Zero(2, 2);
  CMatrix b = CMatrix::Zero(2, 2);
  b(0, 1) = Complex(0.0, 3.0);
  b(1, 1) = -1.0;
  EXPECT_NEAR(spectral_norm_distance(a, b), std::sqrt(10.0), 1e-14);
  EXPECT_NEAR(max_abs_difference(a, b), 3.0, 1e-14);
  EXPECT_THROW(spectral_norm_distance(a, CMatrix::Zero(3, 3)), DimensionMismatch);
}

}  // namespace
}  // namespace dqj
