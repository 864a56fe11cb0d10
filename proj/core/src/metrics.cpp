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

#include "dqj/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "dqj/errors.hpp"

namespace dqj {
namespace {

constexpr double kDensityTol = 1e-6;

void check_density(const DensityMatrix& rho, const char* which) {
  const double trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (trace_error > kDensityTol || rho.hermiticity_error() > kDensityTol) {
    throw NotADensityMatrix(std::string("fidelity: ") + which + " has trace error " +
                            std::to_string(trace_error));
  }
  const double lmin = rho.min_eigenvalue();
  if (lmin < -kDensityTol) {
    throw NotADensityMatrix(std::string("fidelity: ") + which + " has eigenvalue " +
                            std::to_string(lmin));
  }
}

}  // namespace

std::vector<double> ObservableSeries::real_values() const {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.real());
  return out;
}

double fidelity(const DensityMatrix& sigma, const DensityMatrix& rho) {
  if (sigma.dim() != rho.dim()) throw DimensionMismatch("fidelity: dimensions differ");
  check_density(sigma, "sigma");
  check_density(rho, "rho");
  const CMatrix s = sigma.symmetrized().entries();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s);
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const CMatrix sqrt_sigma = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
  CMatrix m = sqrt_sigma * rho.entries() * sqrt_sigma;
  m = 0.5 * (m + m.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> em(m, Eigen::EigenvaluesOnly);
  const double tr = em.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(tr * tr, 0.0, 1.0);
}

double infidelity(const DensityMatrix& sigma, const DensityMatrix& rho) {
  return 1.0 - fidelity(sigma, rho);
}

ObservableSeries observable_trace(const DensityMatrixSeries& series, const OperatorMatrix& op) {
  ObservableSeries out;
  out.times = series.times();
  const bool hermitian = op.is_hermitian();
  for (const auto& rho : series.states()) {
    if (rho.dim() != op.dim()) throw DimensionMismatch("observable_trace: dimensions differ");
    Complex v = (rho.entries() * op.entries()).trace();
    if (hermitian) {
      if (std::abs(v.imag()) > 1e-9) {
        throw NumericalError("observable_trace: imaginary residue " + std::to_string(v.imag()));
      }
      v = Complex(v.real(), 0.0);
    }
    out.values.push_back(v);
  }
  return out;
}

Complex spectrum(const ObservableSeries& series, double omega) {
  const auto& t = series.times;
  if (t.size() != series.values.size()) throw DimensionMismatch("spectrum: times and values differ");
  Complex sum(0.0, 0.0);
  for (std::size_t i = 1; i < t.size(); ++i) {
    const Complex a = series.values[i - 1] * std::exp(Complex(0.0, -omega * t[i - 1]));
    const Complex b = series.values[i] * std::exp(Complex(0.0, -omega * t[i]));
    sum += 0.5 * (t[i] - t[i - 1]) * (a + b);
  }
  return sum;
}

ScalingFit fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys,
                            std::size_t first, std::size_t last) {
  if (xs.size() != ys.size()) throw DegenerateWindow("fit_loglog_slope: xs and ys differ in length");
  if (last > xs.size() || first >= last || last - first < 3) {
    throw DegenerateWindow("fit_loglog_slope: window needs at least 3 points");
  }
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = first; i < last; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw DegenerateWindow("fit_loglog_slope: values must be positive");
    }
    if (i > first && !(xs[i] > xs[i - 1])) {
      throw DegenerateWindow("fit_loglog_slope: xs must be strictly increasing");
    }
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  ScalingFit fit;
  fit.first = first;
  fit.last = last;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

double spectral_norm_distance(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("spectral_norm_distance: shapes differ");
  }
  Eigen::JacobiSVD<CMatrix> svd(a - b);
  return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()(0);
}

double max_abs_difference(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("max_abs_difference: shapes differ");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace dqj
