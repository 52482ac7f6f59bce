// Copyright 2026 The tetrisyk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "tetrisyk/evolution.hpp"

namespace tetrisyk {

/// Analytic model of TETRIS estimates under a global depolarizing channel
/// acting on the system register at rate q per unit time.
///
/// With g(t) = <0|e^{iHt}|0> and h(t) = Tr[e^{iHt}]/2^L, the noisy signal is
///
///   <X(x)O> + i<Y(x)O> = e^{-qt} lambda g(t)
///                        + lambda q e^{-qt} int_0^t K_O(t - s) F(s) ds,
///   F(t) = g(t) + q int_0^t h(t - s) F(s) ds,
///
/// where K_I = h and K_{|0><0|} = g / 2^L. All normalizations use the true
/// register dimension 2^L with L = N/2.
enum class NoiseObservable { kIdentity, kProjectZero };

struct NoiseModelInputs {
  std::vector<double> times;                    // uniform, times[0] = 0, times.back() = t
  std::vector<std::complex<double>> loschmidt;  // g on the grid
  std::vector<std::complex<double>> trace;      // h on the grid
  double rate_q = 0.0;
  double lambda = 1.0;
  NoiseObservable observable = NoiseObservable::kProjectZero;
  int num_qubits = 0;
};

/// Trapezoidal marching for F on the grid. Throws ParameterError for a
/// non-uniform grid or mismatched tabulations.
std::vector<std::complex<double>> solve_F(const NoiseModelInputs& inputs);

/// Noisy <X(x)O> + i<Y(x)O> at t = times.back().
std::complex<double> noisy_expectation(const NoiseModelInputs& inputs, std::span<const std::complex<double>> F);

/// Truncation of the error-count expansion at `order` (0, 1 or 2) errors,
/// evaluated by direct nested quadrature of the multiple time integrals.
std::complex<double> perturbative_expectation(const NoiseModelInputs& inputs, int order);

/// Picard iterate F^(k) = g + q int h F^(k-1), F^(0) = g, on the grid.
std::vector<std::complex<double>> picard_F(const NoiseModelInputs& inputs, int iterations);

/// noisy_expectation evaluated with the Picard iterate F^(iterations). It
/// agrees with the error-count expansion through order q^iterations and
/// differs from the converged solution at order q^(iterations + 2).
std::complex<double> picard_expectation(const NoiseModelInputs& inputs, int iterations);

/// g and h tabulated once on [0, (points - 1) * step].
struct SpectralTabulation {
  double step = 0.0;
  std::vector<std::complex<double>> loschmidt;
  std::vector<std::complex<double>> trace;
  int num_qubits = 0;
};

SpectralTabulation tabulate(const SpectralDecomposition& spectrum, double step, std::size_t points);
/// Pointwise average of tabulations (ensemble model).
SpectralTabulation average(std::span<const SpectralTabulation> tables);

/// Inputs restricted to [0, t]; t must be a grid point.
NoiseModelInputs model_inputs(const SpectralTabulation& table, double t, double rate_q, double lambda,
                              NoiseObservable observable);

/// lambda^-1 Re <X(x)O> with q = rate_multiplier * beta * t: the model for a
/// rescaled TETRIS estimate of Re <0|e^{iHt}|0>.
double predict_estimate(const SpectralTabulation& table, double beta, double rate_multiplier,
                        NoiseObservable observable, double t);

struct BetaDataPoint {
  double t = 0.0;
  double value = 0.0;
  double sigma = 0.0;
};

struct BetaFit {
  double beta = 0.0;
  double stderr = 0.0;
  double covariance = 0.0;
  double chi2 = 0.0;
  int points = 0;
};

/// Inverse-variance weighted least squares of predict_estimate(beta, 1,
/// kProjectZero, t) against shallow-circuit |0><0| estimates. Needs >= 3
/// points with positive finite sigma; throws FitError otherwise.
BetaFit fit_beta(const SpectralTabulation& table, std::span<const BetaDataPoint> shallow_project_zero,
                 double beta_guess = 1.0);

/// Errors per two-qubit gate implied by q t = beta t^2 spread over `tq_gates`.
double errors_per_tq_gate(double beta, double t, double tq_gates);

}  // namespace tetrisyk
