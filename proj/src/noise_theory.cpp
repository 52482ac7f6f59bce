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

#include "tetrisyk/noise_theory.hpp"

#include <cmath>

#include "tetrisyk/errors.hpp"

namespace tetrisyk {
namespace {

using cplx = std::complex<double>;

double check_inputs(const NoiseModelInputs& in) {
  const std::size_t n = in.times.size();
  if (n < 2) throw ParameterError("noise model needs at least two grid points");
  if (in.loschmidt.size() != n || in.trace.size() != n) throw ParameterError("tabulations do not match the grid");
  if (in.times.front() != 0.0) throw ParameterError("time grid must start at 0");
  const double step = in.times[1] - in.times[0];
  if (!(step > 0.0)) throw ParameterError("time grid must be increasing");
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs((in.times[i] - in.times[i - 1]) - step) > 1e-9 * std::max(1.0, step)) {
      throw ParameterError("time grid must be uniform");
    }
  }
  if (std::abs(in.loschmidt[0] - 1.0) > 1e-9 || std::abs(in.trace[0] - 1.0) > 1e-9) {
    throw ParameterError("tabulations must satisfy g(0) = h(0) = 1");
  }
  if (!(in.rate_q >= 0.0)) throw ParameterError("rate q must be non-negative");
  return step;
}

cplx kernel(const NoiseModelInputs& in, std::size_t i) {
  switch (in.observable) {
    case NoiseObservable::kIdentity: return in.trace[i];
    case NoiseObservable::kProjectZero: return in.loschmidt[i] / std::ldexp(1.0, in.num_qubits);
  }
  throw ParameterError("unsupported observable");
}

/// Trapezoid of f(j) over j = 0..n with spacing `step`.
template <typename F>
cplx trapezoid(std::size_t n, double step, F&& f) {
  if (n == 0) return 0.0;
  cplx acc = 0.5 * (f(0) + f(n));
  for (std::size_t j = 1; j < n; ++j) acc += f(j);
  return acc * step;
}

}  // namespace

std::vector<cplx> solve_F(const NoiseModelInputs& in) {
  const double step = check_inputs(in);
  const std::size_t n = in.times.size();
  std::vector<cplx> f(n);
  f[0] = in.loschmidt[0];
  const double q = in.rate_q;
  const double diag = 1.0 - 0.5 * q * step * in.trace[0].real();
  for (std::size_t i = 1; i < n; ++i) {
    cplx acc = 0.5 * in.trace[i] * f[0];
    for (std::size_t j = 1; j < i; ++j) acc += in.trace[i - j] * f[j];
    f[i] = (in.loschmidt[i] + q * step * acc) / diag;
  }
  return f;
}

cplx noisy_expectation(const NoiseModelInputs& in, std::span<const cplx> f) {
  const double step = check_inputs(in);
  const std::size_t n = in.times.size() - 1;
  if (f.size() != in.times.size()) throw ParameterError("F does not match the grid");
  const double t = in.times.back();
  const double damp = std::exp(-in.rate_q * t);
  const cplx integral = trapezoid(n, step, [&](std::size_t j) { return kernel(in, n - j) * f[j]; });
  return in.lambda * damp * (in.loschmidt[n] + in.rate_q * integral);
}

cplx perturbative_expectation(const NoiseModelInputs& in, int order) {
  const double step = check_inputs(in);
  if (order < 0 || order > 2) throw ParameterError("perturbative order must be 0, 1 or 2");
  const std::size_t n = in.times.size() - 1;
  const double q = in.rate_q;
  cplx series = in.loschmidt[n];
  if (order >= 1) {
    series += q * trapezoid(n, step, [&](std::size_t i) { return in.loschmidt[i] * kernel(in, n - i); });
  }
  if (order >= 2) {
    // int_0^t dt1 K_O(t - t1) int_0^t1 dt2 g(t2) h(t1 - t2)
    std::vector<cplx> inner(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      inner[i] = trapezoid(i, step, [&](std::size_t j) { return in.loschmidt[j] * in.trace[i - j]; });
    }
    series += q * q * trapezoid(n, step, [&](std::size_t i) { return inner[i] * kernel(in, n - i); });
  }
  return in.lambda * std::exp(-q * in.times.back()) * series;
}

std::vector<cplx> picard_F(const NoiseModelInputs& in, int iterations) {
  const double step = check_inputs(in);
  if (iterations < 0) throw ParameterError("Picard iteration count must be non-negative");
  const std::size_t n = in.times.size();
  std::vector<cplx> f(in.loschmidt.begin(), in.loschmidt.end());
  for (int k = 0; k < iterations; ++k) {
    std::vector<cplx> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = in.loschmidt[i] + in.rate_q * trapezoid(i, step, [&](std::size_t j) { return in.trace[i - j] * f[j]; });
    }
    f = std::move(next);
  }
  return f;
}

cplx picard_expectation(const NoiseModelInputs& in, int iterations) {
  return noisy_expectation(in, picard_F(in, iterations));
}

SpectralTabulation tabulate(const SpectralDecomposition& spectrum, double step, std::size_t points) {
  SpectralTabulation table;
  table.step = step;
  table.num_qubits = spectrum.num_qubits();
  table.loschmidt.reserve(points);
  table.trace.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    table.loschmidt.push_back(spectrum.loschmidt(i * step));
    table.trace.push_back(spectrum.normalized_trace(i * step));
  }
  return table;
}

SpectralTabulation average(std::span<const SpectralTabulation> tables) {
  if (tables.empty()) throw ParameterError("nothing to average");
  SpectralTabulation out = tables.front();
  for (std::size_t k = 1; k < tables.size(); ++k) {
    const auto& t = tables[k];
    if (t.loschmidt.size() != out.loschmidt.size() || t.step != out.step || t.num_qubits != out.num_qubits) {
      throw ParameterError("tabulations on different grids");
    }
    for (std::size_t i = 0; i < out.loschmidt.size(); ++i) {
      out.loschmidt[i] += t.loschmidt[i];
      out.trace[i] += t.trace[i];
    }
  }
  for (std::size_t i = 0; i < out.loschmidt.size(); ++i) {
    out.loschmidt[i] /= static_cast<double>(tables.size());
    out.trace[i] /= static_cast<double>(tables.size());
  }
  return out;
}

NoiseModelInputs model_inputs(const SpectralTabulation& table, double t, double rate_q, double lambda,
                              NoiseObservable observable) {
  const double index = t / table.step;
  const auto n = static_cast<std::size_t>(std::llround(index));
  if (std::abs(index - n) > 1e-6 || n >= table.loschmidt.size()) {
    throw ParameterError("time " + std::to_string(t) + " is not on the tabulated grid");
  }
  if (n == 0) throw ParameterError("noise model needs t > 0");
  NoiseModelInputs in;
  in.times.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) in.times[i] = i * table.step;
  in.loschmidt.assign(table.loschmidt.begin(), table.loschmidt.begin() + n + 1);
  in.trace.assign(table.trace.begin(), table.trace.begin() + n + 1);
  in.rate_q = rate_q;
  in.lambda = lambda;
  in.observable = observable;
  in.num_qubits = table.num_qubits;
  return in;
}

double predict_estimate(const SpectralTabulation& table, double beta, double rate_multiplier,
                        NoiseObservable observable, double t) {
  const auto in = model_inputs(table, t, rate_multiplier * beta * t, 1.0, observable);
  return noisy_expectation(in, solve_F(in)).real();
}

BetaFit fit_beta(const SpectralTabulation& table, std::span<const BetaDataPoint> data, double beta_guess) {
  if (data.size() < 3) throw FitError("beta fit needs at least three time points");
  for (const auto& d : data) {
    if (!(d.sigma > 0.0) || !std::isfinite(d.sigma)) throw FitError("degenerate weight in beta fit");
  }
  auto chi2_at = [&](double beta) {
    double chi2 = 0.0;
    for (const auto& d : data) {
      const double r = (d.value - predict_estimate(table, beta, 1.0, NoiseObservable::kProjectZero, d.t)) / d.sigma;
      chi2 += r * r;
    }
    return chi2;
  };
  auto normal = [&](double beta, double& jtj, double& jtr) {
    const double h = 1e-6 * std::max(1.0, std::abs(beta));
    jtj = jtr = 0.0;
    for (const auto& d : data) {
      const double m = predict_estimate(table, beta, 1.0, NoiseObservable::kProjectZero, d.t);
      const double dm = (predict_estimate(table, beta + h, 1.0, NoiseObservable::kProjectZero, d.t) -
                         predict_estimate(table, std::max(0.0, beta - h), 1.0, NoiseObservable::kProjectZero, d.t)) /
                        (beta + h - std::max(0.0, beta - h));
      jtj += dm * dm / (d.sigma * d.sigma);
      jtr += dm * (d.value - m) / (d.sigma * d.sigma);
    }
  };

  double beta = std::max(0.0, beta_guess);
  double chi2 = chi2_at(beta);
  for (int iter = 0; iter < 100; ++iter) {
    double jtj = 0.0, jtr = 0.0;
    normal(beta, jtj, jtr);
    if (!(jtj > 0.0)) throw FitError("beta fit has no sensitivity to beta");
    double delta = jtr / jtj;
    double trial = std::max(0.0, beta + delta);
    double trial_chi2 = chi2_at(trial);
    int halvings = 0;
    while (trial_chi2 > chi2 && halvings < 30) {
      delta *= 0.5;
      trial = std::max(0.0, beta + delta);
      trial_chi2 = chi2_at(trial);
      ++halvings;
    }
    if (trial_chi2 > chi2) break;
    const bool converged = std::abs(trial - beta) < 1e-10 * std::max(1.0, beta);
    beta = trial;
    chi2 = trial_chi2;
    if (converged) break;
  }
  double jtj = 0.0, jtr = 0.0;
  normal(beta, jtj, jtr);
  if (!(jtj > 0.0)) throw FitError("beta fit has no sensitivity to beta");
  BetaFit fit;
  fit.beta = beta;
  fit.covariance = 1.0 / jtj;
  fit.stderr = std::sqrt(fit.covariance);
  fit.chi2 = chi2;
  fit.points = static_cast<int>(data.size());
  return fit;
}

double errors_per_tq_gate(double beta, double t, double tq_gates) { return beta * t * t / tq_gates; }

}  // namespace tetrisyk
