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

#include "tetrisyk/estimators.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "tetrisyk/errors.hpp"

namespace tetrisyk {
namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("LGAE needs 0 < alpha < 1");
}

}  // namespace

std::string to_string(EchoObservable o) {
  switch (o) {
    case EchoObservable::kIdentityOnSystem: return "identity";
    case EchoObservable::kProjectZero: return "project_zero";
    case EchoObservable::kProjectZeroMitigated: return "project_zero_mit";
  }
  return "?";
}

EchoObservable echo_observable_from_string(const std::string& name) {
  if (name == "identity") return EchoObservable::kIdentityOnSystem;
  if (name == "project_zero") return EchoObservable::kProjectZero;
  if (name == "project_zero_mit") return EchoObservable::kProjectZeroMitigated;
  throw ParameterError("unknown observable '" + name + "'");
}

double diagonal_value(std::uint64_t system_bits, EchoObservable observable) {
  switch (observable) {
    case EchoObservable::kIdentityOnSystem: return 1.0;
    case EchoObservable::kProjectZero: return system_bits == 0 ? 1.0 : 0.0;
    case EchoObservable::kProjectZeroMitigated: return std::popcount(system_bits) <= 1 ? 1.0 : 0.0;
  }
  return 0.0;
}

double shot_value(const ShotOutcome& shot, EchoObservable observable) {
  const double v = diagonal_value(shot.system_bits, observable);
  return shot.ancilla_bit ? -v : v;
}

MeanAndError mean_and_error(std::span<const double> values) {
  MeanAndError out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / values.size();
  if (values.size() < 2) {
    out.stderr = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.stderr = std::sqrt(ss / (values.size() - 1) / values.size());
  out.stderr_defined = true;
  return out;
}

EstimateRecord estimate(std::span<const std::vector<ShotOutcome>> shots_by_circuit, EchoObservable observable,
                        std::span<const double> lambdas) {
  if (shots_by_circuit.empty()) throw ParameterError("no circuits to estimate from");
  if (lambdas.size() != shots_by_circuit.size()) throw DimensionError("one lambda per circuit required");
  std::vector<double> circuit_means;
  circuit_means.reserve(shots_by_circuit.size());
  double lambda_sum = 0.0;
  for (std::size_t c = 0; c < shots_by_circuit.size(); ++c) {
    const auto& shots = shots_by_circuit[c];
    if (shots.empty()) throw ParameterError("circuit without shots");
    if (!(lambdas[c] > 0.0)) throw ParameterError("attenuation must be positive");
    double sum = 0.0;
    for (const auto& shot : shots) sum += shot_value(shot, observable);
    circuit_means.push_back(sum / shots.size() / lambdas[c]);
    lambda_sum += lambdas[c];
  }
  const auto summary = mean_and_error(circuit_means);
  EstimateRecord record;
  record.observable = observable;
  record.mean = summary.mean;
  record.stderr = summary.stderr;
  record.stderr_defined = summary.stderr_defined;
  record.lambda = lambda_sum / shots_by_circuit.size();
  record.circuits = shots_by_circuit.size();
  record.shots_per_circuit = shots_by_circuit.front().size();
  return record;
}

EstimateRecord estimate(std::span<const std::vector<ShotOutcome>> shots_by_circuit, EchoObservable observable,
                        double lambda) {
  const std::vector<double> lambdas(shots_by_circuit.size(), lambda);
  return estimate(shots_by_circuit, observable, lambdas);
}

Extrapolation lgae_linear(double y0, double sigma0, double y_alpha, double sigma_alpha, double alpha) {
  check_alpha(alpha);
  return {(y0 - alpha * y_alpha) / (1 - alpha),
          std::sqrt(sigma0 * sigma0 + alpha * alpha * sigma_alpha * sigma_alpha) / (1 - alpha), false};
}

Extrapolation lgae_exponential(double y0, double sigma0, double y_alpha, double sigma_alpha, double alpha) {
  check_alpha(alpha);
  if (!(y0 > 0.0) || !(y_alpha > 0.0)) {
    throw DomainError("exponential LGAE needs positive inputs, got y0 = " + std::to_string(y0) +
                      ", y_alpha = " + std::to_string(y_alpha));
  }
  Extrapolation out;
  out.value = std::exp((std::log(y0) - alpha * std::log(y_alpha)) / (1 - alpha));
  out.stderr = out.value / (1 - alpha) *
               std::sqrt(alpha * alpha * sigma_alpha * sigma_alpha / (y_alpha * y_alpha) + sigma0 * sigma0 / (y0 * y0));
  out.low_confidence = y0 < 3 * sigma0 || y_alpha < 3 * sigma_alpha || out.stderr > 0.5 * out.value;
  return out;
}

ShotSplit optimal_shot_split(double s0, double s_alpha, double alpha) {
  check_alpha(alpha);
  if (!(s0 > 0.0) || !(s_alpha > 0.0)) throw ParameterError("shot deviations must be positive");
  return {s0 / (s0 + alpha * s_alpha), (s0 + alpha * s_alpha) / (1 - alpha)};
}

double lgae_sigma_for_budget(double s0, double s_alpha, double alpha, double fraction_shallow, double total_shots) {
  check_alpha(alpha);
  if (!(fraction_shallow > 0.0 && fraction_shallow < 1.0)) throw ParameterError("fraction must lie in (0, 1)");
  const double v0 = s0 * s0 / (fraction_shallow * total_shots);
  const double va = s_alpha * s_alpha / ((1 - fraction_shallow) * total_shots);
  return std::sqrt(v0 + alpha * alpha * va) / (1 - alpha);
}

}  // namespace tetrisyk
