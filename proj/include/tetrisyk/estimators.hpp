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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tetrisyk/state_vector.hpp"

namespace tetrisyk {

/// System observables measured alongside X on the ancilla. All are diagonal
/// in the Z basis.
enum class EchoObservable {
  kIdentityOnSystem,      // O = I
  kProjectZero,           // O = |0...0><0...0|
  kProjectZeroMitigated,  // O = projector on Hamming weight <= 1
};

std::string to_string(EchoObservable o);
EchoObservable echo_observable_from_string(const std::string& name);

/// (-1)^ancilla_bit * O(system_bits).
double shot_value(const ShotOutcome& shot, EchoObservable observable);

/// O(b) as a diagonal entry.
double diagonal_value(std::uint64_t system_bits, EchoObservable observable);

struct EstimateRecord {
  EchoObservable observable = EchoObservable::kIdentityOnSystem;
  double mean = 0.0;    // y, already rescaled by 1/lambda
  double stderr = 0.0;  // over circuit-level means
  bool stderr_defined = false;
  double lambda = 1.0;  // mean attenuation used
  std::size_t circuits = 0;
  std::size_t shots_per_circuit = 0;
  double gate_angle = 0.0;
  double alpha = 1.0;
  double time = 0.0;
  std::uint64_t disorder_seed = 0;
  std::uint64_t circuit_seed = 0;
};

struct MeanAndError {
  double mean = 0.0;
  double stderr = 0.0;
  bool stderr_defined = false;
};

/// Sample mean and standard error of i.i.d. values.
MeanAndError mean_and_error(std::span<const double> values);

/// y = mean over circuits of lambda^-1 * (mean over that circuit's shots of
/// the per-shot value). Circuits are the i.i.d. unit for the error.
EstimateRecord estimate(std::span<const std::vector<ShotOutcome>> shots_by_circuit, EchoObservable observable,
                        double lambda);
/// Same with a per-circuit lambda (disorder-dependent one-norm).
EstimateRecord estimate(std::span<const std::vector<ShotOutcome>> shots_by_circuit, EchoObservable observable,
                        std::span<const double> lambdas);

struct Extrapolation {
  double value = 0.0;
  double stderr = 0.0;
  bool low_confidence = false;
};

/// (y0 - alpha y_alpha)/(1 - alpha), sigma = sqrt(s0^2 + alpha^2 s_alpha^2)/(1 - alpha).
Extrapolation lgae_linear(double y0, double sigma0, double y_alpha, double sigma_alpha, double alpha);

/// exp[(log y0 - alpha log y_alpha)/(1 - alpha)] with first-order error
/// propagation. Non-positive inputs throw DomainError. Flagged low-confidence
/// when either input is within three standard errors of zero or the output
/// relative error exceeds one half.
Extrapolation lgae_exponential(double y0, double sigma0, double y_alpha, double sigma_alpha, double alpha);

struct ShotSplit {
  double fraction_shallow = 0.0;  // x, share of shots on the tau0 circuits
  double sigma = 0.0;             // minimal sigma_LGAE per unit total shots
};

/// Minimizes sqrt(s0^2/x + alpha^2 s_alpha^2/(1 - x))/(1 - alpha), where
/// s0, s_alpha are single-shot deviations and the total shot budget is 1.
ShotSplit optimal_shot_split(double s0, double s_alpha, double alpha);

/// sigma_LGAE for an explicit budget of `total_shots`.
double lgae_sigma_for_budget(double s0, double s_alpha, double alpha, double fraction_shallow, double total_shots);

}  // namespace tetrisyk
