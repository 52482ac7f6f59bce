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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tetrisyk/estimators.hpp"
#include "tetrisyk/noise.hpp"
#include "tetrisyk/syk.hpp"

namespace tetrisyk {

/// Gate-angle rule applied per disorder instance with 1-norm mu:
/// alpha * optimal_angle, alpha * shallow_angle (kShallow and kScaled), or a
/// fixed value.
struct AnglePolicy {
  enum class Kind { kOptimal, kShallow, kScaled, kFixed };

  Kind kind = Kind::kOptimal;
  double alpha = 1.0;
  double value = 0.0;  // kFixed

  double angle(double time, double one_norm) const;
  std::string describe() const;
};

inline constexpr std::array<EchoObservable, 3> kEchoObservables = {
    EchoObservable::kIdentityOnSystem, EchoObservable::kProjectZero, EchoObservable::kProjectZeroMitigated};

/// Interferometric Loschmidt-echo runs: ancilla in |+>, TETRIS circuit U
/// controlled on ancilla = 1, ancilla read out in X and system in Z.
///
/// Circuit c runs on disorder member c % instances of the ensemble rooted at
/// params.seed; instances = 0 draws a fresh member per circuit.
struct EchoSetup {
  SykParams params;
  int instances = 1;
  double time = 0.0;
  AnglePolicy angle;
  NoiseSpec noise;
  std::size_t circuits = 1000;
  std::size_t shots_per_circuit = 1;  // 0: exact per-circuit expectation values
  std::uint64_t circuit_seed = 0;
  bool exact_reference = true;
  int workers = 1;

  void validate() const;
  std::uint64_t instance_of(std::size_t circuit) const;
};

struct EchoCircuitRecord {
  std::size_t circuit = 0;
  std::uint64_t instance = 0;
  double gate_angle = 0.0;
  double lambda = 1.0;
  std::int64_t tq_gates = 0;
  std::size_t rotations = 0;
  std::array<double, 3> raw{};  // per-circuit mean of shot_value, indexed like kEchoObservables
  double exact = 0.0;           // Re <0|e^{iHt}|0> of this circuit's instance
};

struct EchoRun {
  EchoSetup setup;
  std::vector<EchoCircuitRecord> circuits;

  /// Mean over circuits of each circuit's exact value.
  double exact_mean() const;
  double mean_tq_gates() const;
  double mean_gate_angle() const;
  EstimateRecord estimate(EchoObservable observable) const;
};

EchoRun run_echo(const EchoSetup& setup);

}  // namespace tetrisyk
