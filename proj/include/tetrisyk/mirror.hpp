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

#include "tetrisyk/echo.hpp"
#include "tetrisyk/estimators.hpp"
#include "tetrisyk/noise.hpp"
#include "tetrisyk/syk.hpp"

namespace tetrisyk {

/// One point of a mirror benchmark. Circuit c runs on disorder member
/// c % instances of the ensemble rooted at params.seed.
struct MirrorRunSpec {
  SykParams params;
  int instances = 1;
  double time = 0.0;
  AnglePolicy angle;  // evaluated per instance
  NoiseSpec noise = NoiseSpec::per_gate(0.0);
  std::size_t circuits = 100;
  std::size_t shots_per_circuit = 0;  // 0: exact per-circuit expectation values
  std::uint64_t circuit_seed = 0;
  int workers = 1;
};

struct MirrorOnAverageResult {
  MeanAndError survival;     // lambda^-2 <X (x) I>, ideal value 1
  MeanAndError local_obs;    // lambda^-2 <X (x) O_loc>, O_loc = (1/L) sum_j Z_j
  double mean_tq_gates = 0;  // accounted gates of U and U' together
  double mean_lambda = 0;
};

struct StandardMirrorResult {
  MeanAndError survival;     // |<0|U^-1 U|0>|^2 under noise
  double mean_tq_gates = 0;  // accounted gates of U and U^-1 together
};

/// U on the ancilla-0 branch, an independent U' with the same tau and t on
/// the ancilla-1 branch, ancilla read out in X.
MirrorOnAverageResult mirror_on_average(const MirrorRunSpec& run);

/// U followed by its exact gate-by-gate inverse, both under the same noise.
StandardMirrorResult standard_mirror(const MirrorRunSpec& run);

/// <0|e^{-iHt} O_loc e^{iHt}|0> averaged over the run's disorder pool.
double exact_local_observable(const MirrorRunSpec& run);

/// (1/L) sum_j (-1)^{b_j}.
double local_z_value(std::uint64_t system_bits, int num_qubits);

}  // namespace tetrisyk
