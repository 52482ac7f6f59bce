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

#include <string>

#include "tetrisyk/rng.hpp"
#include "tetrisyk/state_vector.hpp"

namespace tetrisyk {

/// Noise applied to the system register during circuit execution.
///
/// Both channels are unraveled into Pauli trajectories:
///  - per-gate: after every accounted two-qubit gate, with probability p_dep
///    the gate's qubit pair receives a Pauli drawn uniformly from all 16
///    two-qubit Paulis (identity included), i.e. the channel
///    (1 - p) rho + p Tr_pair(rho) (x) I/4 with process fidelity 1 - 15p/16;
///  - global: events at rate q per unit of physical time, each applying a
///    Pauli drawn uniformly from all 4^L system Paulis, whose average is the
///    fully depolarizing map rho -> Tr(rho) I / 2^L.
struct NoiseSpec {
  enum class Mode { kNone, kPerGateDepolarizing, kGlobalDepolarizing };

  Mode mode = Mode::kNone;
  double p_dep = 0.0;
  double rate_q = 0.0;

  static NoiseSpec none() { return {}; }
  static NoiseSpec per_gate(double p_dep) { return {Mode::kPerGateDepolarizing, p_dep, 0.0}; }
  static NoiseSpec global(double rate_q) { return {Mode::kGlobalDepolarizing, 0.0, rate_q}; }

  bool is_noiseless() const {
    return mode == Mode::kNone || (mode == Mode::kPerGateDepolarizing && p_dep == 0.0) ||
           (mode == Mode::kGlobalDepolarizing && rate_q == 0.0);
  }
  void validate() const;
  std::string describe() const;
};

/// Context: an accounted two-qubit gate on system qubits (a, b) just finished.
struct AfterTwoQubitGate {
  int qubit_a = 0;
  int qubit_b = 0;
};

/// Context: `duration` units of physical time elapse under the global channel.
struct PoissonClock {
  double duration = 0.0;
};

/// Returns true if a non-identity Pauli was applied.
bool inject_noise(StateVector& state, const NoiseSpec& noise, const AfterTwoQubitGate& gate, Rng& rng);

/// Returns the number of depolarizing events applied.
int inject_noise(StateVector& state, const NoiseSpec& noise, const PoissonClock& clock, Rng& rng);

/// Uniform Pauli over the 4^L system Paulis (identity included).
SignedPauliString random_system_pauli(int num_qubits, Rng& rng);

}  // namespace tetrisyk
