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
#include <string>
#include <utility>
#include <vector>

#include "tetrisyk/hamiltonian.hpp"
#include "tetrisyk/noise.hpp"
#include "tetrisyk/rng.hpp"
#include "tetrisyk/state_vector.hpp"

namespace tetrisyk {

struct TetrisConfig {
  double gate_angle = 0.0;  // tau in (0, pi/2)
  double time = 0.0;        // t >= 0, units of 1/J
};

/// Rotation exp(i sign tau P_term).
struct TetrisEvent {
  std::uint32_t term = 0;
  int sign = 1;

  friend bool operator==(const TetrisEvent&, const TetrisEvent&) = default;
};

/// One sampled random unitary U = prod_k exp(i s_k tau P_{n_k}).
struct TetrisCircuit {
  std::vector<TetrisEvent> events;
  double gate_angle = 0.0;
  double time = 0.0;
  std::int64_t tq_gate_estimate = 0;

  std::size_t rotation_count() const { return events.size(); }
};

/// Two-qubit gate cost of one Pauli gadget.
enum class GadgetCost {
  kLadder,            // CNOT ladder in and out: 2(w - 1)
  kControlledLadder,  // ladder plus an ancilla-controlled centre rotation: 2w
};

std::int64_t tq_gates_for_rotation(const SignedPauliString& p, GadgetCost cost = GadgetCost::kLadder);

/// Qubit pairs of the ladder in execution order: (s0,s1), ..., (s_{w-2},s_{w-1}),
/// then the same pairs reversed.
std::vector<std::pair<int, int>> gadget_gate_pairs(const SignedPauliString& p);

/// lambda = exp(-t mu tan(tau/2)).
double attenuation(double time, double one_norm, double gate_angle);
double attenuation(const PauliHamiltonian& h, const TetrisConfig& config);

/// t mu / sin(tau).
double expected_rotation_count(double time, double one_norm, double gate_angle);

/// min(1/(t mu), pi/2 - 1e-6).
double optimal_angle(double time, double one_norm);
/// Shallow hardware angle 1.5/(t mu), clamped like optimal_angle.
double shallow_angle(double time, double one_norm);

/// Draws M ~ Poisson(t mu / sin tau) and M i.i.d. terms with P(n) = |c_n| / mu.
/// I.i.d. labels are already in uniformly random order, which is the law of
/// the merged Poisson streams for a time-independent H.
TetrisCircuit sample_circuit(const PauliHamiltonian& h, const TetrisConfig& config, Rng& rng);

/// Reversed events with negated angles: the exact inverse U^dagger.
TetrisCircuit inverse(const TetrisCircuit& circuit);

/// Accounted two-qubit gates seen during execution, in order.
using GateTrace = std::vector<std::pair<int, int>>;

/// Executes the circuit on `state`, each rotation restricted to `branch`.
/// Per-gate noise is injected on each accounted gate's pair: pairs of the
/// compute half of a gadget just before the rotation, pairs of the
/// uncompute half just after it. Global noise places the rotations at sorted
/// uniform times in [0, t] and runs the Poisson clock over every gap.
void run_conditional(const TetrisCircuit& circuit, const PauliHamiltonian& h, StateVector& state, Control branch,
                     const NoiseSpec& noise, Rng& noise_rng, GateTrace* trace = nullptr);

std::string to_json(const TetrisCircuit& circuit, std::uint64_t seed, int indent = -1);
TetrisCircuit circuit_from_json(const std::string& text, std::uint64_t* seed = nullptr);

}  // namespace tetrisyk
