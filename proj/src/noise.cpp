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

#include "tetrisyk/noise.hpp"

#include <random>
#include <sstream>

namespace tetrisyk {

void NoiseSpec::validate() const {
  if (!(p_dep >= 0.0 && p_dep <= 1.0)) throw ParameterError("p_dep must lie in [0, 1]");
  if (!(rate_q >= 0.0)) throw ParameterError("rate_q must be non-negative");
}

std::string NoiseSpec::describe() const {
  std::ostringstream out;
  switch (mode) {
    case Mode::kNone: out << "none"; break;
    case Mode::kPerGateDepolarizing: out << "per_gate(p_dep=" << p_dep << ")"; break;
    case Mode::kGlobalDepolarizing: out << "global(q=" << rate_q << ")"; break;
  }
  return out.str();
}

SignedPauliString random_system_pauli(int num_qubits, Rng& rng) {
  const std::uint64_t mask = num_qubits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << num_qubits) - 1;
  return {num_qubits, rng() & mask, rng() & mask, 0};
}

bool inject_noise(StateVector& state, const NoiseSpec& noise, const AfterTwoQubitGate& gate, Rng& rng) {
  if (noise.mode != NoiseSpec::Mode::kPerGateDepolarizing || noise.p_dep == 0.0) return false;
  if (!(rng.uniform() < noise.p_dep)) return false;
  const unsigned draw = static_cast<unsigned>(rng() & 15U);
  if (draw == 0) return false;
  const std::uint64_t a = std::uint64_t{1} << gate.qubit_a;
  const std::uint64_t b = std::uint64_t{1} << gate.qubit_b;
  // draw = 2 bits per qubit: (x, z).
  const std::uint64_t x = ((draw & 1U) ? a : 0) | ((draw & 4U) ? b : 0);
  const std::uint64_t z = ((draw & 2U) ? a : 0) | ((draw & 8U) ? b : 0);
  apply_pauli(state, SignedPauliString(state.system_qubits(), x, z, 0));
  return true;
}

int inject_noise(StateVector& state, const NoiseSpec& noise, const PoissonClock& clock, Rng& rng) {
  if (noise.mode != NoiseSpec::Mode::kGlobalDepolarizing || noise.rate_q == 0.0 || clock.duration <= 0.0) {
    return 0;
  }
  const int events = std::poisson_distribution<int>(noise.rate_q * clock.duration)(rng);
  for (int e = 0; e < events; ++e) {
    const auto p = random_system_pauli(state.system_qubits(), rng);
    if (p.weight() > 0) apply_pauli(state, p);
  }
  return events;
}

}  // namespace tetrisyk
