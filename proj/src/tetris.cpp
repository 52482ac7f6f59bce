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

#include "tetrisyk/tetris.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "json.hpp"

namespace tetrisyk {
namespace {

constexpr double kMaxAngle = std::numbers::pi / 2 - 1e-6;

void validate(const TetrisConfig& config) {
  if (!(config.gate_angle > 0.0 && config.gate_angle < std::numbers::pi / 2)) {
    throw ParameterError("gate angle must lie in (0, pi/2)");
  }
  if (!(config.time >= 0.0)) throw ParameterError("evolution time must be non-negative");
}

}  // namespace

std::int64_t tq_gates_for_rotation(const SignedPauliString& p, GadgetCost cost) {
  const int w = p.weight();
  if (w == 0) return 0;
  return cost == GadgetCost::kLadder ? 2 * (w - 1) : 2 * w;
}

std::vector<std::pair<int, int>> gadget_gate_pairs(const SignedPauliString& p) {
  std::vector<int> qubits;
  for (std::uint64_t s = p.support(); s != 0; s &= s - 1) qubits.push_back(std::countr_zero(s));
  std::vector<std::pair<int, int>> pairs;
  if (qubits.size() < 2) return pairs;
  for (std::size_t i = 0; i + 1 < qubits.size(); ++i) pairs.emplace_back(qubits[i], qubits[i + 1]);
  for (std::size_t i = qubits.size() - 1; i-- > 0;) pairs.emplace_back(qubits[i], qubits[i + 1]);
  return pairs;
}

double attenuation(double time, double one_norm, double gate_angle) {
  return std::exp(-time * one_norm * std::tan(gate_angle / 2));
}

double attenuation(const PauliHamiltonian& h, const TetrisConfig& config) {
  return attenuation(config.time, h.one_norm(), config.gate_angle);
}

double expected_rotation_count(double time, double one_norm, double gate_angle) {
  return time * one_norm / std::sin(gate_angle);
}

double optimal_angle(double time, double one_norm) {
  const double tm = time * one_norm;
  if (!(tm >= 0.0)) throw ParameterError("optimal angle needs t mu >= 0");
  return tm > 0.0 ? std::min(1.0 / tm, kMaxAngle) : kMaxAngle;
}

double shallow_angle(double time, double one_norm) { return std::min(1.5 * optimal_angle(time, one_norm), kMaxAngle); }

TetrisCircuit sample_circuit(const PauliHamiltonian& h, const TetrisConfig& config, Rng& rng) {
  validate(config);
  if (h.empty()) throw ParameterError("cannot sample a circuit for an empty Hamiltonian");
  TetrisCircuit circuit;
  circuit.gate_angle = config.gate_angle;
  circuit.time = config.time;
  const double mean = expected_rotation_count(config.time, h.one_norm(), config.gate_angle);
  if (mean == 0.0) return circuit;
  const auto count = std::poisson_distribution<std::int64_t>(mean)(rng);
  std::vector<double> weights;
  weights.reserve(h.size());
  for (const auto& term : h.terms()) weights.push_back(std::abs(term.coefficient));
  std::discrete_distribution<std::uint32_t> pick(weights.begin(), weights.end());
  circuit.events.reserve(static_cast<std::size_t>(count));
  for (std::int64_t k = 0; k < count; ++k) {
    const std::uint32_t n = pick(rng);
    circuit.events.push_back({n, h[n].coefficient < 0 ? -1 : 1});
    circuit.tq_gate_estimate += tq_gates_for_rotation(h[n].string);
  }
  return circuit;
}

TetrisCircuit inverse(const TetrisCircuit& circuit) {
  TetrisCircuit out = circuit;
  std::reverse(out.events.begin(), out.events.end());
  for (auto& e : out.events) e.sign = -e.sign;
  return out;
}

void run_conditional(const TetrisCircuit& circuit, const PauliHamiltonian& h, StateVector& state, Control branch,
                     const NoiseSpec& noise, Rng& noise_rng, GateTrace* trace) {
  const bool per_gate = noise.mode == NoiseSpec::Mode::kPerGateDepolarizing;
  const bool global = noise.mode == NoiseSpec::Mode::kGlobalDepolarizing && noise.rate_q > 0.0;

  std::vector<double> times;
  if (global) {
    times.resize(circuit.events.size());
    for (auto& t : times) t = noise_rng.uniform() * circuit.time;
    std::sort(times.begin(), times.end());
  }
  double clock = 0.0;
  for (std::size_t k = 0; k < circuit.events.size(); ++k) {
    const auto& event = circuit.events[k];
    const auto& p = h[event.term].string;
    if (global) {
      inject_noise(state, noise, PoissonClock{times[k] - clock}, noise_rng);
      clock = times[k];
    }
    if (per_gate || trace != nullptr) {
      const auto pairs = gadget_gate_pairs(p);
      const std::size_t half = pairs.size() / 2;
      for (std::size_t g = 0; g < half; ++g) {
        if (trace) trace->push_back(pairs[g]);
        if (per_gate) inject_noise(state, noise, AfterTwoQubitGate{pairs[g].first, pairs[g].second}, noise_rng);
      }
      apply_pauli_rotation(state, p, event.sign * circuit.gate_angle, branch);
      for (std::size_t g = half; g < pairs.size(); ++g) {
        if (trace) trace->push_back(pairs[g]);
        if (per_gate) inject_noise(state, noise, AfterTwoQubitGate{pairs[g].first, pairs[g].second}, noise_rng);
      }
    } else {
      apply_pauli_rotation(state, p, event.sign * circuit.gate_angle, branch);
    }
  }
  if (global) inject_noise(state, noise, PoissonClock{circuit.time - clock}, noise_rng);
}

std::string to_json(const TetrisCircuit& circuit, std::uint64_t seed, int indent) {
  nlohmann::json doc;
  doc["seed"] = seed;
  doc["gate_angle"] = circuit.gate_angle;
  doc["time"] = circuit.time;
  doc["tq_gate_estimate"] = circuit.tq_gate_estimate;
  auto events = nlohmann::json::array();
  for (const auto& e : circuit.events) events.push_back({e.term, e.sign});
  doc["events"] = std::move(events);
  return doc.dump(indent);
}

TetrisCircuit circuit_from_json(const std::string& text, std::uint64_t* seed) {
  const auto doc = nlohmann::json::parse(text);
  TetrisCircuit circuit;
  circuit.gate_angle = doc.at("gate_angle").get<double>();
  circuit.time = doc.at("time").get<double>();
  circuit.tq_gate_estimate = doc.at("tq_gate_estimate").get<std::int64_t>();
  for (const auto& e : doc.at("events")) {
    circuit.events.push_back({e.at(0).get<std::uint32_t>(), e.at(1).get<int>()});
  }
  if (seed) *seed = doc.at("seed").get<std::uint64_t>();
  return circuit;
}

}  // namespace tetrisyk
