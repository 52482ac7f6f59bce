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

#include "tetrisyk/mirror.hpp"

#include <bit>
#include <cmath>

#include "tetrisyk/evolution.hpp"
#include "tetrisyk/parallel.hpp"
#include "tetrisyk/tetris.hpp"

namespace tetrisyk {
namespace {

struct Sample {
  double survival = 0.0;
  double local = 0.0;
  double tq = 0.0;
  double lambda = 1.0;
};

std::vector<SparseSykInstance> pool(const MirrorRunSpec& run) {
  if (run.instances < 1) throw ParameterError("mirror run needs at least one disorder instance");
  run.params.validate();
  run.noise.validate();
  if (!(run.time >= 0.0)) throw ParameterError("mirror time must be non-negative");
  if (run.circuits == 0) throw ParameterError("mirror run needs at least one circuit");
  std::vector<SparseSykInstance> instances;
  for (int k = 0; k < run.instances; ++k) instances.push_back(sample_ensemble_member(run.params, k));
  return instances;
}

double angle_for(const MirrorRunSpec& run, const PauliHamiltonian& h) {
  return run.angle.angle(run.time, h.one_norm());
}

MeanAndError summarize(const std::vector<Sample>& samples, double Sample::*field) {
  std::vector<double> values;
  values.reserve(samples.size());
  for (const auto& s : samples) values.push_back(s.*field);
  return mean_and_error(values);
}

double mean_of(const std::vector<Sample>& samples, double Sample::*field) {
  double acc = 0.0;
  for (const auto& s : samples) acc += s.*field;
  return acc / static_cast<double>(samples.size());
}

}  // namespace

double local_z_value(std::uint64_t system_bits, int num_qubits) {
  return static_cast<double>(num_qubits - 2 * std::popcount(system_bits)) / num_qubits;
}

MirrorOnAverageResult mirror_on_average(const MirrorRunSpec& run) {
  const auto instances = pool(run);
  const Rng root(run.circuit_seed);
  const int L = run.params.num_qubits();
  auto samples = run_tasks<Sample>(run.circuits, run.workers, [&](std::size_t c) {
    const auto& h = instances[c % instances.size()].hamiltonian();
    const TetrisConfig config{angle_for(run, h), run.time};
    Rng circuit_rng = root.split(Stream::kCircuit, c);
    Rng noise_rng = root.split(Stream::kNoise, c);
    const TetrisCircuit u = sample_circuit(h, config, circuit_rng);
    const TetrisCircuit u_prime = sample_circuit(h, config, circuit_rng);
    StateVector state = StateVector::plus_ancilla(L);
    run_conditional(u, h, state, Control::kAncillaZero, run.noise, noise_rng);
    run_conditional(u_prime, h, state, Control::kAncillaOne, run.noise, noise_rng);
    Sample s;
    s.lambda = attenuation(h, config);
    s.tq = static_cast<double>(u.tq_gate_estimate + u_prime.tq_gate_estimate);
    const double scale = 1.0 / (s.lambda * s.lambda);
    if (run.shots_per_circuit == 0) {
      s.survival = scale * expectation_x_diagonal(state, [](std::uint64_t) { return 1.0; });
      s.local = scale * expectation_x_diagonal(state, [L](std::uint64_t b) { return local_z_value(b, L); });
    } else {
      Rng shot_rng = root.split(Stream::kShots, c);
      double survival = 0.0, local = 0.0;
      for (const auto& shot : sample_shots(state, run.shots_per_circuit, shot_rng)) {
        const double sign = shot.ancilla_bit ? -1.0 : 1.0;
        survival += sign;
        local += sign * local_z_value(shot.system_bits, L);
      }
      s.survival = scale * survival / static_cast<double>(run.shots_per_circuit);
      s.local = scale * local / static_cast<double>(run.shots_per_circuit);
    }
    return s;
  });
  MirrorOnAverageResult result;
  result.survival = summarize(samples, &Sample::survival);
  result.local_obs = summarize(samples, &Sample::local);
  result.mean_tq_gates = mean_of(samples, &Sample::tq);
  result.mean_lambda = mean_of(samples, &Sample::lambda);
  return result;
}

StandardMirrorResult standard_mirror(const MirrorRunSpec& run) {
  const auto instances = pool(run);
  const Rng root(run.circuit_seed);
  const int L = run.params.num_qubits();
  auto samples = run_tasks<Sample>(run.circuits, run.workers, [&](std::size_t c) {
    const auto& h = instances[c % instances.size()].hamiltonian();
    const TetrisConfig config{angle_for(run, h), run.time};
    Rng circuit_rng = root.split(Stream::kCircuit, c);
    Rng noise_rng = root.split(Stream::kNoise, c);
    const TetrisCircuit u = sample_circuit(h, config, circuit_rng);
    StateVector state(L, false);
    run_conditional(u, h, state, Control::kNone, run.noise, noise_rng);
    run_conditional(inverse(u), h, state, Control::kNone, run.noise, noise_rng);
    Sample s;
    s.tq = 2.0 * static_cast<double>(u.tq_gate_estimate);
    if (run.shots_per_circuit == 0) {
      s.survival = probability_all_zero(state);
    } else {
      Rng shot_rng = root.split(Stream::kShots, c);
      double hits = 0.0;
      for (const auto& shot : sample_shots(state, run.shots_per_circuit, shot_rng)) hits += shot.system_bits == 0;
      s.survival = hits / static_cast<double>(run.shots_per_circuit);
    }
    return s;
  });
  StandardMirrorResult result;
  result.survival = summarize(samples, &Sample::survival);
  result.mean_tq_gates = mean_of(samples, &Sample::tq);
  return result;
}

double exact_local_observable(const MirrorRunSpec& run) {
  const auto instances = pool(run);
  const int L = run.params.num_qubits();
  double acc = 0.0;
  for (const auto& instance : instances) {
    const StateVector evolved = exact_evolve(instance.hamiltonian(), run.time, StateVector(L, false));
    for (Eigen::Index b = 0; b < evolved.system_dim(); ++b) {
      acc += std::norm(evolved[b]) * local_z_value(static_cast<std::uint64_t>(b), L);
    }
  }
  return acc / static_cast<double>(instances.size());
}

}  // namespace tetrisyk
