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

#include "tetrisyk/echo.hpp"

#include <cmath>
#include <optional>

#include "tetrisyk/errors.hpp"
#include "tetrisyk/evolution.hpp"
#include "tetrisyk/parallel.hpp"
#include "tetrisyk/tetris.hpp"

namespace tetrisyk {

double AnglePolicy::angle(double time, double one_norm) const {
  switch (kind) {
    case Kind::kOptimal: return alpha * optimal_angle(time, one_norm);
    case Kind::kShallow:
    case Kind::kScaled: return alpha * shallow_angle(time, one_norm);
    case Kind::kFixed: return value;
  }
  throw ParameterError("unknown angle policy");
}

std::string AnglePolicy::describe() const {
  switch (kind) {
    case Kind::kOptimal: return "optimal";
    case Kind::kShallow: return "shallow";
    case Kind::kScaled: return "scaled";
    case Kind::kFixed: return "fixed";
  }
  return "?";
}

void EchoSetup::validate() const {
  params.validate();
  noise.validate();
  if (instances < 0) throw ParameterError("instances must be >= 0");
  if (!(time >= 0.0) || !std::isfinite(time)) throw ParameterError("time must be finite and non-negative");
  if (circuits == 0) throw ParameterError("at least one circuit is required");
  if (angle.kind != AnglePolicy::Kind::kFixed && !(angle.alpha > 0.0 && angle.alpha <= 1.0)) {
    throw ParameterError("angle policy needs 0 < alpha <= 1");
  }
  if (angle.kind == AnglePolicy::Kind::kFixed && !(angle.value > 0.0 && angle.value < std::acos(0.0))) {
    throw ParameterError("fixed gate angle must lie in (0, pi/2)");
  }
  if (exact_reference && params.num_qubits() > kMaxExactQubits) {
    throw CapabilityError("exact reference for L = " + std::to_string(params.num_qubits()) + " exceeds L = " +
                          std::to_string(kMaxExactQubits));
  }
}

std::uint64_t EchoSetup::instance_of(std::size_t circuit) const {
  return instances == 0 ? circuit : circuit % static_cast<std::size_t>(instances);
}

double EchoRun::exact_mean() const {
  double acc = 0.0;
  for (const auto& c : circuits) acc += c.exact;
  return acc / static_cast<double>(circuits.size());
}

double EchoRun::mean_tq_gates() const {
  double acc = 0.0;
  for (const auto& c : circuits) acc += static_cast<double>(c.tq_gates);
  return acc / static_cast<double>(circuits.size());
}

double EchoRun::mean_gate_angle() const {
  double acc = 0.0;
  for (const auto& c : circuits) acc += c.gate_angle;
  return acc / static_cast<double>(circuits.size());
}

EstimateRecord EchoRun::estimate(EchoObservable observable) const {
  std::size_t slot = 0;
  while (kEchoObservables[slot] != observable) ++slot;
  std::vector<double> values;
  values.reserve(circuits.size());
  double lambda_sum = 0.0;
  for (const auto& c : circuits) {
    values.push_back(c.raw[slot] / c.lambda);
    lambda_sum += c.lambda;
  }
  const MeanAndError m = mean_and_error(values);
  EstimateRecord r;
  r.observable = observable;
  r.mean = m.mean;
  r.stderr = m.stderr;
  r.stderr_defined = m.stderr_defined;
  r.lambda = lambda_sum / static_cast<double>(circuits.size());
  r.circuits = circuits.size();
  r.shots_per_circuit = setup.shots_per_circuit;
  r.gate_angle = mean_gate_angle();
  r.alpha = setup.angle.kind == AnglePolicy::Kind::kFixed ? 1.0 : setup.angle.alpha;
  r.time = setup.time;
  r.disorder_seed = setup.params.seed;
  r.circuit_seed = setup.circuit_seed;
  return r;
}

EchoRun run_echo(const EchoSetup& setup) {
  setup.validate();
  struct Member {
    std::optional<SparseSykInstance> instance;
    double exact = 0.0;
  };
  auto make_member = [&](std::uint64_t id) {
    Member m;
    m.instance.emplace(sample_ensemble_member(setup.params, id));
    if (setup.exact_reference) m.exact = loschmidt_exact(m.instance->hamiltonian(), setup.time).real();
    return m;
  };
  std::vector<Member> pool;
  if (setup.instances > 0) {
    pool = run_tasks<Member>(static_cast<std::size_t>(setup.instances), setup.workers,
                             [&](std::size_t k) { return make_member(k); });
  }

  const Rng root(setup.circuit_seed);
  const int L = setup.params.num_qubits();
  EchoRun run;
  run.setup = setup;
  run.circuits = run_tasks<EchoCircuitRecord>(setup.circuits, setup.workers, [&](std::size_t c) {
    Member fresh;
    const std::uint64_t id = setup.instance_of(c);
    if (setup.instances == 0) fresh = make_member(id);
    const Member& member = setup.instances == 0 ? fresh : pool[id];
    const PauliHamiltonian& h = member.instance->hamiltonian();

    EchoCircuitRecord rec;
    rec.circuit = c;
    rec.instance = id;
    rec.exact = member.exact;
    rec.gate_angle = setup.angle.angle(setup.time, h.one_norm());
    const TetrisConfig config{rec.gate_angle, setup.time};
    rec.lambda = attenuation(h, config);

    Rng circuit_rng = root.split(Stream::kCircuit, c);
    Rng noise_rng = root.split(Stream::kNoise, c);
    const TetrisCircuit u = sample_circuit(h, config, circuit_rng);
    rec.tq_gates = u.tq_gate_estimate;
    rec.rotations = u.rotation_count();

    StateVector state = StateVector::plus_ancilla(L);
    run_conditional(u, h, state, Control::kAncillaOne, setup.noise, noise_rng);
    for (std::size_t k = 0; k < kEchoObservables.size(); ++k) {
      const EchoObservable o = kEchoObservables[k];
      if (setup.shots_per_circuit == 0) {
        rec.raw[k] = expectation_x_diagonal(state, [o](std::uint64_t b) { return diagonal_value(b, o); });
      }
    }
    if (setup.shots_per_circuit > 0) {
      Rng shot_rng = root.split(Stream::kShots, c);
      const auto shots = sample_shots(state, setup.shots_per_circuit, shot_rng);
      for (std::size_t k = 0; k < kEchoObservables.size(); ++k) {
        double sum = 0.0;
        for (const auto& shot : shots) sum += shot_value(shot, kEchoObservables[k]);
        rec.raw[k] = sum / static_cast<double>(shots.size());
      }
    }
    return rec;
  });
  return run;
}

}  // namespace tetrisyk
