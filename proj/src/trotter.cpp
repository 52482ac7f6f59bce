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

#include "tetrisyk/trotter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tetrisyk/evolution.hpp"

namespace tetrisyk {

TrotterPlan make_trotter_plan(const PauliHamiltonian& h, int steps, Rng* shuffle) {
  if (steps < 1) throw ParameterError("Trotter step count must be >= 1");
  TrotterPlan plan;
  plan.steps = steps;
  plan.term_order.resize(h.size());
  std::iota(plan.term_order.begin(), plan.term_order.end(), std::size_t{0});
  std::stable_sort(plan.term_order.begin(), plan.term_order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(h[a].coefficient) > std::abs(h[b].coefficient);
  });
  if (shuffle) std::shuffle(plan.term_order.begin(), plan.term_order.end(), *shuffle);
  std::int64_t per_step = 0;
  for (const auto& term : h.terms()) per_step += tq_gates_for_rotation(term.string);
  plan.tq_gate_count = steps * per_step;
  return plan;
}

void build_and_run(const PauliHamiltonian& h, double t, const TrotterPlan& plan, StateVector& state,
                   Control control, GateTrace* trace) {
  if (plan.steps < 1) throw ParameterError("Trotter step count must be >= 1");
  const double dt = t / plan.steps;
  for (int s = 0; s < plan.steps; ++s) {
    for (const std::size_t n : plan.term_order) {
      const auto& term = h[n];
      if (trace) {
        const auto pairs = gadget_gate_pairs(term.string);
        trace->insert(trace->end(), pairs.begin(), pairs.end());
      }
      apply_pauli_rotation(state, term.string, term.coefficient * dt, control);
    }
  }
}

std::complex<double> trotter_loschmidt(const PauliHamiltonian& h, double t, const TrotterPlan& plan) {
  StateVector state(h.num_qubits(), false);
  build_and_run(h, t, plan, state);
  return state[0];
}

RelativeError relative_error(double approximate, double exact) {
  if (std::abs(exact) < 1e-12) return {std::nan(""), false};
  return {std::abs(approximate - exact) / std::abs(exact), true};
}

RelativeError trotter_relative_error(const PauliHamiltonian& h, double t, int steps) {
  const double exact = loschmidt_exact(h, t).real();
  const double approx = trotter_loschmidt(h, t, make_trotter_plan(h, steps)).real();
  return relative_error(approx, exact);
}

double tetris_expected_tq(const PauliHamiltonian& h, double t, double gate_angle) {
  if (t == 0.0) return 0.0;
  double weighted = 0.0;
  for (const auto& term : h.terms()) weighted += std::abs(term.coefficient) * tq_gates_for_rotation(term.string);
  return t / std::sin(gate_angle) * weighted;
}

std::vector<CrossoverRow> crossover_study(const SykParams& params, const std::vector<double>& times,
                                          int ensemble_size) {
  if (ensemble_size < 1) throw ParameterError("ensemble size must be >= 1");
  std::vector<CrossoverRow> rows(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) rows[i].t = times[i];
  int used = 0;
  for (int e = 0; e < ensemble_size; ++e) {
    const auto instance = sample_ensemble_member(params, static_cast<std::uint64_t>(e));
    const auto& h = instance.hamiltonian();
    if (h.empty()) continue;
    ++used;
    const SpectralDecomposition spectrum(h);
    const auto plan1 = make_trotter_plan(h, 1);
    const auto plan2 = make_trotter_plan(h, 2);
    for (auto& row : rows) {
      const double tau = row.t > 0 ? optimal_angle(row.t, h.one_norm()) : 1.0;
      row.tq_tetris_optimal += tetris_expected_tq(h, row.t, tau);
      row.tq_trotter_1 += static_cast<double>(plan1.tq_gate_count);
      row.tq_trotter_2 += static_cast<double>(plan2.tq_gate_count);
      row.exact_mean += spectrum.loschmidt(row.t).real();
      const double exact = spectrum.loschmidt(row.t).real();
      const double t1 = trotter_loschmidt(h, row.t, plan1).real();
      const double t2 = trotter_loschmidt(h, row.t, plan2).real();
      row.trotter_mean_1 += t1;
      row.trotter_mean_2 += t2;
      row.instance_error_1.value += std::abs(t1 - exact);
      row.instance_error_2.value += std::abs(t2 - exact);
    }
  }
  if (used == 0) throw ParameterError("every ensemble member has an empty Hamiltonian");
  for (auto& row : rows) {
    row.tq_tetris_optimal /= used;
    row.tq_trotter_1 /= used;
    row.tq_trotter_2 /= used;
    row.exact_mean /= used;
    row.trotter_mean_1 /= used;
    row.trotter_mean_2 /= used;
    row.cheaper_scheme = row.tq_tetris_optimal < row.tq_trotter_1   ? "tetris"
                         : row.tq_tetris_optimal < row.tq_trotter_2 ? "trotter1"
                                                                    : "trotter2";
    row.trotter_error_1 = relative_error(row.trotter_mean_1, row.exact_mean);
    row.trotter_error_2 = relative_error(row.trotter_mean_2, row.exact_mean);
    for (RelativeError* e : {&row.instance_error_1, &row.instance_error_2}) {
      const double deviation = e->value / used;
      *e = std::abs(row.exact_mean) < 1e-12 ? RelativeError{0.0, false}
                                            : RelativeError{deviation / std::abs(row.exact_mean), true};
    }
  }
  return rows;
}

double crossover_time(const SykParams& params, int ensemble_size, double t_max, double tolerance) {
  if (ensemble_size < 1) throw ParameterError("ensemble size must be >= 1");
  std::vector<PauliHamiltonian> pool;
  for (int e = 0; e < ensemble_size; ++e) {
    auto instance = sample_ensemble_member(params, static_cast<std::uint64_t>(e));
    if (!instance.hamiltonian().empty()) pool.push_back(instance.hamiltonian());
  }
  if (pool.empty()) throw ParameterError("every ensemble member has an empty Hamiltonian");
  double trotter = 0.0;
  for (const auto& h : pool) trotter += static_cast<double>(make_trotter_plan(h, 1).tq_gate_count);
  // Positive once one Trotter step is no more expensive than TETRIS.
  auto excess = [&](double t) {
    double tetris = 0.0;
    for (const auto& h : pool) tetris += tetris_expected_tq(h, t, optimal_angle(t, h.one_norm()));
    return tetris - trotter;
  };
  if (excess(t_max) < 0.0) throw ParameterError("no TETRIS/Trotter crossover below t_max");
  double lo = 0.0, hi = t_max;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) >= 0.0 ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace tetrisyk
