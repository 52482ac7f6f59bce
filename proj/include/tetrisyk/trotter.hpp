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

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tetrisyk/hamiltonian.hpp"
#include "tetrisyk/rng.hpp"
#include "tetrisyk/state_vector.hpp"
#include "tetrisyk/syk.hpp"
#include "tetrisyk/tetris.hpp"

namespace tetrisyk {

/// s repetitions of exp(i c_n P_n t/s) in term_order.
struct TrotterPlan {
  int steps = 1;
  std::vector<std::size_t> term_order;
  std::int64_t tq_gate_count = 0;  // steps * sum_n 2(w_n - 1)
};

/// Default order: descending |c_n| (ties by index). With `shuffle`, a
/// uniformly random order drawn from it instead.
TrotterPlan make_trotter_plan(const PauliHamiltonian& h, int steps, Rng* shuffle = nullptr);

/// Applies the first-order product formula for time t to `state`.
void build_and_run(const PauliHamiltonian& h, double t, const TrotterPlan& plan, StateVector& state,
                   Control control = Control::kNone, GateTrace* trace = nullptr);

/// <0| (prod_n exp(i c_n P_n t/s))^s |0>.
std::complex<double> trotter_loschmidt(const PauliHamiltonian& h, double t, const TrotterPlan& plan);

/// |Re L_trotter - Re L_exact| / |Re L_exact|; undefined when |Re L_exact| < 1e-12.
struct RelativeError {
  double value = 0.0;
  bool defined = true;
};

RelativeError relative_error(double approximate, double exact);
RelativeError trotter_relative_error(const PauliHamiltonian& h, double t, int steps);

/// Expected TQ count of one TETRIS circuit at the optimal angle:
/// (t / sin tau) sum_n |c_n| 2(w_n - 1).
double tetris_expected_tq(const PauliHamiltonian& h, double t, double gate_angle);

struct CrossoverRow {
  double t = 0.0;
  double tq_tetris_optimal = 0.0;
  double tq_trotter_1 = 0.0;
  double tq_trotter_2 = 0.0;
  std::string cheaper_scheme;  // "tetris", "trotter1" or "trotter2"
  double exact_mean = 0.0;     // ensemble mean of Re <0|e^{iHt}|0>
  double trotter_mean_1 = 0.0;
  double trotter_mean_2 = 0.0;
  RelativeError trotter_error_1;  // error of the ensemble means
  RelativeError trotter_error_2;
  /// mean_i |Re L_trotter,i - Re L_exact,i| / |exact_mean|: per-instance
  /// deviations, free of cancellations between instances.
  RelativeError instance_error_1;
  RelativeError instance_error_2;
};

/// Disorder-averaged TETRIS-versus-Trotter costs and Trotter errors on a time
/// grid. Errors compare ensemble means of Re <0|U|0>.
std::vector<CrossoverRow> crossover_study(const SykParams& params, const std::vector<double>& times,
                                          int ensemble_size);

/// Earliest t with ensemble-mean one-step Trotter TQ count <= expected
/// TETRIS-at-optimal-angle TQ count, by bisection to `tolerance`. Throws
/// ParameterError when no crossing occurs below t_max.
double crossover_time(const SykParams& params, int ensemble_size, double t_max = 20.0, double tolerance = 1e-9);

}  // namespace tetrisyk
