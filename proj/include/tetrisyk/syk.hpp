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
#include <string>
#include <vector>

#include "tetrisyk/hamiltonian.hpp"
#include "tetrisyk/pauli.hpp"

namespace tetrisyk {

/// Disorder parameters of the (sparse) q = 4 SYK model.
struct SykParams {
  int n_majorana = 24;        // N, even, >= 4
  double coupling_scale = 1;  // J
  double sparsity_k = 2.3;    // k, with p = k N / C(N, 4)
  bool dense = false;
  std::uint64_t seed = 0;

  int num_qubits() const { return n_majorana / 2; }
  /// p; 1 for the dense model.
  double inclusion_probability() const;
  /// Var[J_ijkl] = 3! J^2 / (p N^3).
  double coupling_variance() const;
  /// Throws ParameterError for odd/small N, J <= 0, k <= 0 or p > 1.
  void validate() const;
};

using Quadruple = std::array<int, 4>;

/// One disorder realization together with its Jordan-Wigner Pauli sum.
class SparseSykInstance {
 public:
  /// Encodes the given couplings; quadruples are 1-based and strictly increasing.
  SparseSykInstance(SykParams params, std::vector<Quadruple> quadruples, std::vector<double> couplings);

  const SykParams& params() const { return params_; }
  const std::vector<Quadruple>& quadruples() const { return quadruples_; }
  const std::vector<double>& couplings() const { return couplings_; }
  const PauliHamiltonian& hamiltonian() const { return hamiltonian_; }
  int num_qubits() const { return params_.num_qubits(); }
  double one_norm() const { return hamiltonian_.one_norm(); }

 private:
  SykParams params_;
  std::vector<Quadruple> quadruples_;
  std::vector<double> couplings_;
  PauliHamiltonian hamiltonian_;
};

/// Majorana operator psi_m, m in 1..N, on N/2 qubits.
///
/// Index convention: psi_m lives on qubit q = (m - 1) / 2 (0-based) and is
/// X_q Z_{q-1} ... Z_0 for odd m, Y_q Z_{q-1} ... Z_0 for even m. This is the
/// usual psi_{2j} = X_j Z..., psi_{2j+1} = Y_j Z... with j counted from zero
/// and m shifted by one.
SignedPauliString encode_majorana(int m, int n_majorana);

/// psi_i psi_j psi_k psi_l for 1 <= i < j < k < l <= N. The result is Hermitian (phase +-1).
SignedPauliString encode_majorana_quadruple(const Quadruple& q, int n_majorana);

/// Draws one realization: every quadruple kept with probability p (all of
/// them when dense) and a Gaussian coupling with variance 3! J^2 / (p N^3).
/// Couplings with |J_ijkl| < 1e-15 J are dropped together with their quadruple.
SparseSykInstance sample_instance(const SykParams& params);

/// Member `index` of the ensemble rooted at params.seed; members use
/// independent disorder streams.
SparseSykInstance sample_ensemble_member(const SykParams& params, std::uint64_t index);

double one_norm(const SparseSykInstance& instance);

/// Disorder average of mu: p C(N,4) sqrt(Var) sqrt(2/pi).
double expected_one_norm(const SykParams& params);

/// Closed form sqrt(6p) J / 24 * N! / (N^{3/2} (N-4)!). This equals p C(N,4)
/// sqrt(Var), i.e. it uses the coupling standard deviation in place of E|J|
/// and sits a factor sqrt(pi/2) above expected_one_norm().
double one_norm_closed_form(const SykParams& params);

double binomial(int n, int k);

std::string to_json(const SparseSykInstance& instance, int indent = -1);
SparseSykInstance instance_from_json(const std::string& text);

}  // namespace tetrisyk
