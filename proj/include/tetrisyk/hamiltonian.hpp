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

#include <cstddef>
#include <span>
#include <vector>

#include "tetrisyk/pauli.hpp"

namespace tetrisyk {

/// One term c * P of a Pauli-sum Hamiltonian; P has phase +1 and c is real.
struct PauliTerm {
  double coefficient = 0.0;
  SignedPauliString string;
};

/// Hermitian Pauli sum H = sum_n c_n P_n with cached 1-norm mu = sum_n |c_n|.
///
/// Construction folds the sign of each (Hermitian) input string into its
/// coefficient, merges identical strings and drops terms with |c| <= drop_below.
class PauliHamiltonian {
 public:
  PauliHamiltonian() = default;
  PauliHamiltonian(int num_qubits, std::vector<PauliTerm> terms, double drop_below = 0.0);

  int num_qubits() const { return num_qubits_; }
  std::span<const PauliTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const PauliTerm& operator[](std::size_t n) const { return terms_[n]; }

  /// mu = sum_n |c_n|.
  double one_norm() const { return one_norm_; }

 private:
  int num_qubits_ = 0;
  std::vector<PauliTerm> terms_;
  double one_norm_ = 0.0;
};

/// mu of an arbitrary term list.
double one_norm(std::span<const PauliTerm> terms);

}  // namespace tetrisyk
