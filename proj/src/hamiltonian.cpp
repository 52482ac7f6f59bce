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

#include "tetrisyk/hamiltonian.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "tetrisyk/errors.hpp"

namespace tetrisyk {

double one_norm(std::span<const PauliTerm> terms) {
  double mu = 0.0;
  for (const auto& term : terms) mu += std::abs(term.coefficient);
  return mu;
}

PauliHamiltonian::PauliHamiltonian(int num_qubits, std::vector<PauliTerm> terms, double drop_below)
    : num_qubits_(num_qubits) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> index;
  terms_.reserve(terms.size());
  for (auto& term : terms) {
    if (term.string.num_qubits() != num_qubits) {
      throw DimensionError("term over " + std::to_string(term.string.num_qubits()) +
                           " qubits in a Hamiltonian over " + std::to_string(num_qubits));
    }
    if (!term.string.is_hermitian()) {
      throw ContractViolation("Hamiltonian term " + term.string.to_string() + " is not Hermitian");
    }
    const double c = term.coefficient * term.string.sign();
    const auto key = std::make_pair(term.string.x_mask(), term.string.z_mask());
    if (auto it = index.find(key); it != index.end()) {
      terms_[it->second].coefficient += c;
    } else {
      index.emplace(key, terms_.size());
      terms_.push_back({c, term.string.unsigned_part()});
    }
  }
  std::erase_if(terms_, [&](const PauliTerm& t) { return std::abs(t.coefficient) <= drop_below; });
  one_norm_ = tetrisyk::one_norm(terms_);
}

}  // namespace tetrisyk
