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

#include "tetrisyk/pauli.hpp"

#include "tetrisyk/errors.hpp"

namespace tetrisyk {
namespace {

std::uint64_t low_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

void check_same_size(const SignedPauliString& a, const SignedPauliString& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError("Pauli strings over " + std::to_string(a.num_qubits()) + " and " +
                         std::to_string(b.num_qubits()) + " qubits");
  }
}

}  // namespace

SignedPauliString::SignedPauliString(int num_qubits) : SignedPauliString(num_qubits, 0, 0, 0) {}

SignedPauliString::SignedPauliString(int num_qubits, std::uint64_t x_mask, std::uint64_t z_mask,
                                     int phase_exponent)
    : num_qubits_(num_qubits), x_(x_mask), z_(z_mask), phase_(phase_exponent & 3) {
  if (num_qubits < 0 || num_qubits > kMaxQubits) {
    throw DimensionError("qubit count " + std::to_string(num_qubits) + " outside [0, 64]");
  }
  if (((x_ | z_) & ~low_mask(num_qubits)) != 0) {
    throw DimensionError("Pauli mask has bits beyond qubit count");
  }
}

SignedPauliString SignedPauliString::single(int num_qubits, int qubit, char letter) {
  if (qubit < 0 || qubit >= num_qubits) throw DimensionError("qubit index out of range");
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  switch (letter) {
    case 'I': return SignedPauliString(num_qubits);
    case 'X': return {num_qubits, bit, 0};
    case 'Y': return {num_qubits, bit, bit};
    case 'Z': return {num_qubits, 0, bit};
    default: throw ParameterError(std::string("unknown Pauli letter '") + letter + "'");
  }
}

SignedPauliString SignedPauliString::parse(std::string_view text) {
  int phase = 0;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    ++pos;
    if (pos < text.size() && text[pos] == 'i') {
      phase += 1;
      ++pos;
    }
  }
  while (pos < text.size() && text[pos] == ' ') ++pos;
  const std::string_view letters = text.substr(pos);
  const int n = static_cast<int>(letters.size());
  if (n > kMaxQubits) throw DimensionError("Pauli string longer than 64 qubits");
  std::uint64_t x = 0, z = 0;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (letters[q]) {
      case 'I': case '_': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default: throw ParameterError("cannot parse Pauli string '" + std::string(text) + "'");
    }
  }
  return {n, x, z, phase};
}

char SignedPauliString::letter(int qubit) const {
  const bool xb = (x_ >> qubit) & 1U;
  const bool zb = (z_ >> qubit) & 1U;
  return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
}

std::string SignedPauliString::to_string() const {
  static constexpr const char* kPrefix[] = {"+", "+i", "-", "-i"};
  std::string out = kPrefix[phase_];
  out += ' ';
  for (int q = 0; q < num_qubits_; ++q) out += letter(q);
  return out;
}

SignedPauliString multiply(const SignedPauliString& a, const SignedPauliString& b) {
  check_same_size(a, b);
  // Each string is i^k * i^{|x&z|} X^x Z^z; reorder Z^{z_a} X^{x_b} at the cost of (-1)^{|z_a & x_b|}.
  const std::uint64_t x = a.x_mask() ^ b.x_mask();
  const std::uint64_t z = a.z_mask() ^ b.z_mask();
  const int exponent = a.phase_exponent() + b.phase_exponent() + std::popcount(a.x_mask() & a.z_mask()) +
                       std::popcount(b.x_mask() & b.z_mask()) + 2 * std::popcount(a.z_mask() & b.x_mask()) -
                       std::popcount(x & z);
  return {a.num_qubits(), x, z, ((exponent % 4) + 4) % 4};
}

bool commutes(const SignedPauliString& a, const SignedPauliString& b) {
  check_same_size(a, b);
  return ((std::popcount(a.x_mask() & b.z_mask()) + std::popcount(a.z_mask() & b.x_mask())) & 1) == 0;
}

SignedPauliString parity_string(int num_qubits) { return {num_qubits, 0, low_mask(num_qubits), 0}; }

}  // namespace tetrisyk
