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

#include <bit>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

namespace tetrisyk {

/// Powers of i indexed by exponent mod 4.
template <typename Real = double>
inline std::complex<Real> i_pow(int exponent) {
  switch (exponent & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

/// Pauli operator i^k * P_{0} (x) P_{1} (x) ... over at most 64 qubits, stored
/// symplectically. Qubit q carries X if only x_mask has bit q, Z if only
/// z_mask, Y if both.
class SignedPauliString {
 public:
  static constexpr int kMaxQubits = 64;

  SignedPauliString() = default;
  explicit SignedPauliString(int num_qubits);
  SignedPauliString(int num_qubits, std::uint64_t x_mask, std::uint64_t z_mask, int phase_exponent = 0);

  /// Parses "+i XZIY", "-ZZ", "XY" (qubit 0 leftmost).
  static SignedPauliString parse(std::string_view text);
  /// Single-qubit letter ('I','X','Y','Z') on `qubit`.
  static SignedPauliString single(int num_qubits, int qubit, char letter);

  int num_qubits() const { return num_qubits_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  std::uint64_t support() const { return x_ | z_; }
  int phase_exponent() const { return phase_; }
  std::complex<double> phase() const { return i_pow(phase_); }

  int weight() const { return std::popcount(x_ | z_); }
  bool is_hermitian() const { return (phase_ & 1) == 0; }
  /// +1 or -1 for Hermitian strings.
  int sign() const { return phase_ == 0 ? 1 : -1; }
  char letter(int qubit) const;

  /// Same masks with phase +1.
  SignedPauliString unsigned_part() const { return {num_qubits_, x_, z_, 0}; }
  SignedPauliString with_phase(int phase_exponent) const { return {num_qubits_, x_, z_, phase_exponent}; }

  /// Phase exponent e such that P|b> = i^e (-1)^{|z & b|} |b ^ x>.
  int action_exponent() const { return (phase_ + std::popcount(x_ & z_)) & 3; }

  std::string to_string() const;

  friend bool operator==(const SignedPauliString&, const SignedPauliString&) = default;

 private:
  int num_qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int phase_ = 0;
};

/// Operator product a*b with the exact phase.
SignedPauliString multiply(const SignedPauliString& a, const SignedPauliString& b);
inline SignedPauliString operator*(const SignedPauliString& a, const SignedPauliString& b) { return multiply(a, b); }

/// True iff [a, b] = 0.
bool commutes(const SignedPauliString& a, const SignedPauliString& b);

/// Z on every one of `num_qubits` qubits.
SignedPauliString parity_string(int num_qubits);

}  // namespace tetrisyk
