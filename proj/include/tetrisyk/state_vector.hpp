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

#include <Eigen/Core>
#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "tetrisyk/errors.hpp"
#include "tetrisyk/pauli.hpp"
#include "tetrisyk/rng.hpp"

namespace tetrisyk {

/// Which ancilla branch a system operation acts on.
enum class Control { kNone, kAncillaZero, kAncillaOne };

/// One measurement record: ancilla read out in the X basis, system in Z.
/// Bit q of system_bits is system qubit q.
struct ShotOutcome {
  int ancilla_bit = 0;
  std::uint64_t system_bits = 0;

  friend bool operator==(const ShotOutcome&, const ShotOutcome&) = default;
};

/// Pure state of L system qubits, optionally with one ancilla.
///
/// Amplitude index layout: bits 0..L-1 are the system qubits, bit L is the
/// ancilla (the highest-index qubit).
template <typename Real>
class BasicStateVector {
 public:
  using Scalar = std::complex<Real>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicStateVector() = default;

  /// |0>_anc (x) |0...0>.
  BasicStateVector(int system_qubits, bool with_ancilla)
      : system_qubits_(system_qubits), ancilla_(with_ancilla) {
    if (system_qubits < 0 || system_qubits + (with_ancilla ? 1 : 0) > 30) {
      throw CapabilityError("state vector with " + std::to_string(system_qubits) + " system qubits");
    }
    amplitudes_ = Vector::Zero(Eigen::Index{1} << total_qubits());
    amplitudes_(0) = Scalar(1);
  }

  /// |+>_anc (x) |0...0>.
  static BasicStateVector plus_ancilla(int system_qubits) {
    BasicStateVector state(system_qubits, true);
    const Real r = Real(1) / std::sqrt(Real(2));
    state.amplitudes_(0) = Scalar(r);
    state.amplitudes_(state.system_dim()) = Scalar(r);
    return state;
  }

  /// System-only state with the given amplitudes.
  static BasicStateVector from_system(const Vector& amplitudes) {
    const int n = std::countr_zero(static_cast<std::uint64_t>(amplitudes.size()));
    if ((Eigen::Index{1} << n) != amplitudes.size()) throw DimensionError("amplitude count is not a power of two");
    BasicStateVector state(n, false);
    state.amplitudes_ = amplitudes;
    return state;
  }

  int system_qubits() const { return system_qubits_; }
  bool has_ancilla() const { return ancilla_; }
  int total_qubits() const { return system_qubits_ + (ancilla_ ? 1 : 0); }
  Eigen::Index system_dim() const { return Eigen::Index{1} << system_qubits_; }

  const Vector& amplitudes() const { return amplitudes_; }
  Vector& amplitudes() { return amplitudes_; }
  Scalar operator[](Eigen::Index i) const { return amplitudes_(i); }

  /// System amplitudes of ancilla branch `a` (unnormalized).
  auto branch(int a) const { return amplitudes_.segment(a * system_dim(), system_dim()); }
  auto branch(int a) { return amplitudes_.segment(a * system_dim(), system_dim()); }

  Real norm_squared() const { return amplitudes_.squaredNorm(); }

 private:
  int system_qubits_ = 0;
  bool ancilla_ = false;
  Vector amplitudes_;
};

using StateVector = BasicStateVector<double>;

namespace detail {

template <typename Real>
void check_string(const BasicStateVector<Real>& state, const SignedPauliString& p) {
  if (p.num_qubits() != state.system_qubits()) {
    throw DimensionError("Pauli string over " + std::to_string(p.num_qubits()) + " qubits applied to " +
                         std::to_string(state.system_qubits()) + " system qubits");
  }
}

/// Offsets of the ancilla blocks touched by `control`.
template <typename Real>
std::vector<Eigen::Index> blocks(const BasicStateVector<Real>& state, Control control) {
  if (control != Control::kNone && !state.has_ancilla()) {
    throw ContractViolation("controlled operation on a state without ancilla");
  }
  const Eigen::Index dim = state.system_dim();
  switch (control) {
    case Control::kAncillaZero: return {0};
    case Control::kAncillaOne: return {dim};
    default: return state.has_ancilla() ? std::vector<Eigen::Index>{0, dim} : std::vector<Eigen::Index>{0};
  }
}

}  // namespace detail

/// state <- P state on the system register (both ancilla branches unless controlled).
template <typename Real>
void apply_pauli(BasicStateVector<Real>& state, const SignedPauliString& p, Control control = Control::kNone) {
  detail::check_string(state, p);
  using Scalar = std::complex<Real>;
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const Scalar phase = i_pow<Real>(p.action_exponent());
  const std::uint64_t dim = static_cast<std::uint64_t>(state.system_dim());
  auto& amp = state.amplitudes();
  for (const Eigen::Index offset : detail::blocks(state, control)) {
    Scalar* a = amp.data() + offset;
    if (x == 0) {
      for (std::uint64_t b = 0; b < dim; ++b) a[b] *= (std::popcount(z & b) & 1) ? -phase : phase;
      continue;
    }
    const std::uint64_t top = std::uint64_t{1} << (63 - std::countl_zero(x));
    for (std::uint64_t b = 0; b < dim; ++b) {
      if (b & top) continue;
      const std::uint64_t c = b ^ x;
      const Scalar from_b = (std::popcount(z & b) & 1) ? -phase : phase;  // <c|P|b>
      const Scalar from_c = (std::popcount(z & c) & 1) ? -phase : phase;  // <b|P|c>
      const Scalar ab = a[b];
      a[b] = from_c * a[c];
      a[c] = from_b * ab;
    }
  }
}

/// state <- exp(i angle P) state = (cos(angle) + i sin(angle) P) state, on
/// the selected ancilla branch. P must be Hermitian.
template <typename Real>
void apply_pauli_rotation(BasicStateVector<Real>& state, const SignedPauliString& p, Real angle,
                          Control control = Control::kNone) {
  detail::check_string(state, p);
  if (!p.is_hermitian()) {
    throw ContractViolation("rotation generator " + p.to_string() + " is not Hermitian");
  }
  if (angle == Real(0)) return;
  using Scalar = std::complex<Real>;
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const Real c = std::cos(angle);
  const Scalar is = Scalar(0, std::sin(angle)) * i_pow<Real>(p.action_exponent());
  const std::uint64_t dim = static_cast<std::uint64_t>(state.system_dim());
  auto& amp = state.amplitudes();
  for (const Eigen::Index offset : detail::blocks(state, control)) {
    Scalar* a = amp.data() + offset;
    if (x == 0) {
      // Diagonal generator: eigenvalue +-1 on each basis state.
      const Scalar plus = Scalar(c) + is;
      const Scalar minus = Scalar(c) - is;
      for (std::uint64_t b = 0; b < dim; ++b) a[b] *= (std::popcount(z & b) & 1) ? minus : plus;
      continue;
    }
    const std::uint64_t top = std::uint64_t{1} << (63 - std::countl_zero(x));
    for (std::uint64_t b = 0; b < dim; ++b) {
      if (b & top) continue;
      const std::uint64_t d = b ^ x;
      const Scalar from_b = (std::popcount(z & b) & 1) ? -is : is;
      const Scalar from_d = (std::popcount(z & d) & 1) ? -is : is;
      const Scalar ab = a[b];
      const Scalar ad = a[d];
      a[b] = c * ab + from_d * ad;
      a[d] = c * ad + from_b * ab;
    }
  }
}

/// Hadamard on the ancilla.
template <typename Real>
void apply_ancilla_hadamard(BasicStateVector<Real>& state) {
  if (!state.has_ancilla()) throw ContractViolation("state has no ancilla");
  const Real r = Real(1) / std::sqrt(Real(2));
  auto& amp = state.amplitudes();
  const Eigen::Index dim = state.system_dim();
  for (Eigen::Index b = 0; b < dim; ++b) {
    const auto a0 = amp(b);
    const auto a1 = amp(b + dim);
    amp(b) = r * (a0 + a1);
    amp(b + dim) = r * (a0 - a1);
  }
}

/// <X (x) D> for a diagonal system observable D given as a functor of the
/// system bit string; equals 2 Re sum_b conj(a_0[b]) D(b) a_1[b].
template <typename Real, typename Diagonal>
Real expectation_x_diagonal(const BasicStateVector<Real>& state, Diagonal&& diagonal) {
  if (!state.has_ancilla()) throw ContractViolation("state has no ancilla");
  const auto zero = state.branch(0);
  const auto one = state.branch(1);
  Real acc = 0;
  for (Eigen::Index b = 0; b < state.system_dim(); ++b) {
    acc += Real(diagonal(static_cast<std::uint64_t>(b))) * std::real(std::conj(zero(b)) * one(b));
  }
  return 2 * acc;
}

/// Hadamard on the ancilla, then `n_shots` i.i.d. Born-rule samples of all qubits.
template <typename Real>
std::vector<ShotOutcome> sample_shots(const BasicStateVector<Real>& state, std::size_t n_shots, Rng& rng) {
  std::vector<ShotOutcome> shots;
  if (n_shots == 0) return shots;
  BasicStateVector<Real> rotated = state;
  if (rotated.has_ancilla()) apply_ancilla_hadamard(rotated);
  const auto& amp = rotated.amplitudes();
  std::vector<Real> cumulative(static_cast<std::size_t>(amp.size()));
  Real total = 0;
  for (Eigen::Index i = 0; i < amp.size(); ++i) {
    total += std::norm(amp(i));
    cumulative[static_cast<std::size_t>(i)] = total;
  }
  const std::uint64_t system_mask = static_cast<std::uint64_t>(rotated.system_dim()) - 1;
  shots.reserve(n_shots);
  for (std::size_t s = 0; s < n_shots; ++s) {
    const Real u = Real(rng.uniform()) * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    const auto index = static_cast<std::uint64_t>(it - cumulative.begin());
    shots.push_back({static_cast<int>(index >> rotated.system_qubits()), index & system_mask});
  }
  return shots;
}

/// |<0...0|psi>|^2 summed over ancilla branches.
template <typename Real>
Real probability_all_zero(const BasicStateVector<Real>& state) {
  Real p = std::norm(state[0]);
  if (state.has_ancilla()) p += std::norm(state[state.system_dim()]);
  return p;
}

}  // namespace tetrisyk
