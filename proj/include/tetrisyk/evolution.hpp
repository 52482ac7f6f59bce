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
#include <complex>
#include <cstdint>

#include "tetrisyk/hamiltonian.hpp"
#include "tetrisyk/rng.hpp"
#include "tetrisyk/state_vector.hpp"

namespace tetrisyk {

/// Largest system size handled by the exact oracles.
inline constexpr int kMaxExactQubits = 16;
/// Largest system size evolved through a dense eigendecomposition; above it
/// exact_evolve switches to Krylov stepping.
inline constexpr int kMaxDenseQubits = 10;
/// Largest system size for which trace_evolution diagonalizes.
inline constexpr int kMaxDenseTraceQubits = 12;

/// out = H in.
void apply_hamiltonian(const PauliHamiltonian& h, const Eigen::VectorXcd& in, Eigen::VectorXcd& out);

/// Dense 2^L x 2^L matrix of H.
Eigen::MatrixXcd dense_matrix(const PauliHamiltonian& h);

/// Full spectrum of H, reused across many evolution times.
class SpectralDecomposition {
 public:
  explicit SpectralDecomposition(const PauliHamiltonian& h);

  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXcd& eigenvectors() const { return eigenvectors_; }
  int num_qubits() const { return num_qubits_; }

  /// exp(iHt) psi.
  Eigen::VectorXcd evolve(double t, const Eigen::VectorXcd& psi) const;
  /// <0|exp(iHt)|0>.
  std::complex<double> loschmidt(double t) const;
  /// <0| exp(-iHt) D exp(iHt) |0> for diagonal D given per basis state.
  double diagonal_expectation(double t, const Eigen::VectorXd& diagonal) const;
  /// Tr[exp(iHt)] / 2^L.
  std::complex<double> normalized_trace(double t) const;

 private:
  int num_qubits_ = 0;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
  Eigen::VectorXd zero_weights_;  // |<k|0>|^2
};

struct KrylovOptions {
  int max_dimension = 30;
  double step_tolerance = 1e-12;
};

/// exp(iHt) psi by restarted Lanczos steps with on-the-fly Pauli matvecs.
Eigen::VectorXcd krylov_evolve(const PauliHamiltonian& h, double t, const Eigen::VectorXcd& psi,
                               const KrylovOptions& options = {});

/// exp(iHt) |psi> for a system-only state (no ancilla). L <= 10 diagonalizes,
/// 10 < L <= 16 uses Krylov stepping; larger L throws CapabilityError.
StateVector exact_evolve(const PauliHamiltonian& h, double t, const StateVector& state);

/// <0...0| exp(iHt) |0...0>.
std::complex<double> loschmidt_exact(const PauliHamiltonian& h, double t);

enum class TraceMethod { kAuto, kDense, kStochastic };

struct TraceOptions {
  TraceMethod method = TraceMethod::kAuto;
  int samples = 64;
  std::uint64_t seed = 0;
};

struct TraceEstimate {
  std::complex<double> value;
  double stderr_real = 0.0;  // zero on the dense path
  double stderr_imag = 0.0;
  TraceMethod method = TraceMethod::kDense;
};

/// Tr[exp(iHt)] / 2^L, normalized by the register dimension 2^L. kAuto
/// diagonalizes for L <= 10 and otherwise averages <phi|exp(iHt)|phi> over
/// random-phase vectors.
TraceEstimate trace_evolution(const PauliHamiltonian& h, double t, const TraceOptions& options = {});

}  // namespace tetrisyk
