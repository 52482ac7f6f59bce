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

#include "tetrisyk/evolution.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <vector>

namespace tetrisyk {
namespace {

void require_exact_size(int num_qubits, int limit) {
  if (num_qubits > limit) {
    throw CapabilityError("exact evolution limited to " + std::to_string(limit) + " qubits, got " +
                          std::to_string(num_qubits));
  }
}

}  // namespace

void apply_hamiltonian(const PauliHamiltonian& h, const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
  const std::uint64_t dim = std::uint64_t{1} << h.num_qubits();
  out.setZero(in.size());
  const std::complex<double>* src = in.data();
  std::complex<double>* dst = out.data();
  for (const auto& term : h.terms()) {
    const std::uint64_t x = term.string.x_mask();
    const std::uint64_t z = term.string.z_mask();
    const std::complex<double> c = term.coefficient * i_pow(term.string.action_exponent());
    for (std::uint64_t b = 0; b < dim; ++b) {
      dst[b ^ x] += (std::popcount(z & b) & 1) ? -c * src[b] : c * src[b];
    }
  }
}

Eigen::MatrixXcd dense_matrix(const PauliHamiltonian& h) {
  require_exact_size(h.num_qubits(), kMaxDenseTraceQubits);
  const std::uint64_t dim = std::uint64_t{1} << h.num_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& term : h.terms()) {
    const std::uint64_t x = term.string.x_mask();
    const std::uint64_t z = term.string.z_mask();
    const std::complex<double> c = term.coefficient * i_pow(term.string.action_exponent());
    for (std::uint64_t b = 0; b < dim; ++b) m(b ^ x, b) += (std::popcount(z & b) & 1) ? -c : c;
  }
  return m;
}

SpectralDecomposition::SpectralDecomposition(const PauliHamiltonian& h) : num_qubits_(h.num_qubits()) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense_matrix(h));
  if (solver.info() != Eigen::Success) throw CapabilityError("eigendecomposition failed");
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
  zero_weights_ = eigenvectors_.row(0).cwiseAbs2().transpose();
}

Eigen::VectorXcd SpectralDecomposition::evolve(double t, const Eigen::VectorXcd& psi) const {
  Eigen::VectorXcd coeffs = eigenvectors_.adjoint() * psi;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs(k) *= std::polar(1.0, eigenvalues_(k) * t);
  return eigenvectors_ * coeffs;
}

std::complex<double> SpectralDecomposition::loschmidt(double t) const {
  std::complex<double> acc = 0.0;
  for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k) acc += zero_weights_(k) * std::polar(1.0, eigenvalues_(k) * t);
  return acc;
}

double SpectralDecomposition::diagonal_expectation(double t, const Eigen::VectorXd& diagonal) const {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(eigenvalues_.size());
  psi(0) = 1.0;
  const Eigen::VectorXcd out = evolve(t, psi);
  return (out.cwiseAbs2().array() * diagonal.array()).sum();
}

std::complex<double> SpectralDecomposition::normalized_trace(double t) const {
  std::complex<double> acc = 0.0;
  for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k) acc += std::polar(1.0, eigenvalues_(k) * t);
  return acc / static_cast<double>(eigenvalues_.size());
}

Eigen::VectorXcd krylov_evolve(const PauliHamiltonian& h, double t, const Eigen::VectorXcd& psi,
                               const KrylovOptions& options) {
  require_exact_size(h.num_qubits(), kMaxExactQubits);
  const Eigen::Index dim = psi.size();
  const int m_max = std::max(2, std::min<int>(options.max_dimension, static_cast<int>(dim)));
  Eigen::VectorXcd v = psi;
  double remaining = std::abs(t);
  const double direction = t < 0 ? -1.0 : 1.0;
  double step = remaining;

  std::vector<Eigen::VectorXcd> basis(m_max + 1);
  Eigen::VectorXcd w(dim);
  while (remaining > 0.0) {
    const double beta0 = v.norm();
    if (beta0 == 0.0) return v;
    basis[0] = v / beta0;
    Eigen::VectorXd alpha(m_max), beta(m_max);
    int m = 0;
    bool breakdown = false;
    for (int j = 0; j < m_max; ++j) {
      apply_hamiltonian(h, basis[j], w);
      alpha(j) = basis[j].dot(w).real();
      // Full reorthogonalization (twice) against the current basis.
      for (int pass = 0; pass < 2; ++pass)
        for (int k = 0; k <= j; ++k) w -= basis[k].dot(w) * basis[k];
      beta(j) = w.norm();
      m = j + 1;
      if (beta(j) < 1e-13 * std::max(1.0, std::abs(alpha(j)))) {
        breakdown = true;
        break;
      }
      basis[j + 1] = w / beta(j);
    }
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j) {
      tri(j, j) = alpha(j);
      if (j + 1 < m) tri(j, j + 1) = tri(j + 1, j) = beta(j);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(tri);
    const Eigen::VectorXd& theta = small.eigenvalues();
    const Eigen::MatrixXd& q = small.eigenvectors();

    step = std::min(step, remaining);
    Eigen::VectorXcd coeffs(m);
    for (;;) {
      Eigen::VectorXcd phases(m);
      for (int k = 0; k < m; ++k) phases(k) = q(0, k) * std::polar(1.0, direction * theta(k) * step);
      coeffs = q.cast<std::complex<double>>() * phases;
      const double error = breakdown ? 0.0 : beta0 * beta(m - 1) * std::abs(coeffs(m - 1));
      if (error <= options.step_tolerance || step < 1e-12 * std::abs(t)) break;
      step *= 0.5;
    }
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(dim);
    for (int k = 0; k < m; ++k) next += coeffs(k) * basis[k];
    v = beta0 * next;
    remaining -= step;
    if (remaining < 1e-15 * std::abs(t)) remaining = 0.0;
    step *= 1.5;
  }
  return v;
}

StateVector exact_evolve(const PauliHamiltonian& h, double t, const StateVector& state) {
  if (state.has_ancilla()) throw ContractViolation("exact_evolve takes a system-only state");
  if (state.system_qubits() != h.num_qubits()) throw DimensionError("state and Hamiltonian sizes differ");
  require_exact_size(h.num_qubits(), kMaxExactQubits);
  if (t == 0.0) return state;
  if (h.num_qubits() <= kMaxDenseQubits) {
    return StateVector::from_system(SpectralDecomposition(h).evolve(t, state.amplitudes()));
  }
  return StateVector::from_system(krylov_evolve(h, t, state.amplitudes()));
}

std::complex<double> loschmidt_exact(const PauliHamiltonian& h, double t) {
  StateVector zero(h.num_qubits(), false);
  return exact_evolve(h, t, zero)[0];
}

TraceEstimate trace_evolution(const PauliHamiltonian& h, double t, const TraceOptions& options) {
  const int n = h.num_qubits();
  TraceMethod method = options.method;
  if (method == TraceMethod::kAuto) method = n <= kMaxDenseQubits ? TraceMethod::kDense : TraceMethod::kStochastic;
  if (method == TraceMethod::kDense) {
    require_exact_size(n, kMaxDenseTraceQubits);
    return {SpectralDecomposition(h).normalized_trace(t), 0.0, 0.0, TraceMethod::kDense};
  }
  require_exact_size(n, kMaxExactQubits);
  if (options.samples < 2) throw ParameterError("stochastic trace needs at least two samples");
  const Eigen::Index dim = Eigen::Index{1} << n;
  Rng rng = Rng(options.seed).split(Stream::kTrace);
  const double amplitude = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<std::complex<double>> values;
  values.reserve(options.samples);
  for (int s = 0; s < options.samples; ++s) {
    Eigen::VectorXcd phi(dim);
    for (Eigen::Index b = 0; b < dim; ++b) phi(b) = std::polar(amplitude, 2.0 * std::numbers::pi * rng.uniform());
    values.push_back(phi.dot(krylov_evolve(h, t, phi)));
  }
  std::complex<double> mean = 0.0;
  for (const auto& v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var_re = 0.0, var_im = 0.0;
  for (const auto& v : values) {
    var_re += std::pow(v.real() - mean.real(), 2);
    var_im += std::pow(v.imag() - mean.imag(), 2);
  }
  const double denom = static_cast<double>(values.size() - 1) * static_cast<double>(values.size());
  return {mean, std::sqrt(var_re / denom), std::sqrt(var_im / denom), TraceMethod::kStochastic};
}

}  // namespace tetrisyk
