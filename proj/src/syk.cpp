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

#include "tetrisyk/syk.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "json.hpp"
#include "tetrisyk/errors.hpp"
#include "tetrisyk/rng.hpp"

namespace tetrisyk {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return std::round(out);
}

double SykParams::inclusion_probability() const {
  if (dense) return 1.0;
  return sparsity_k * n_majorana / binomial(n_majorana, 4);
}

double SykParams::coupling_variance() const {
  const double n3 = std::pow(static_cast<double>(n_majorana), 3);
  return 6.0 * coupling_scale * coupling_scale / (inclusion_probability() * n3);
}

void SykParams::validate() const {
  if (n_majorana < 4 || n_majorana % 2 != 0) {
    throw ParameterError("n_majorana must be even and >= 4, got " + std::to_string(n_majorana));
  }
  if (n_majorana / 2 > SignedPauliString::kMaxQubits) throw ParameterError("n_majorana too large");
  if (!(coupling_scale > 0)) throw ParameterError("coupling_scale must be positive");
  if (!dense) {
    if (!(sparsity_k > 0)) throw ParameterError("sparsity_k must be positive");
    const double p = inclusion_probability();
    if (p > 1.0) {
      throw ParameterError("inclusion probability p = kN/C(N,4) = " + std::to_string(p) + " exceeds 1");
    }
  }
}

SignedPauliString encode_majorana(int m, int n_majorana) {
  if (m < 1 || m > n_majorana) throw ParameterError("Majorana index out of range");
  const int n_qubits = n_majorana / 2;
  const int q = (m - 1) / 2;
  const std::uint64_t bit = std::uint64_t{1} << q;
  const std::uint64_t tail = bit - 1;
  return (m % 2 == 1) ? SignedPauliString(n_qubits, bit, tail) : SignedPauliString(n_qubits, bit, tail | bit);
}

SignedPauliString encode_majorana_quadruple(const Quadruple& q, int n_majorana) {
  for (int a = 0; a < 4; ++a) {
    if (q[a] < 1 || q[a] > n_majorana || (a > 0 && q[a] <= q[a - 1])) {
      throw ParameterError("Majorana quadruple must satisfy 1 <= i < j < k < l <= N");
    }
  }
  auto product = encode_majorana(q[0], n_majorana);
  for (int a = 1; a < 4; ++a) product = product * encode_majorana(q[a], n_majorana);
  return product;
}

SparseSykInstance::SparseSykInstance(SykParams params, std::vector<Quadruple> quadruples,
                                     std::vector<double> couplings)
    : params_(params), quadruples_(std::move(quadruples)), couplings_(std::move(couplings)) {
  params_.validate();
  if (quadruples_.size() != couplings_.size()) {
    throw ParameterError("quadruple and coupling lists differ in length");
  }
  std::vector<PauliTerm> terms;
  terms.reserve(quadruples_.size());
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (std::size_t n = 0; n < quadruples_.size(); ++n) {
    auto string = encode_majorana_quadruple(quadruples_[n], params_.n_majorana);
    if (!seen.emplace(string.x_mask(), string.z_mask()).second) {
      throw ParameterError("duplicate Majorana quadruple in instance");
    }
    terms.push_back({couplings_[n], string});
  }
  hamiltonian_ = PauliHamiltonian(params_.num_qubits(), std::move(terms));
}

SparseSykInstance sample_instance(const SykParams& params) {
  params.validate();
  const int n = params.n_majorana;
  const double p = params.inclusion_probability();
  const double sigma = std::sqrt(params.coupling_variance());
  const double drop = 1e-15 * params.coupling_scale;

  Rng rng = Rng(params.seed).split(Stream::kDisorder);
  std::normal_distribution<double> gauss(0.0, sigma);
  std::vector<Quadruple> quadruples;
  std::vector<double> couplings;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l) {
          if (!params.dense && !(rng.uniform() < p)) continue;
          const double coupling = gauss(rng);
          if (std::abs(coupling) < drop) continue;
          quadruples.push_back({i, j, k, l});
          couplings.push_back(coupling);
        }
  return {params, std::move(quadruples), std::move(couplings)};
}

SparseSykInstance sample_ensemble_member(const SykParams& params, std::uint64_t index) {
  SykParams member = params;
  member.seed = Rng(params.seed).split(Stream::kDisorder, index).key();
  return sample_instance(member);
}

double one_norm(const SparseSykInstance& instance) { return instance.one_norm(); }

double expected_one_norm(const SykParams& params) {
  const double count = params.inclusion_probability() * binomial(params.n_majorana, 4);
  return count * std::sqrt(params.coupling_variance()) * std::sqrt(2.0 / std::numbers::pi);
}

double one_norm_closed_form(const SykParams& params) {
  const double n = params.n_majorana;
  const double falling = n * (n - 1) * (n - 2) * (n - 3);  // N! / (N-4)!
  return std::sqrt(6.0 * params.inclusion_probability()) * params.coupling_scale / 24.0 * falling /
         std::pow(n, 1.5);
}

std::string to_json(const SparseSykInstance& instance, int indent) {
  const auto& p = instance.params();
  nlohmann::json doc;
  doc["params"] = {{"n_majorana", p.n_majorana},
                   {"coupling_scale", p.coupling_scale},
                   {"sparsity_k", p.sparsity_k},
                   {"dense", p.dense},
                   {"seed", p.seed}};
  doc["quadruples"] = instance.quadruples();
  doc["couplings"] = instance.couplings();
  doc["one_norm"] = instance.one_norm();
  return doc.dump(indent);
}

SparseSykInstance instance_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  const auto& jp = doc.at("params");
  SykParams p;
  p.n_majorana = jp.at("n_majorana").get<int>();
  p.coupling_scale = jp.at("coupling_scale").get<double>();
  p.sparsity_k = jp.at("sparsity_k").get<double>();
  p.dense = jp.at("dense").get<bool>();
  p.seed = jp.at("seed").get<std::uint64_t>();
  SparseSykInstance instance(p, doc.at("quadruples").get<std::vector<Quadruple>>(),
                             doc.at("couplings").get<std::vector<double>>());
  if (doc.contains("one_norm") && doc.at("one_norm").get<double>() != instance.one_norm()) {
    throw ParameterError("stored one_norm does not match the re-encoded instance");
  }
  return instance;
}

}  // namespace tetrisyk
