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

#include "tetrisyk/resources.hpp"

#include <cmath>

#include "tetrisyk/errors.hpp"

namespace tetrisyk {
namespace {

double log3(double x) { return std::log(x) / std::log(3.0); }

}  // namespace

void ResourceQuery::validate() const {
  if (num_qubits < 2) throw ParameterError("resource query needs L >= 2");
  if (!(sparsity_k >= 0.0)) throw ParameterError("sparsity k must be non-negative");
  if (!lyapunov_preset && !(jt >= 0.0)) throw ParameterError("Jt must be non-negative");
  if (!(depth_time_s >= 0.0)) throw ParameterError("depth time must be non-negative");
}

std::int64_t otoc_tq_count(const ResourceQuery& query) {
  query.validate();
  const double L = query.num_qubits;
  const double jt = query.lyapunov_preset ? std::log(2.0 * L) : query.jt;
  return std::llround(8.0 * query.sparsity_k * jt * jt * L * L * log3(2.0 * L));
}

std::int64_t parallel_factor(int num_qubits) {
  if (num_qubits < 2) throw ParameterError("parallel factor needs L >= 2");
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(num_qubits / log3(num_qubits))));
}

RuntimeEstimate runtime_estimate(const ResourceQuery& query, std::int64_t tq_count) {
  query.validate();
  if (tq_count < 0) throw ParameterError("gate count must be non-negative");
  RuntimeEstimate out;
  out.serial_s = static_cast<double>(tq_count) * query.depth_time_s;
  out.parallel_factor = query.parallel ? parallel_factor(query.num_qubits) : 1;
  out.parallel_s = out.serial_s / static_cast<double>(out.parallel_factor);
  return out;
}

double round_significant(double value, int digits) {
  if (value == 0.0 || !std::isfinite(value)) return value;
  const double scale = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(std::abs(value)))));
  return std::round(value * scale) / scale;
}

}  // namespace tetrisyk
