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

#include <cstdint>
#include <string>

namespace tetrisyk {

/// Inputs of the closed-form scaling estimates. All outputs are
/// order-of-magnitude estimates.
struct ResourceQuery {
  int num_qubits = 50;            // L
  double sparsity_k = 2.3;        // k
  double jt = 0.0;                // Jt; ignored under the Lyapunov preset
  bool lyapunov_preset = true;    // Jt = ln N with N = 2L
  double depth_time_s = 30e-3;    // seconds per circuit-depth unit
  bool parallel = false;          // divide runtime by floor(L / log_3 L)

  void validate() const;
};

inline constexpr const char* kEstimateLabel = "order-of-magnitude estimate";

/// 8 k (Jt)^2 L^2 log_3(2L) two-qubit gates; with the Lyapunov preset this is
/// 8 k (ln(2L) L)^2 log_3(2L).
std::int64_t otoc_tq_count(const ResourceQuery& query);

/// floor(L / log_3 L).
std::int64_t parallel_factor(int num_qubits);

struct RuntimeEstimate {
  double serial_s = 0.0;
  double parallel_s = 0.0;  // equals serial_s when parallelization is off
  std::int64_t parallel_factor = 1;
  std::string label = kEstimateLabel;
};

RuntimeEstimate runtime_estimate(const ResourceQuery& query, std::int64_t tq_count);

/// Rounds to `digits` significant figures.
double round_significant(double value, int digits = 1);

}  // namespace tetrisyk
