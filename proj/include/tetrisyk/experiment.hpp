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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "tetrisyk/echo.hpp"
#include "tetrisyk/estimators.hpp"
#include "tetrisyk/noise.hpp"
#include "tetrisyk/syk.hpp"

namespace tetrisyk {

enum class ExperimentKind {
  kLoschmidtScan,
  kVarianceStudy,
  kAngleSweep,
  kLgaeHardwareProtocol,
  kNoiseModelOverlay,
  kTrotterCrossover,
  kMirrorSweep,
  kResources,
};

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);
const std::vector<ExperimentKind>& all_experiment_kinds();

inline constexpr int kConfigSchemaVersion = 1;

/// Parsed experiment configuration. Every run is a function of this struct;
/// to_json() emits it with all defaults filled in.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kLoschmidtScan;
  SykParams syk;
  int instances = 1;  // disorder pool size; 0 = fresh member per circuit
  std::vector<double> times;
  AnglePolicy angle;
  NoiseSpec noise;
  std::size_t circuits = 1000;
  std::size_t shots_per_circuit = 1;
  std::uint64_t circuit_seed = 0;
  std::vector<EchoObservable> observables{kEchoObservables.begin(), kEchoObservables.end()};
  bool write_circuits = false;

  std::vector<std::size_t> shots_grid{1, 10};      // variance_study
  std::vector<double> alphas{1.0};                 // angle_sweep, variance_study
  double lgae_alpha = 1.0 / 3;                     // lgae_hardware_protocol
  std::vector<double> qt_values{0.2, 0.6};         // noise_model_overlay
  double model_step = 0.01;                        // noise_model_overlay
  std::vector<double> p_dep_values{0.0, 5e-4, 1e-3, 2e-3};  // mirror_sweep
  std::vector<int> resource_qubits{50, 100};       // resources
  double depth_time_s = 30e-3;                     // resources
  bool lyapunov_preset = true;                     // resources
  double resource_jt = 0.0;                        // resources, without preset

  std::string output = "runs/out";

  /// Replaces both the disorder and the circuit seed.
  void override_seed(std::uint64_t seed);
};

/// Throws ConfigError (with a JSON path) for unknown keys, wrong types or
/// invalid values.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& file);
nlohmann::json to_json(const ExperimentConfig& config);

/// Frozen CSV columns of results.csv for `kind`.
const std::vector<std::string>& result_columns(ExperimentKind kind);
/// Columns of circuits.csv (per-circuit records, echo kinds only).
const std::vector<std::string>& circuit_columns();

struct RunOptions {
  std::filesystem::path out_dir;
  int workers = 1;
  bool resume = true;
  std::ostream* log = nullptr;
};

struct RunSummary {
  std::size_t points = 0;
  std::size_t resumed_points = 0;
  std::size_t rows = 0;
  nlohmann::json summary;
};

/// Runs every point of the experiment, appending to results.csv (and
/// circuits.csv) under out_dir and checkpointing manifest.json after each
/// point. With resume on, a manifest for the same configuration skips the
/// points it lists as complete. Also writes summary.json.
RunSummary run_experiment(const ExperimentConfig& config, const RunOptions& options);

/// CSV cell for a double: shortest round-trip decimal, "nan" for NaN.
std::string format_double(double value);

/// Git description of the source tree this binary was built from.
std::string build_git_describe();

}  // namespace tetrisyk
